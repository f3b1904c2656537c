// Python surface. Instances and solutions cross the boundary as JSON text in
// the documented file format; the package wrapper turns them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <chrono>
#include <string>

#include "acgpath/errors.hpp"
#include "acgpath/instance.hpp"
#include "acgpath/oracle.hpp"

namespace py = pybind11;
using namespace acg;

namespace {

Instance generate(const Graph& base, int path_size, std::uint64_t seed,
                  bool unfeasible) {
  if (unfeasible) return gen_unfeasible(base, path_size, seed);
  int n_upper = std::min(3, base.resource_count());
  int n_range = std::min(3, base.resource_count() - n_upper);
  return gen_feasible(base, path_size, seed, n_upper, n_range);
}

SolverConfig config_of(long t_acg, long t_atomic, double gamma, long limit,
                       int workers, std::uint64_t seed) {
  SolverConfig cfg;
  cfg.t_acg = std::chrono::milliseconds(t_acg);
  cfg.t_atomic = std::chrono::milliseconds(t_atomic);
  cfg.gamma_ratio = gamma;
  cfg.global_limit = std::chrono::milliseconds(limit);
  cfg.workers = workers;
  cfg.seed = seed;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Constrained shortest paths via atomic column generation";
  m.attr("__version__") = "0.1.0";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  m.def(
      "grid_instance",
      [](int width, int height, int path_size, std::uint64_t seed,
         bool unfeasible) {
        return write_instance(
            generate(grid(width, height, seed), path_size, seed, unfeasible));
      },
      py::arg("width"), py::arg("height"), py::arg("path_size"),
      py::arg("seed"), py::arg("unfeasible") = false,
      "Seeded instance on a bidirected grid, as JSON text.");

  m.def(
      "topology_instance",
      [](const std::string& text, int path_size, std::uint64_t seed,
         bool unfeasible) {
        return write_instance(
            generate(read_topology(text), path_size, seed, unfeasible));
      },
      py::arg("text"), py::arg("path_size"), py::arg("seed"),
      py::arg("unfeasible") = false,
      "Seeded instance on a `nodes/edge` topology listing, as JSON text.");

  m.def(
      "solve",
      [](const std::string& instance_json, const std::string& algo,
         long t_acg, long t_atomic, double gamma, long limit, int workers,
         std::uint64_t seed) {
        Instance inst = read_instance(instance_json);
        Solution sol = solve_instance(
            inst, algo, config_of(t_acg, t_atomic, gamma, limit, workers, seed));
        return write_solution(sol, inst.graph);
      },
      py::arg("instance"), py::arg("algo") = "acg", py::arg("t_acg") = 500,
      py::arg("t_atomic") = 60, py::arg("gamma") = 0.2,
      py::arg("limit") = 120000, py::arg("workers") = 1, py::arg("seed") = 0,
      py::call_guard<py::gil_scoped_release>(),
      "Run a solver (acg, acg1, acgh, acgr, multipulse, oracle) on instance "
      "JSON; returns solution JSON.");

  m.def(
      "check",
      [](const std::string& instance_json, const std::string& solution_json) {
        Instance inst = read_instance(instance_json);
        return check_solution(inst, read_solution(solution_json));
      },
      py::arg("instance"), py::arg("solution"),
      "True iff the solution's claims hold against the instance.");

  m.def(
      "enumerate_optimum",
      [](const std::string& instance_json) {
        Instance inst = read_instance(instance_json);
        OracleResult r = enumerate_paths(inst.graph, inst.constraints);
        py::dict out;
        out["feasible"] = r.feasible;
        if (r.feasible) {
          out["cost"] = r.cost;
          out["path"] = r.path.arcs;
        }
        return out;
      },
      py::arg("instance"),
      "Exhaustive enumeration; ground truth for small instances.");

  m.def(
      "compact_relaxation",
      [](const std::string& instance_json) {
        Instance inst = read_instance(instance_json);
        return compact_relaxation(inst.graph, inst.constraints);
      },
      py::arg("instance"),
      "LP value of the compact arc-flow relaxation (acyclic graphs only); "
      "+inf when infeasible.");
}
