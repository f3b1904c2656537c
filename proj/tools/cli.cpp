#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "acgpath/branch.hpp"
#include "acgpath/errors.hpp"
#include "acgpath/instance.hpp"

namespace acg {
namespace {

namespace fs = std::filesystem;
using std::chrono::milliseconds;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spill(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << bytes;
}

void emit(const std::string& out_path, const std::string& bytes) {
  if (out_path.empty())
    std::cout << bytes;
  else
    spill(out_path, bytes);
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

struct SolverArgs {
  std::string algo = "acg";
  long t_acg = 500;
  long t_atomic = 60;
  double gamma = 0.2;
  long limit = 120000;
  int workers = 1;
  std::uint64_t seed = 0;
};

void add_solver_options(CLI::App* cmd, SolverArgs& args) {
  cmd->add_option("--algo", args.algo, "solver to run")
      ->check(CLI::IsMember(
          {"acg", "acg1", "acgh", "acgr", "multipulse", "oracle"}));
  cmd->add_option("--t-acg", args.t_acg, "master LP budget per call, ms");
  cmd->add_option("--t-atomic", args.t_atomic, "atomic budget per call, ms");
  cmd->add_option("--gamma", args.gamma, "eligible-arc ratio gating the master LP");
  cmd->add_option("--limit", args.limit, "global time limit, ms");
  cmd->add_option("--workers", args.workers, "tree worker threads (acg only)");
  cmd->add_option("--seed", args.seed, "solver seed");
}

Solution run_algo(const Instance& inst, const SolverArgs& args) {
  SolverConfig cfg;
  cfg.t_acg = milliseconds(args.t_acg);
  cfg.t_atomic = milliseconds(args.t_atomic);
  cfg.gamma_ratio = args.gamma;
  cfg.global_limit = milliseconds(args.limit);
  cfg.workers = args.workers;
  cfg.seed = args.seed;
  return solve_instance(inst, args.algo, cfg);
}

int status_exit_code(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal:
      return 0;
    case SolveStatus::Infeasible:
      return 2;
    case SolveStatus::TimeLimit:
      return 3;
  }
  return 70;
}

int do_solve(const std::string& instance_path, const SolverArgs& args,
             const std::string& out_path) {
  Instance inst = read_instance(slurp(instance_path));
  Solution sol = run_algo(inst, args);
  emit(out_path, write_solution(sol, inst.graph));
  return status_exit_code(sol.status);
}

int do_generate(const std::string& mode, const std::string& input, int width,
                int height, int path_size, std::uint64_t seed, bool unfeasible,
                const std::string& out_path) {
  Graph base =
      mode == "grid" ? grid(width, height, seed) : read_topology(slurp(input));
  // ingested topologies may carry fewer metrics than the default draw wants
  int n_upper = std::min(3, base.resource_count());
  int n_range = std::min(3, base.resource_count() - n_upper);
  Instance inst = unfeasible ? gen_unfeasible(base, path_size, seed)
                             : gen_feasible(base, path_size, seed, n_upper,
                                            n_range);
  emit(out_path, write_instance(inst));
  return 0;
}

int do_check(const std::string& instance_path, const std::string& solution_path) {
  Instance inst = read_instance(slurp(instance_path));
  Solution sol = read_solution(slurp(solution_path));
  bool ok = check_solution(inst, sol);
  std::cout << (ok ? "ok: solution verified\n" : "mismatch\n");
  return ok ? 0 : 1;
}

int do_bench(const std::string& dir, const std::vector<std::string>& algos,
             const SolverArgs& base_args, const std::string& csv_path) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());

  std::ostringstream csv;
  csv << "instance,algo,status,cost,bound,wall_ms,columns,nodes_expanded\n";
  for (const fs::path& file : files) {
    Instance inst = read_instance(slurp(file.string()));
    for (const std::string& algo : algos) {
      SolverArgs args = base_args;
      args.algo = algo;
      Solution sol = run_algo(inst, args);
      csv << file.filename().string() << ',' << algo << ','
          << status_name(sol.status) << ',' << format_number(sol.cost) << ','
          << format_number(sol.lower_bound) << ','
          << format_number(sol.stats.wall_ms) << ',' << sol.stats.columns
          << ',' << sol.stats.nodes_expanded << '\n';
    }
  }
  spill(csv_path, csv.str());
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"constrained shortest paths via atomic column generation"};
  app.require_subcommand(1);

  std::string instance_path, solution_path, out_path;
  SolverArgs solver_args;
  CLI::App* solve_cmd = app.add_subcommand("solve", "solve one instance file");
  solve_cmd->add_option("instance", instance_path, "instance JSON")->required();
  add_solver_options(solve_cmd, solver_args);
  solve_cmd->add_option("-o,--output", out_path, "solution JSON path (default stdout)");

  std::string gen_mode, gen_input, gen_out;
  int gen_width = 5, gen_height = 5, gen_path_size = 5;
  std::uint64_t gen_seed = 0;
  bool gen_unfeas = false;
  CLI::App* gen_cmd = app.add_subcommand("generate", "write an instance file");
  gen_cmd->add_option("mode", gen_mode, "grid or file")
      ->required()
      ->check(CLI::IsMember({"grid", "file"}));
  gen_cmd->add_option("--input", gen_input, "topology file for mode=file");
  gen_cmd->add_option("--width", gen_width, "grid width");
  gen_cmd->add_option("--height", gen_height, "grid height");
  gen_cmd->add_option("--path-size", gen_path_size, "walk length in arcs");
  gen_cmd->add_option("--seed", gen_seed, "generator seed");
  gen_cmd->add_flag("--unfeasible", gen_unfeas, "build a cross-constraint conflict");
  gen_cmd->add_option("-o,--output", gen_out, "instance JSON path (default stdout)");

  std::string check_instance, check_claim;
  CLI::App* check_cmd =
      app.add_subcommand("check", "verify a solution against its instance");
  check_cmd->add_option("instance", check_instance, "instance JSON")->required();
  check_cmd->add_option("solution", check_claim, "solution JSON")->required();

  std::string bench_dir, bench_csv;
  std::vector<std::string> bench_algos;
  SolverArgs bench_args;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "run solvers over a directory of instances");
  bench_cmd->add_option("dir", bench_dir, "directory of instance JSON files")
      ->required();
  bench_cmd->add_option("--algos", bench_algos, "solvers to run")
      ->required()
      ->delimiter(',');
  bench_cmd->add_option("--csv", bench_csv, "output CSV path")->required();
  bench_cmd->add_option("--t-acg", bench_args.t_acg, "master LP budget, ms");
  bench_cmd->add_option("--t-atomic", bench_args.t_atomic, "atomic budget, ms");
  bench_cmd->add_option("--gamma", bench_args.gamma, "master LP gate ratio");
  bench_cmd->add_option("--limit", bench_args.limit, "global limit, ms");
  bench_cmd->add_option("--workers", bench_args.workers, "tree worker threads");
  bench_cmd->add_option("--seed", bench_args.seed, "solver seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 64;
  }

  try {
    if (solve_cmd->parsed())
      return do_solve(instance_path, solver_args, out_path);
    if (gen_cmd->parsed()) {
      if (gen_mode == "file" && gen_input.empty()) {
        std::cerr << "generate file needs --input\n";
        return 64;
      }
      return do_generate(gen_mode, gen_input, gen_width, gen_height,
                         gen_path_size, gen_seed, gen_unfeas, gen_out);
    }
    if (check_cmd->parsed()) return do_check(check_instance, check_claim);
    if (bench_cmd->parsed())
      return do_bench(bench_dir, bench_algos, bench_args, bench_csv);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 65;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 70;
  }
  return 64;
}

}  // namespace acg
