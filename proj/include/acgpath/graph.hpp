#pragma once

#include <cstdint>
#include <vector>

#include "acgpath/errors.hpp"

namespace acg {

struct Arc {
  int tail = 0;
  int head = 0;
  double cost = 0.0;
  std::vector<double> resources;
  int id = -1;  // assigned densely by Graph::build
};

// A path is an ordered arc id sequence. Structural properties (chaining,
// elementarity, s-t connection) are judged by Graph::evaluate, not assumed.
struct Path {
  std::vector<int> arcs;

  bool empty() const { return arcs.empty(); }
  size_t size() const { return arcs.size(); }
  bool operator==(const Path& o) const { return arcs == o.arcs; }
};

struct PathMetrics {
  double cost = 0.0;
  std::vector<double> resource_totals;
  bool elementary = false;
  bool connects_s_to_t = false;
};

class Graph {
 public:
  // Assigns arc ids 0..m-1 in input order. Rejects negative costs or
  // resources, endpoints outside [0, nodes), self-loops, source == target,
  // and resource vectors whose length differs from resource_count.
  static Graph build(int nodes, std::vector<Arc> arcs, int source, int target,
                     int resource_count);

  int num_nodes() const { return nodes_; }
  int num_arcs() const { return static_cast<int>(arcs_.size()); }
  int source() const { return source_; }
  int target() const { return target_; }
  int resource_count() const { return resource_count_; }

  const Arc& arc(int id) const { return arcs_[id]; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::vector<int>& out_arcs(int u) const { return out_[u]; }
  const std::vector<int>& in_arcs(int u) const { return in_[u]; }

  double max_arc_cost() const { return max_cost_; }

  PathMetrics evaluate(const Path& p) const;

 private:
  int nodes_ = 0;
  int source_ = 0;
  int target_ = 0;
  int resource_count_ = 0;
  double max_cost_ = 0.0;
  std::vector<Arc> arcs_;
  std::vector<std::vector<int>> out_;
  std::vector<std::vector<int>> in_;
};

// Subset of arc ids over a fixed universe of size m, with O(1) membership.
class ArcSet {
 public:
  ArcSet() = default;

  static ArcSet all(int universe) {
    ArcSet s;
    s.member_.assign(universe, 1);
    s.count_ = universe;
    return s;
  }
  static ArcSet none(int universe) {
    ArcSet s;
    s.member_.assign(universe, 0);
    s.count_ = 0;
    return s;
  }

  bool contains(int a) const { return member_[a] != 0; }
  void insert(int a) { count_ += 1 - member_[a]; member_[a] = 1; }
  void remove(int a) { count_ -= member_[a]; member_[a] = 0; }

  int count() const { return count_; }
  int universe() const { return static_cast<int>(member_.size()); }

  std::vector<int> to_vector() const {
    std::vector<int> out;
    out.reserve(count_);
    for (int a = 0; a < universe(); ++a)
      if (member_[a]) out.push_back(a);
    return out;
  }

  bool operator==(const ArcSet& o) const { return member_ == o.member_; }

 private:
  std::vector<uint8_t> member_;
  int count_ = 0;
};

}  // namespace acg
