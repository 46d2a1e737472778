#pragma once

#include <Eigen/Dense>
#include <utility>
#include <vector>

#include "algpos/sign_pattern.hpp"

namespace algpos {

using Arc = std::pair<int, int>;

/// Directed graph on vertices 0..n-1. Loops are permitted (D(A) has a
/// loop at i iff a_ii != 0). Adjacency lists are kept sorted so every
/// traversal in this library is deterministic.
class Digraph {
 public:
  Digraph() = default;
  explicit Digraph(int n) : out_(n), in_(n) {}
  Digraph(int n, const std::vector<Arc>& arcs);

  int vertex_count() const { return static_cast<int>(out_.size()); }
  int arc_count() const { return arc_count_; }
  bool has_arc(int from, int to) const;
  void add_arc(int from, int to);
  void remove_arc(int from, int to);

  const std::vector<int>& out(int v) const { return out_[v]; }
  const std::vector<int>& in(int v) const { return in_[v]; }

  std::vector<Arc> arcs() const;
  bool has_loop() const;

  /// Subgraph induced by the given vertices; result vertices are indexed
  /// by position in `vertices` (which must be duplicate-free).
  Digraph induced(const std::vector<int>& vertices) const;

 private:
  std::vector<std::vector<int>> out_, in_;
  int arc_count_ = 0;
};

/// Arc (i,j) present iff a_ij != 0.
Digraph digraph_of(const SignPattern& a);

/// Strongly connected components in Tarjan order, each sorted ascending;
/// the list itself is sorted by smallest member.
std::vector<std::vector<int>> strongly_connected_components(const Digraph& d);

/// A one-vertex digraph counts as strongly connected.
bool is_strongly_connected(const Digraph& d);

/// True iff d is strongly connected and deleting any single arc breaks
/// strong connectivity. Returns false for non-strongly-connected input.
bool is_minimally_strongly_connected(const Digraph& d);

/// Deterministic shortest path from one of `sources` to one of `targets`
/// whose internal vertices avoid `targets`. Ties broken toward the
/// lexicographically smallest vertex sequence. Empty result = no path.
std::vector<int> shortest_path_to_set(const Digraph& d, const std::vector<int>& sources,
                                      const std::vector<bool>& is_target);

/// Deterministic shortest directed cycle through v (lexicographically
/// smallest among the shortest). Returns the cycle as a vertex sequence
/// starting at v; empty if no cycle through v exists.
std::vector<int> shortest_cycle_through(const Digraph& d, int v);

}  // namespace algpos
