#pragma once

#include <set>
#include <vector>

#include "algpos/digraph.hpp"
#include "algpos/sign_pattern.hpp"

namespace algpos {

/// Disjoint nonempty index sets covering {0..n-1}; each part induces a
/// maximal irreducible principal subpattern (an SCC of D(A)).
struct Components {
  std::vector<std::vector<int>> parts;

  int part_of(int vertex) const;
  bool operator==(const Components& o) const { return parts == o.parts; }
};

Components irreducible_components(const SignPattern& a);

/// An AP-irreducible pattern is irreducible, every row and column holds
/// a +, and B_A is irreducible.
bool is_ap_irreducible(const SignPattern& a);

/// AP-irreducible and zeroing any single nonzero destroys that.
bool is_minimally_ap_irreducible(const SignPattern& a);

/// Minimally AP-irreducible subpattern of a whose positive part keeps the
/// irreducible components of a's positive part. Greedy row-major deletion
/// with a depth-limited backtracking fallback.
SignPattern minimal_ap_subpattern(const SignPattern& a);

/// Nested vertex sets V_1 ( V_2 ( ... ( V_k covering a minimally
/// strongly connected loop-free digraph: V_1 induces a directed cycle and
/// each later set adds one attached directed path (an ear).
struct NestedSequence {
  /// V_1 as a cycle sequence starting at the requested vertex.
  std::vector<int> cycle;

  struct Ear {
    std::vector<int> path;  // new vertices in path order
    int from;               // initial attach vertex in the previous set
    int to;                 // terminal attach vertex in the previous set
  };
  std::vector<Ear> ears;

  /// V_i as sorted vertex sets, i = 1..k.
  std::vector<std::vector<int>> sets() const;
  size_t depth() const { return ears.size() + 1; }
};

NestedSequence nested_sequence(const Digraph& d, int start);

/// Blue = both endpoints in the same part, red = crossing arcs.
struct ArcColoring {
  std::vector<Arc> blue, red;
};

ArcColoring color_arcs(const SignPattern& x, const Components& parts);

/// Quotient of the red arcs: one vertex per part, loop-free.
Digraph quotient_digraph(const ArcColoring& coloring, const Components& parts);

}  // namespace algpos
