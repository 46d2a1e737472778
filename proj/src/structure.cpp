#include "algpos/structure.hpp"

#include <algorithm>
#include <functional>

#include "algpos/errors.hpp"

namespace algpos {

int Components::part_of(int vertex) const {
  for (size_t i = 0; i < parts.size(); ++i)
    if (std::binary_search(parts[i].begin(), parts[i].end(), vertex))
      return static_cast<int>(i);
  return -1;
}

Components irreducible_components(const SignPattern& a) {
  return Components{strongly_connected_components(digraph_of(a))};
}

bool is_ap_irreducible(const SignPattern& a) {
  const Eigen::Index n = a.order();
  if (!is_strongly_connected(digraph_of(a))) return false;
  for (Eigen::Index i = 0; i < n; ++i) {
    bool row_plus = false, col_plus = false;
    for (Eigen::Index j = 0; j < n; ++j) {
      row_plus |= a.at(i, j) == Sign::Plus;
      col_plus |= a.at(j, i) == Sign::Plus;
    }
    if (!row_plus || !col_plus) return false;
  }
  return is_strongly_connected(digraph_of(b_matrix(a)));
}

bool is_minimally_ap_irreducible(const SignPattern& a) {
  if (!is_ap_irreducible(a)) return false;
  SignPattern t = a;
  for (Eigen::Index i = 0; i < a.order(); ++i)
    for (Eigen::Index j = 0; j < a.order(); ++j) {
      if (a.at(i, j) == Sign::Zero) continue;
      t.set(i, j, Sign::Zero);
      bool still = is_ap_irreducible(t);
      t.set(i, j, a.at(i, j));
      if (still) return false;
    }
  return true;
}

namespace {

bool deletion_ok(const SignPattern& x, Eigen::Index i, Eigen::Index j,
                 const Components& target) {
  SignPattern t = x;
  t.set(i, j, Sign::Zero);
  return is_ap_irreducible(t) && irreducible_components(positive_part(t)) == target;
}

// One greedy pass; returns true if anything was deleted.
bool greedy_pass(SignPattern& x, const Components& target) {
  bool deleted = false;
  for (Eigen::Index i = 0; i < x.order(); ++i)
    for (Eigen::Index j = 0; j < x.order(); ++j) {
      if (x.at(i, j) == Sign::Zero) continue;
      if (deletion_ok(x, i, j, target)) {
        x.set(i, j, Sign::Zero);
        deleted = true;
      }
    }
  return deleted;
}

// Depth-limited search over deletion orders for the rare case where the
// greedy fixpoint is not minimally AP-irreducible.
bool backtrack_extract(SignPattern& x, const Components& target, int depth) {
  if (is_minimally_ap_irreducible(x)) return true;
  if (depth <= 0) return false;
  for (Eigen::Index i = 0; i < x.order(); ++i)
    for (Eigen::Index j = 0; j < x.order(); ++j) {
      if (x.at(i, j) == Sign::Zero) continue;
      if (!deletion_ok(x, i, j, target)) continue;
      SignPattern t = x;
      t.set(i, j, Sign::Zero);
      while (greedy_pass(t, target)) {
      }
      if (backtrack_extract(t, target, depth - 1)) {
        x = t;
        return true;
      }
    }
  return false;
}

}  // namespace

SignPattern minimal_ap_subpattern(const SignPattern& a) {
  if (!is_ap_irreducible(a)) throw NotApIrreducible("minimal_ap_subpattern input");
  const Components target = irreducible_components(positive_part(a));
  SignPattern x = a;
  while (greedy_pass(x, target)) {
  }
  if (is_minimally_ap_irreducible(x)) return x;
  if (backtrack_extract(x, target, 8)) return x;
  throw ExtractionFailed("no minimally AP-irreducible component-preserving subpattern found");
}

std::vector<std::vector<int>> NestedSequence::sets() const {
  std::vector<std::vector<int>> out;
  std::vector<int> cur = cycle;
  std::sort(cur.begin(), cur.end());
  out.push_back(cur);
  for (const Ear& e : ears) {
    cur.insert(cur.end(), e.path.begin(), e.path.end());
    std::sort(cur.begin(), cur.end());
    out.push_back(cur);
  }
  return out;
}

NestedSequence nested_sequence(const Digraph& d, int start) {
  if (d.has_loop()) throw HasLoop("nested_sequence input");
  if (!is_minimally_strongly_connected(d))
    throw NotMinimallyStronglyConnected("nested_sequence input");

  const int n = d.vertex_count();
  NestedSequence ns;
  if (n == 1) {
    ns.cycle = {start};
    return ns;
  }

  ns.cycle = shortest_cycle_through(d, start);
  std::vector<bool> inside(n, false);
  for (int v : ns.cycle) inside[v] = true;

  int covered = static_cast<int>(ns.cycle.size());
  while (covered < n) {
    // Boundary arcs (x, y), x inside, y outside; lowest x first, then
    // shortest return path with lexicographic tie-break.
    int bx = -1, by = -1;
    std::vector<int> bpath;
    for (int x = 0; x < n && bx < 0; ++x) {
      if (!inside[x]) continue;
      for (int y : d.out(x)) {
        if (inside[y]) continue;
        std::vector<int> back = shortest_path_to_set(d, {y}, inside);
        if (back.empty()) continue;  // cannot happen in a strongly connected digraph
        std::vector<int> path(back.begin(), back.end() - 1);
        if (bx < 0 || path.size() < bpath.size() ||
            (path.size() == bpath.size() && path < bpath)) {
          bx = x;
          by = back.back();
          bpath = path;
        }
      }
    }
    if (bx < 0)
      throw NotMinimallyStronglyConnected("ear search failed; digraph not strongly connected");
    ns.ears.push_back({bpath, bx, by});
    for (int v : bpath) inside[v] = true;
    covered += static_cast<int>(bpath.size());
  }
  return ns;
}

ArcColoring color_arcs(const SignPattern& x, const Components& parts) {
  if (!(irreducible_components(positive_part(x)) == parts))
    throw ComponentMismatch("parts are not the components of the positive part");
  ArcColoring c;
  for (auto [i, j] : digraph_of(x).arcs()) {
    if (parts.part_of(i) == parts.part_of(j))
      c.blue.emplace_back(i, j);
    else
      c.red.emplace_back(i, j);
  }
  return c;
}

Digraph quotient_digraph(const ArcColoring& coloring, const Components& parts) {
  Digraph q(static_cast<int>(parts.parts.size()));
  for (auto [p, r] : coloring.red) {
    int a = parts.part_of(p), b = parts.part_of(r);
    if (a != b) q.add_arc(a, b);
  }
  return q;
}

}  // namespace algpos
