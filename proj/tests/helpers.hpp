#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "algpos/digraph.hpp"
#include "algpos/eigen_triple.hpp"
#include "algpos/serialize.hpp"
#include "algpos/sign_pattern.hpp"
#include "algpos/spectral.hpp"
#include "algpos/structure.hpp"

namespace algpos::testing {

inline std::string fixture_path(const std::string& name) {
  return std::string(ALGPOS_FIXTURES_DIR) + "/" + name;
}

inline SignPattern load_fixture(const std::string& name) {
  return parse_pattern(read_file(fixture_path(name)));
}

/// Perron triple of a random symmetric matrix with positive entries:
/// lambda is the largest eigenvalue, simple, with positive eigenvectors.
inline EigenTriple random_positive_triple(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> mag(0.5, 1.5);
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m(i, j) = m(j, i) = mag(rng);
  Verdict v = find_eigen_triple(m);
  if (!v.positive) return random_positive_triple(n, rng);  // vanishingly rare
  return {m, v.lambda, v.u, v.v};
}

/// Variant with a negative entry at (0, j) while keeping the positive
/// eigenvector structure (small subtraction, re-solved).
inline EigenTriple random_triple_with_negative(int n, int j, std::mt19937& rng) {
  for (int attempt = 0; attempt < 64; ++attempt) {
    EigenTriple t = random_positive_triple(n, rng);
    Eigen::MatrixXd m = t.M;
    m(0, j) = -0.25 * m(0, j);
    if (j != 0) m(j, 0) = -0.25 * m(j, 0);  // keep things roughly symmetric
    Verdict v = find_eigen_triple(m);
    if (v.positive && v.lambda > 0 && m(0, j) < 0.0) return {m, v.lambda, v.u, v.v};
  }
  throw Error("random_triple_with_negative failed to converge");
}

/// Random strongly connected digraph trimmed to minimality: arcs are
/// removed in random order while strong connectivity survives.
inline Digraph random_minimally_strongly_connected(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  Digraph d(n);
  // Seed with a random Hamiltonian cycle, then sprinkle arcs.
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  for (int i = 0; i < n; ++i) d.add_arc(perm[i], perm[(i + 1) % n]);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && coin(rng) < 0.3) d.add_arc(i, j);

  std::vector<Arc> arcs = d.arcs();
  std::shuffle(arcs.begin(), arcs.end(), rng);
  for (auto [a, b] : arcs) {
    d.remove_arc(a, b);
    if (!is_strongly_connected(d)) d.add_arc(a, b);
  }
  return d;
}

/// Random pattern with the engine hypothesis by construction: component
/// blocks are minimally strongly connected + digraphs, the quotient is a
/// minimally strongly connected digraph of - arcs, and selected singleton
/// components carry a + diagonal.
inline SignPattern random_hypothesis_pattern(const std::vector<int>& comp_sizes,
                                             std::mt19937& rng) {
  const int m = static_cast<int>(comp_sizes.size());
  std::vector<std::vector<int>> members;
  int n = 0;
  for (int s : comp_sizes) {
    std::vector<int> mem(s);
    std::iota(mem.begin(), mem.end(), n);
    members.push_back(mem);
    n += s;
  }
  SignPattern p(n);
  for (int c = 0; c < m; ++c) {
    if (comp_sizes[c] == 1) {
      p.set(members[c][0], members[c][0], Sign::Plus);
      continue;
    }
    Digraph g = random_minimally_strongly_connected(comp_sizes[c], rng);
    for (auto [a, b] : g.arcs()) p.set(members[c][a], members[c][b], Sign::Plus);
  }
  if (m == 1) return p;
  Digraph q = random_minimally_strongly_connected(m, rng);
  for (auto [a, b] : q.arcs()) {
    std::uniform_int_distribution<int> pick_a(0, comp_sizes[a] - 1);
    std::uniform_int_distribution<int> pick_b(0, comp_sizes[b] - 1);
    p.set(members[a][pick_a(rng)], members[b][pick_b(rng)], Sign::Minus);
  }
  return p;
}

}  // namespace algpos::testing
