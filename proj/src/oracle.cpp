#include "algpos/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "algpos/errors.hpp"
#include "algpos/realizer.hpp"
#include "algpos/structure.hpp"

namespace algpos {

FilterVerdict necessary_filter(const SignPattern& a) {
  if (is_ap_irreducible(a) || is_ap_irreducible(a.negated()))
    return FilterVerdict::Candidate;
  return FilterVerdict::RejectedByNecessaryConditions;
}

namespace {

std::vector<std::pair<Eigen::Index, Eigen::Index>> nonzero_slots(const SignPattern& a) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> s;
  for (Eigen::Index i = 0; i < a.order(); ++i)
    for (Eigen::Index j = 0; j < a.order(); ++j)
      if (a.at(i, j) != Sign::Zero) s.emplace_back(i, j);
  return s;
}

Eigen::MatrixXd assemble(const SignPattern& a,
                         const std::vector<std::pair<Eigen::Index, Eigen::Index>>& slots,
                         const std::vector<double>& mags) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(a.order(), a.order());
  for (size_t t = 0; t < slots.size(); ++t) {
    auto [i, j] = slots[t];
    m(i, j) = a.at(i, j) == Sign::Plus ? mags[t] : -mags[t];
  }
  return m;
}

}  // namespace

OracleReport search_witness(const SignPattern& a, const std::vector<double>& grid,
                            std::uint64_t budget, std::uint32_t seed) {
  if (grid.empty()) throw Error("search_witness: empty magnitude grid");
  for (double g : grid)
    if (!(g > 0.0)) throw NonpositiveMagnitude("oracle grid value");
  OracleReport rep;
  rep.pattern = a;
  rep.filter_verdict = necessary_filter(a);
  if (rep.filter_verdict == FilterVerdict::RejectedByNecessaryConditions || budget == 0) return rep;

  const auto slots = nonzero_slots(a);
  const std::uint64_t gs = grid.size();
  // Exhaustive when grid^nnz fits the budget (watch for overflow).
  bool exhaustive = true;
  std::uint64_t total = 1;
  for (size_t t = 0; t < slots.size() && exhaustive; ++t) {
    if (total > budget / std::max<std::uint64_t>(gs, 1)) exhaustive = false;
    total *= gs;
  }
  if (slots.empty()) exhaustive = true, total = 1;

  auto try_one = [&](const std::vector<double>& mags) {
    ++rep.samples_tried;
    Eigen::MatrixXd m = assemble(a, slots, mags);
    Verdict v = find_eigen_triple(m);
    if (v.positive) {
      rep.found = m;
      rep.found_verdict = v;
      return true;
    }
    return false;
  };

  std::vector<double> mags(slots.size(), grid.empty() ? 1.0 : grid[0]);
  if (exhaustive && total <= budget) {
    std::vector<size_t> digit(slots.size(), 0);
    for (std::uint64_t it = 0; it < total; ++it) {
      for (size_t t = 0; t < slots.size(); ++t) mags[t] = grid[digit[t]];
      if (try_one(mags)) return rep;
      for (size_t t = 0; t < slots.size(); ++t) {
        if (++digit[t] < gs) break;
        digit[t] = 0;
      }
      if (slots.empty()) break;
    }
  } else {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<size_t> pick(0, gs - 1);
    for (std::uint64_t it = 0; it < budget; ++it) {
      for (size_t t = 0; t < slots.size(); ++t) mags[t] = grid[pick(rng)];
      if (try_one(mags)) return rep;
    }
  }
  return rep;
}

std::uint64_t encode_pattern(const SignPattern& a) {
  std::uint64_t code = 0;
  for (Eigen::Index i = 0; i < a.order(); ++i)
    for (Eigen::Index j = 0; j < a.order(); ++j)
      code = code * 3 + static_cast<std::uint64_t>(static_cast<int>(a.at(i, j)) + 1);
  return code;
}

void enumerate_patterns(int n, bool canonical,
                        const std::function<void(const SignPattern&)>& sink) {
  if (n < 1 || n > 3) throw Error("enumerate_patterns supports n in {1,2,3}");
  std::vector<std::vector<Eigen::Index>> perms;
  std::vector<Eigen::Index> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  do {
    perms.push_back(idx);
  } while (std::next_permutation(idx.begin(), idx.end()));

  const std::uint64_t total = static_cast<std::uint64_t>(std::pow(3.0, n * n) + 0.5);
  for (std::uint64_t code = 0; code < total; ++code) {
    SignPattern p(n);
    std::uint64_t c = code;
    for (Eigen::Index i = n - 1; i >= 0; --i)
      for (Eigen::Index j = n - 1; j >= 0; --j) {
        p.set(i, j, static_cast<Sign>(static_cast<int>(c % 3) - 1));
        c /= 3;
      }
    if (canonical) {
      std::uint64_t best = encode_pattern(p);
      for (const auto& s : perms) {
        SignPattern q = permute(p, s);
        best = std::min(best, std::min(encode_pattern(q), encode_pattern(q.negated())));
      }
      if (best != encode_pattern(p)) continue;
    }
    sink(p);
  }
}

ProbeSummary conjecture_probe(int n, std::uint64_t budget, const std::vector<double>& grid,
                              std::uint32_t seed) {
  ProbeSummary s;
  s.order = n;
  enumerate_patterns(n, true, [&](const SignPattern& p) {
    ProbeRow row;
    row.pattern = p;
    row.filter = necessary_filter(p);
    row.hypothesis = hypothesis_holds(p);
    row.hypothesis_neg = hypothesis_holds(p.negated());
    if (row.hypothesis) {
      Realization r = realize(p);  // throws on engine failure: loud by design
      row.realized = verify_algebraic_positivity(r.matrix).first.positive;
    } else if (row.hypothesis_neg) {
      Realization r = realize(p.negated());
      Eigen::MatrixXd m = -r.matrix;
      row.realized = verify_algebraic_positivity(m).first.positive;
    }
    if (row.filter == FilterVerdict::Candidate) {
      OracleReport rep = search_witness(p, grid, budget, seed);
      row.oracle_found = rep.found.has_value();
      row.samples = rep.samples_tried;
    }
    ++s.canonical_count;
    if (row.filter == FilterVerdict::Candidate) ++s.candidates;
    if (row.realized) ++s.realized;
    if (row.oracle_found) ++s.oracle_found;
    if (row.filter == FilterVerdict::Candidate && !row.oracle_found)
      ++s.unresolved_candidates;
    const bool zero_diag = [&] {
      for (Eigen::Index i = 0; i < p.order(); ++i)
        if (p.at(i, i) != Sign::Zero) return false;
      return true;
    }();
    // The canonical representative may carry the negated orientation.
    if (zero_diag &&
        (is_minimally_ap_irreducible(p) || is_minimally_ap_irreducible(p.negated()))) {
      ++s.minimal_zero_diag;
      if (p.nonzero_count() <= 2 * p.order() - 2) ++s.minimal_zero_diag_within_bound;
    }
    s.rows.push_back(std::move(row));
  });
  return s;
}

std::string format_probe(const ProbeSummary& s) {
  std::ostringstream os;
  os << "pattern\tfilter\thypothesis\thypothesis(-A)\trealized\toracle\tsamples\n";
  for (const auto& row : s.rows) {
    std::string flat;
    for (Eigen::Index i = 0; i < row.pattern.order(); ++i) {
      if (i) flat += '/';
      for (Eigen::Index j = 0; j < row.pattern.order(); ++j)
        flat += sign_char(row.pattern.at(i, j));
    }
    os << flat << '\t'
       << (row.filter == FilterVerdict::Candidate ? "candidate" : "rejected") << '\t'
       << (row.hypothesis ? "yes" : "no") << '\t' << (row.hypothesis_neg ? "yes" : "no")
       << '\t' << (row.realized ? "yes" : "no") << '\t'
       << (row.oracle_found ? "found" : "-") << '\t' << row.samples << '\n';
  }
  os << "# canonical=" << s.canonical_count << " candidates=" << s.candidates
     << " realized=" << s.realized << " oracle_found=" << s.oracle_found
     << " unresolved=" << s.unresolved_candidates
     << " minimal_zero_diag=" << s.minimal_zero_diag << " within_2n-2="
     << s.minimal_zero_diag_within_bound << "\n";
  return os.str();
}

}  // namespace algpos
