#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "algpos/sign_pattern.hpp"
#include "algpos/spectral.hpp"

namespace algpos {

enum class FilterVerdict { RejectedByNecessaryConditions, Candidate };

/// Combined necessary condition: a pattern can only allow algebraic
/// positivity when it or its negation is AP-irreducible.
FilterVerdict necessary_filter(const SignPattern& a);

struct OracleReport {
  SignPattern pattern;
  FilterVerdict filter_verdict = FilterVerdict::RejectedByNecessaryConditions;
  std::optional<Eigen::MatrixXd> found;  // first certified matrix in Q(A)
  std::optional<Verdict> found_verdict;
  std::uint64_t samples_tried = 0;
};

/// Brute-force witness search over magnitude assignments from a finite
/// grid. Enumerates exhaustively when grid^nnz fits the budget, otherwise
/// samples with the seeded generator. Exhaustion is a report state.
OracleReport search_witness(const SignPattern& a, const std::vector<double>& grid,
                            std::uint64_t budget, std::uint32_t seed = 12345);

/// Streams all 3^(n*n) patterns of the given order (n <= 3). With
/// canonical=true, only the minimum-encoding representative of each orbit
/// under simultaneous permutation and global negation is emitted.
void enumerate_patterns(int n, bool canonical,
                        const std::function<void(const SignPattern&)>& sink);

/// Lexicographic base-3 encoding used for canonical representatives.
std::uint64_t encode_pattern(const SignPattern& a);

struct ProbeRow {
  SignPattern pattern;
  FilterVerdict filter = FilterVerdict::RejectedByNecessaryConditions;
  bool hypothesis = false;        // pattern satisfies the engine hypothesis
  bool hypothesis_neg = false;    // its negation does
  bool realized = false;          // realize() produced a verified matrix
  bool oracle_found = false;
  std::uint64_t samples = 0;
};

struct ProbeSummary {
  int order = 0;
  std::vector<ProbeRow> rows;
  std::uint64_t canonical_count = 0;
  std::uint64_t candidates = 0;
  std::uint64_t realized = 0;
  std::uint64_t oracle_found = 0;
  /// Candidates with no oracle witness within budget: would-be
  /// counterexamples to the open converse, reported, never asserted.
  std::uint64_t unresolved_candidates = 0;
  /// Minimally AP-irreducible zero-diagonal patterns seen, and how many
  /// satisfied the 2n-2 bound.
  std::uint64_t minimal_zero_diag = 0;
  std::uint64_t minimal_zero_diag_within_bound = 0;
};

ProbeSummary conjecture_probe(int n, std::uint64_t budget,
                              const std::vector<double>& grid = {0.5, 1.0, 2.0},
                              std::uint32_t seed = 12345);

/// Delimiter-separated rendering of the probe table.
std::string format_probe(const ProbeSummary& s);

}  // namespace algpos
