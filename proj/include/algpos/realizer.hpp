#pragma once

#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "algpos/eigen_triple.hpp"
#include "algpos/sign_pattern.hpp"
#include "algpos/spectral.hpp"

namespace algpos {

/// Records how positive diagonal indices were split into coupled pairs.
struct SplitMap {
  Eigen::Index original_order = 0;
  Eigen::Index split_order = 0;
  /// Per original index: its image, or the pair (i', i''); second == -1
  /// when the index was not split.
  std::vector<std::pair<Eigen::Index, Eigen::Index>> image;
  /// Per split index: the original index it came from.
  std::vector<Eigen::Index> preimage;

  bool identity() const { return original_order == split_order; }
};

/// One applied rule in a realization. Perturbation steps that enable the
/// rule (added entries scaled by an epsilon) are carried as metadata so
/// the step sequence mirrors the major construction stages.
struct TraceStep {
  std::string rule;  // base-cycle, attach-cycle-{negative,positive}, split-diagonal-{cycle,chord,entry},
  // subdivide-arc[-chord|-terminal], contract-pair, superpattern-lift
  std::map<std::string, Eigen::Index> params;  // 1-based where they name positions
  double epsilon = 0.0;                        // 0 when the rule takes no epsilon
  /// Entries added by a super-pattern perturbation tied to this step:
  /// (row label index, column label index, sign, epsilon used).
  std::vector<std::tuple<Eigen::Index, Eigen::Index, Sign, double>> added;
  SignPattern pattern;              // pattern after the step
  std::vector<std::string> labels;  // display labels, one per index
  double right_residual = 0.0;
  double left_residual = 0.0;
};

using ConstructionTrace = std::vector<TraceStep>;

/// Certified output: a matrix in Q(pattern) together with its eigen data,
/// witness polynomial, and the full construction trace.
struct Realization {
  SignPattern pattern;
  Eigen::MatrixXd matrix;
  double lambda = 0.0;
  Eigen::VectorXd u, v;
  WitnessPolynomial witness;
  ConstructionTrace trace;
};

/// The engine's sufficient condition: AP-irreducible and no + entry in
/// any cross block between distinct irreducible components of A_+.
bool hypothesis_holds(const SignPattern& a);

/// Replaces every + diagonal index i by a coupled pair (i', i'') with
/// + entries at (i',i'') and (i'',i'); row i moves to i'', column i moves
/// to i'. Requires a diagonal free of - entries.
std::pair<SignPattern, SplitMap> split_positive_diagonals(const SignPattern& x);

/// Constructive realization for a minimally AP-irreducible pattern with
/// zero diagonal and no cross-component +. Every intermediate triple is
/// verified; the final pattern of the trace equals y.
std::pair<EigenTriple, ConstructionTrace> realize_case1(
    const SignPattern& y, const std::vector<std::string>* labels = nullptr);

/// Full pipeline: minimal subpattern extraction, diagonal splitting,
/// constructive realization, pair contraction, super-pattern lift.
Realization realize(const SignPattern& a);

}  // namespace algpos
