#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algpos/eigen_triple.hpp"
#include "algpos/sign_pattern.hpp"

namespace algpos {

/// Polynomial with real coefficients, ascending degree. The defining
/// certificate: evaluating at the matrix gives an entrywise positive
/// result.
struct WitnessPolynomial {
  std::vector<double> coefficients;

  Eigen::Index degree() const {
    return static_cast<Eigen::Index>(coefficients.size()) - 1;
  }
};

/// Horner evaluation of a polynomial at a square matrix.
Eigen::MatrixXd evaluate(const WitnessPolynomial& f, const Eigen::MatrixXd& m);

/// Outcome of the algebraic-positivity test for one real matrix.
struct Verdict {
  bool positive = false;
  double lambda = 0.0;
  Eigen::VectorXd u, v;
  std::string diagnostics;  // failure reason when not positive
};

/// Scans the full spectrum for a simple real eigenvalue with strictly
/// one-signed right and left eigenvectors (normalized positive). Returns
/// the largest qualifying eigenvalue, or a negative verdict naming the
/// first failed condition.
Verdict find_eigen_triple(const Eigen::MatrixXd& m);

/// Simplicity test: numerical rank of M - lambda I equals n-1 and
/// |v^T u| is bounded away from zero.
bool check_simple(const Eigen::MatrixXd& m, double lambda, const Eigen::VectorXd& u,
                  const Eigen::VectorXd& v);

/// Certificate polynomial: the characteristic polynomial divided by
/// (x - lambda), sign-corrected so the evaluation is entrywise positive.
/// Requires lambda simple with positive left/right eigenvectors.
WitnessPolynomial witness_polynomial(const Eigen::MatrixXd& m, double lambda);

/// Full check: find a qualifying triple and produce a verified witness
/// polynomial alongside it.
std::pair<Verdict, std::optional<WitnessPolynomial>> verify_algebraic_positivity(
    const Eigen::MatrixXd& m);

/// Exact realization for the base shape: all-+ diagonal whose off-diagonal
/// nonzeros are a single directed cycle of - entries covering every
/// vertex. Returns 2I - C with eigenvalue 1 and all-ones eigenvectors
/// (order 1 degenerates to [[1]]).
EigenTriple realize_base_cycle(const SignPattern& x);

/// Lifts a certified matrix into the qualitative class of a super-pattern
/// by adding +-/-1 entries scaled by a geometrically shrinking epsilon
/// until the verifier accepts. Returns the refreshed triple and the
/// epsilon used (0 when the patterns already coincide).
std::pair<EigenTriple, double> perturb_to_superpattern(const EigenTriple& t,
                                                       const SignPattern& a);

}  // namespace algpos
