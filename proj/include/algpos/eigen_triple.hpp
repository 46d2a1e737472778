#pragma once

#include <Eigen/Dense>
#include <string>

namespace algpos {

/// Certificate carried through every construction: a matrix together with
/// a simple positive eigenvalue and strictly positive right/left
/// eigenvectors (M u = lambda u, v^T M = lambda v^T).
struct EigenTriple {
  Eigen::MatrixXd M;
  double lambda = 0.0;
  Eigen::VectorXd u;  // right eigenvector, all entries > 0
  Eigen::VectorXd v;  // left eigenvector, all entries > 0

  Eigen::Index order() const { return M.rows(); }

  double right_residual() const;  // ||M u - lambda u||_inf
  double left_residual() const;   // ||v^T M - lambda v^T||_inf
};

struct TripleCheck {
  bool ok = false;
  std::string reason;
  double right_residual = 0.0;
  double left_residual = 0.0;
};

/// Relative residual tolerance for construction outputs.
inline constexpr double kResidualTol = 1e-10;
/// Singular values below this fraction of sigma_max count as zero.
inline constexpr double kRankTol = 1e-8;
/// |v^T u| must exceed this fraction of ||u|| ||v|| for simplicity.
inline constexpr double kBiorthTol = 1e-8;
/// An eigenvector counts as strictly one-signed when its smallest
/// magnitude component exceeds this fraction of the largest.
inline constexpr double kOneSignedTol = 1e-10;

/// Numerical rank of m with threshold tol * sigma_max. The optional
/// absolute floor guards shifted matrices that are zero up to rounding
/// (their own sigma_max is pure noise); pass the scale of the unshifted
/// problem there.
Eigen::Index numerical_rank(const Eigen::MatrixXd& m, double tol = kRankTol,
                            double floor = 0.0);

/// Full validation: residuals below tol * ||M||_inf, u and v strictly
/// positive, rank(M - lambda I) = n - 1, and v^T u away from zero
/// (simplicity via the biorthogonality test).
TripleCheck check_triple(const EigenTriple& t, double tol = kResidualTol);

}  // namespace algpos
