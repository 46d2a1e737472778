#include "algpos/eigen_triple.hpp"

#include <Eigen/SVD>

namespace algpos {

double EigenTriple::right_residual() const {
  return (M * u - lambda * u).cwiseAbs().maxCoeff();
}

double EigenTriple::left_residual() const {
  return (M.transpose() * v - lambda * v).cwiseAbs().maxCoeff();
}

Eigen::Index numerical_rank(const Eigen::MatrixXd& m, double tol, double floor) {
  if (m.rows() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  const double thr = std::max(tol * s(0), 1e-12 * floor);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > thr) ++r;
  return r;
}

TripleCheck check_triple(const EigenTriple& t, double tol) {
  TripleCheck c;
  const Eigen::Index n = t.order();
  if (n == 0 || t.u.size() != n || t.v.size() != n) {
    c.reason = "dimension mismatch";
    return c;
  }
  const double scale = std::max(t.M.cwiseAbs().maxCoeff(), 1e-300);
  c.right_residual = t.right_residual();
  c.left_residual = t.left_residual();
  if (c.right_residual > tol * scale) {
    c.reason = "right residual " + std::to_string(c.right_residual);
    return c;
  }
  if (c.left_residual > tol * scale) {
    c.reason = "left residual " + std::to_string(c.left_residual);
    return c;
  }
  if (t.u.minCoeff() <= 0.0) {
    c.reason = "right eigenvector not strictly positive";
    return c;
  }
  if (t.v.minCoeff() <= 0.0) {
    c.reason = "left eigenvector not strictly positive";
    return c;
  }
  Eigen::MatrixXd shifted = t.M - t.lambda * Eigen::MatrixXd::Identity(n, n);
  if (numerical_rank(shifted, kRankTol, scale + std::abs(t.lambda)) != n - 1) {
    c.reason = "rank(M - lambda I) != n - 1";
    return c;
  }
  const double dot = std::abs(t.v.dot(t.u));
  if (dot <= kBiorthTol * t.u.norm() * t.v.norm()) {
    c.reason = "v^T u numerically zero";
    return c;
  }
  c.ok = true;
  return c;
}

}  // namespace algpos
