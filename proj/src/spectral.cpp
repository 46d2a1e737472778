#include "algpos/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <complex>

#include "algpos/errors.hpp"

namespace algpos {

Eigen::MatrixXd evaluate(const WitnessPolynomial& f, const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  const auto& c = f.coefficients;
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(n, n);
  if (c.empty()) return r;
  r = c.back() * Eigen::MatrixXd::Identity(n, n);
  for (auto it = c.rbegin() + 1; it != c.rend(); ++it)
    r = r * m + *it * Eigen::MatrixXd::Identity(n, n);
  return r;
}

namespace {

// Strictly one-signed test with normalization to the positive orthant.
bool one_signed_positive(Eigen::VectorXd& x) {
  const double mx = x.cwiseAbs().maxCoeff();
  if (mx == 0.0) return false;
  if (x.cwiseAbs().minCoeff() <= kOneSignedTol * mx) return false;
  bool all_pos = (x.array() > 0.0).all();
  bool all_neg = (x.array() < 0.0).all();
  if (all_neg) x = -x;
  return all_pos || all_neg;
}

std::vector<std::complex<double>> spectrum(const Eigen::MatrixXd& m) {
  Eigen::EigenSolver<Eigen::MatrixXd> es(m, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw NumericalFailure("eigensolver did not converge");
  std::vector<std::complex<double>> ev(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i) ev[i] = es.eigenvalues()(i);
  return ev;
}

}  // namespace

Verdict find_eigen_triple(const Eigen::MatrixXd& m) {
  Verdict out;
  const Eigen::Index n = m.rows();
  if (n == 0) {
    out.diagnostics = "empty matrix";
    return out;
  }
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1.0);
  auto ev = spectrum(m);

  std::vector<double> reals;
  for (const auto& z : ev)
    if (std::abs(z.imag()) <= 1e-8 * scale) reals.push_back(z.real());
  if (reals.empty()) {
    out.diagnostics = "no real eigenvalue";
    return out;
  }
  std::sort(reals.rbegin(), reals.rend());

  std::string first_failure;
  for (double lam : reals) {
    Eigen::MatrixXd shifted = m - lam * Eigen::MatrixXd::Identity(n, n);
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(shifted, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = std::max(sv(0), 1e-300);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > kRankTol * smax) ++rank;
    if (n > 1 && rank != n - 1) {
      if (first_failure.empty())
        first_failure = "geometric multiplicity != 1 at lambda=" + std::to_string(lam);
      continue;
    }
    Eigen::VectorXd u = svd.matrixV().col(n - 1);
    Eigen::VectorXd v = svd.matrixU().col(n - 1);
    if (n == 1) {
      u = Eigen::VectorXd::Ones(1);
      v = Eigen::VectorXd::Ones(1);
    }
    if (!one_signed_positive(u) || !one_signed_positive(v)) {
      if (first_failure.empty())
        first_failure = "eigenvectors not one-signed at lambda=" + std::to_string(lam);
      continue;
    }
    if (std::abs(v.dot(u)) <= kBiorthTol * u.norm() * v.norm()) {
      if (first_failure.empty())
        first_failure = "v^T u = 0 (defective) at lambda=" + std::to_string(lam);
      continue;
    }
    out.positive = true;
    out.lambda = lam;
    out.u = u;
    out.v = v;
    return out;
  }
  out.diagnostics =
      first_failure.empty() ? "no qualifying real eigenvalue" : first_failure;
  return out;
}

bool check_simple(const Eigen::MatrixXd& m, double lambda, const Eigen::VectorXd& u,
                  const Eigen::VectorXd& v) {
  const Eigen::Index n = m.rows();
  if (n == 1) return true;
  Eigen::MatrixXd shifted = m - lambda * Eigen::MatrixXd::Identity(n, n);
  if (numerical_rank(shifted) != n - 1) return false;
  return std::abs(v.dot(u)) > kBiorthTol * u.norm() * v.norm();
}

WitnessPolynomial witness_polynomial(const Eigen::MatrixXd& m, double lambda) {
  const Eigen::Index n = m.rows();
  auto ev = spectrum(m);

  // lambda must be an isolated root; a near-coincident second root means
  // the division below is meaningless.
  Eigen::Index lam_idx = 0;
  double best = std::abs(ev[0] - std::complex<double>(lambda));
  for (Eigen::Index i = 1; i < n; ++i) {
    double d = std::abs(ev[i] - std::complex<double>(lambda));
    if (d < best) {
      best = d;
      lam_idx = i;
    }
  }
  const double scale = std::max(m.cwiseAbs().maxCoeff(), 1.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (i == lam_idx) continue;
    if (std::abs(ev[i] - std::complex<double>(lambda)) < 1e-10 * scale)
      throw NumericallySingular("another eigenvalue coincides with lambda");
  }

  // Characteristic polynomial in product form over the full spectrum,
  // coefficients ascending.
  std::vector<std::complex<double>> p{1.0};
  for (const auto& root : ev) {
    p.push_back(0.0);
    for (size_t i = p.size() - 1; i > 0; --i) p[i] = p[i - 1] - root * p[i];
    p[0] = -root * p[0];
  }

  // Synthetic division by (x - lambda): p = (x - lambda) g + remainder.
  std::vector<double> g(n, 0.0);
  std::complex<double> carry = p[n];  // leading coefficient (= 1)
  for (Eigen::Index i = n - 1; i >= 0; --i) {
    g[i] = carry.real();
    carry = p[i] + lambda * carry;
  }

  WitnessPolynomial w{std::move(g)};
  Eigen::MatrixXd gm = evaluate(w, m);
  if (gm(0, 0) < 0.0)
    for (double& c : w.coefficients) c = -c;
  Eigen::MatrixXd fm = evaluate(w, m);
  if (!(fm.minCoeff() > 0.0))
    throw NotSimple("certificate evaluation is not entrywise positive");
  return w;
}

std::pair<Verdict, std::optional<WitnessPolynomial>> verify_algebraic_positivity(
    const Eigen::MatrixXd& m) {
  Verdict v = find_eigen_triple(m);
  if (!v.positive) return {v, std::nullopt};
  WitnessPolynomial w = witness_polynomial(m, v.lambda);
  return {v, w};
}

EigenTriple realize_base_cycle(const SignPattern& x) {
  const Eigen::Index n = x.order();
  EigenTriple t;
  if (n == 1) {
    if (x.at(0, 0) != Sign::Plus) throw ShapeMismatch("order-1 base must be [[+]]");
    t.M = Eigen::MatrixXd::Ones(1, 1);
    t.lambda = 1.0;
    t.u = Eigen::VectorXd::Ones(1);
    t.v = Eigen::VectorXd::Ones(1);
    return t;
  }
  std::vector<Eigen::Index> succ(n, -1);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (x.at(i, i) != Sign::Plus) throw ShapeMismatch("diagonal must be all +");
    for (Eigen::Index j = 0; j < n; ++j) {
      if (i == j) continue;
      if (x.at(i, j) == Sign::Plus) throw ShapeMismatch("off-diagonal + not allowed");
      if (x.at(i, j) == Sign::Minus) {
        if (succ[i] != -1) throw ShapeMismatch("vertex with two outgoing - arcs");
        succ[i] = j;
      }
    }
    if (succ[i] == -1) throw ShapeMismatch("vertex without outgoing - arc");
  }
  // The - arcs must form one full cycle.
  std::vector<bool> seen(n, false);
  Eigen::Index cur = 0;
  for (Eigen::Index step = 0; step < n; ++step) {
    if (seen[cur]) throw ShapeMismatch("- arcs do not form a single full cycle");
    seen[cur] = true;
    cur = succ[cur];
  }
  if (cur != 0) throw ShapeMismatch("- arcs do not close into a cycle");

  t.M = 2.0 * Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) t.M(i, succ[i]) = -1.0;
  t.lambda = 1.0;
  t.u = Eigen::VectorXd::Ones(n);
  t.v = Eigen::VectorXd::Ones(n);
  return t;
}

std::pair<EigenTriple, double> perturb_to_superpattern(const EigenTriple& t,
                                                       const SignPattern& a) {
  const SignPattern x = sign_of(t.M, 0.0);
  if (!is_subpattern(x, a)) throw NotSuperpattern("target is not a super-pattern");
  if (x == a) return {t, 0.0};

  const Eigen::Index n = t.order();
  Eigen::MatrixXd dir = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (x.at(i, j) == Sign::Zero && a.at(i, j) != Sign::Zero)
        dir(i, j) = a.at(i, j) == Sign::Plus ? 1.0 : -1.0;

  double eps = 1.0;
  for (int attempt = 0; attempt < 60; ++attempt, eps *= 0.5) {
    Eigen::MatrixXd cand = t.M + eps * dir;
    if (sign_of(cand, 0.0) != a) continue;
    Verdict verdict = find_eigen_triple(cand);
    if (!verdict.positive || verdict.lambda <= 0.0) continue;
    EigenTriple out{cand, verdict.lambda, verdict.u, verdict.v};
    if (!check_triple(out).ok) continue;
    return {out, eps};
  }
  throw EpsilonExhausted("no epsilon accepted after 60 halvings");
}

}  // namespace algpos
