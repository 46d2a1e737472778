#include "algpos/constructions.hpp"

#include <cmath>

namespace algpos {

namespace {

void require_valid_input(const EigenTriple& t) {
  const double scale = std::max(t.M.cwiseAbs().maxCoeff(), 1e-300);
  if (t.right_residual() > kResidualTol * scale || t.left_residual() > kResidualTol * scale)
    throw DegenerateInput("input triple residual too large");
  if (t.u.minCoeff() <= 0.0 || t.v.minCoeff() <= 0.0)
    throw DegenerateInput("input eigenvectors not strictly positive");
}

EigenTriple finish(EigenTriple b, const char* op) {
  TripleCheck c = check_triple(b);
  if (!c.ok) throw EngineInvariantBroken(std::string(op) + " output: " + c.reason);
  return b;
}

double pick_epsilon(const std::optional<double>& given, double bound, const char* op) {
  if (given) {
    if (!(*given > 0.0 && *given < 1.0))
      throw EpsilonOutOfRange(std::string(op) + ": epsilon must lie in (0,1)");
    return *given;
  }
  return 0.5 * std::min(1.0, bound);
}

}  // namespace

EigenTriple attach_cycle_negative(const EigenTriple& t, Eigen::Index j, Eigen::Index k) {
  require_valid_input(t);
  const Eigen::Index n = t.order();
  if (j < 0 || j >= n || k < 1) throw BadVariantIndices("attach_cycle_negative");
  if (t.lambda <= 0.0) throw DegenerateInput("lambda must be positive");
  const double a = t.M(0, j);
  if (!(a < 0.0)) throw SignPrecondition("M(0,j) must be negative");

  EigenTriple b;
  b.lambda = t.lambda;
  const Eigen::Index N = k + n;
  b.M = Eigen::MatrixXd::Zero(N, N);
  for (Eigen::Index p = 0; p < k; ++p) b.M(p, p) = t.lambda - a;
  for (Eigen::Index p = 0; p + 1 < k; ++p) b.M(p, p + 1) = a;
  b.M(k - 1, k + j) = a;
  b.M(k, 0) = a;
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = 0; q < n; ++q)
      if (!(p == 0 && q == j)) b.M(k + p, k + q) = t.M(p, q);

  b.u.resize(N);
  b.v.resize(N);
  for (Eigen::Index i = 0; i < k; ++i) {
    b.u(i) = t.u(j);
    b.v(i) = t.v(0);
  }
  b.u.tail(n) = t.u;
  b.v.tail(n) = t.v;
  return finish(std::move(b), "attach_cycle_negative");
}

EigenTriple attach_cycle_positive(const EigenTriple& t, Eigen::Index j, Eigen::Index k) {
  require_valid_input(t);
  const Eigen::Index n = t.order();
  if (j < 0 || j >= n || k < 1) throw BadVariantIndices("attach_cycle_positive");
  if (t.lambda <= 0.0) throw DegenerateInput("lambda must be positive");
  const double a = t.M(0, j);
  if (!(a > 0.0)) throw SignPrecondition("M(0,j) must be positive");

  EigenTriple b;
  b.lambda = t.lambda;
  const Eigen::Index N = k + n;
  b.M = Eigen::MatrixXd::Zero(N, N);
  for (Eigen::Index p = 0; p < k; ++p) b.M(p, p) = 2.0 * t.lambda;
  for (Eigen::Index p = 0; p + 1 < k; ++p) b.M(p, p + 1) = -t.lambda;
  b.M(k - 1, k + j) = -t.lambda;
  b.M(k, 0) = -a;
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = 0; q < n; ++q)
      if (!(p == 0 && q == j)) b.M(k + p, k + q) = t.M(p, q);
  b.M(k, k + j) = 2.0 * a;

  b.u.resize(N);
  b.v.resize(N);
  for (Eigen::Index i = 0; i < k; ++i) {
    b.u(i) = t.u(j);
    b.v(i) = a * t.v(0) / t.lambda;
  }
  b.u.tail(n) = t.u;
  b.v.tail(n) = t.v;
  return finish(std::move(b), "attach_cycle_positive");
}

EigenTriple split_leading_diagonal(const EigenTriple& t, Eigen::Index k,
                                   const Variant24& variant, double* epsilon_used) {
  require_valid_input(t);
  const Eigen::Index n = t.order();
  if (k < 2) throw BadVariantIndices("split_leading_diagonal: k must be >= 2");
  if (t.lambda <= 0.0) throw DegenerateInput("lambda must be positive");
  const double a11 = t.M(0, 0);
  if (!(a11 > 0.0)) throw SignPrecondition("M(0,0) must be positive");
  const double lam = t.lambda;

  EigenTriple b;
  b.lambda = lam;
  const Eigen::Index N = k + n - 1;
  b.M = Eigen::MatrixXd::Zero(N, N);

  // Shared skeleton: the cycle chain, the closing entry, and the old block.
  // Variants adjust individual entries afterwards.
  for (Eigen::Index p = 0; p + 1 < k; ++p) b.M(p, p + 1) = lam;
  b.M(k - 1, 0) = a11;
  for (Eigen::Index p = 0; p < n; ++p)      // old row p sits at position k-1+p
    for (Eigen::Index q = 1; q < n; ++q)    // old columns 1..n-1 at k-1+q
      b.M(k - 1 + p, k - 1 + q) = t.M(p, q);

  b.u.resize(N);
  b.v.resize(N);
  for (Eigen::Index i = 0; i + 1 < k; ++i) b.u(i) = t.u(0);
  b.u.tail(n) = t.u;

  double eps = 0.0;

  if (const auto* c = std::get_if<Variant24::Cycle>(&variant.v)) {
    const Eigen::Index j = c->j;
    if (j < 0 || j >= k) throw BadVariantIndices("Variant24::Cycle j");
    for (Eigen::Index p = 1; p < n; ++p) b.M(k - 1 + p, j) = t.M(p, 0);
    for (Eigen::Index i = 0; i < j; ++i) b.v(i) = a11 * t.v(0) / lam;
    for (Eigen::Index i = j; i + 1 < k; ++i) b.v(i) = t.v(0);
    b.v.tail(n) = t.v;
  } else if (const auto* c = std::get_if<Variant24::Chord>(&variant.v)) {
    const Eigen::Index j = c->j, s = c->s;
    if (j < 0 || j >= k - 1 || s < 0 || s >= k || s == j + 1)
      throw BadVariantIndices("Variant24::Chord indices");
    eps = pick_epsilon(c->epsilon, lam / a11, "split_leading_diagonal");
    b.M(j, j + 1) = eps * lam;
    b.M(j, s) = (1.0 - eps) * lam;
    for (Eigen::Index p = 1; p < n; ++p) b.M(k - 1 + p, s) = t.M(p, 0);
    double handoff;
    if (s <= j) {
      for (Eigen::Index i = 0; i < s; ++i) b.v(i) = a11 * t.v(0) / lam;
      for (Eigen::Index i = s; i <= j; ++i) b.v(i) = t.v(0) / eps;
      for (Eigen::Index i = j + 1; i + 1 < k; ++i) b.v(i) = t.v(0);
      handoff = (lam / eps - a11) * t.v(0);
    } else {  // s >= j + 2
      for (Eigen::Index i = 0; i <= j; ++i) b.v(i) = a11 * t.v(0) / lam;
      for (Eigen::Index i = j + 1; i < s; ++i) b.v(i) = eps * a11 * t.v(0) / lam;
      for (Eigen::Index i = s; i + 1 < k; ++i) b.v(i) = t.v(0);
      handoff = (lam - eps * a11) * t.v(0);
    }
    b.v.tail(n) = t.v;
    if (!(handoff > 0.0)) throw InequalityViolated("split_leading_diagonal chord handoff");
  } else {
    const auto& se = std::get<Variant24::SplitEntry>(variant.v);
    const Eigen::Index s = se.s;
    if (s < 1 || s >= k) throw BadVariantIndices("Variant24::SplitEntry s");
    eps = pick_epsilon(se.epsilon, lam / a11, "split_leading_diagonal");
    b.M(k - 1, 0) = eps * a11;
    b.M(k - 1, s) = (1.0 - eps) * a11;
    for (Eigen::Index p = 1; p < n; ++p) b.M(k - 1 + p, s) = t.M(p, 0);
    for (Eigen::Index i = 0; i < s; ++i) b.v(i) = eps * a11 * t.v(0) / lam;
    for (Eigen::Index i = s; i + 1 < k; ++i) b.v(i) = t.v(0);
    b.v.tail(n) = t.v;
    const double handoff = (lam - eps * a11) * t.v(0);
    if (!(handoff > 0.0)) throw InequalityViolated("split_leading_diagonal split handoff");
  }

  if (epsilon_used) *epsilon_used = eps;
  return finish(std::move(b), "split_leading_diagonal");
}

double expand_hypothesis_sum(const EigenTriple& t, Eigen::Index j, Eigen::Index k) {
  double s = t.M(0, j) * t.v(0);
  for (Eigen::Index p = k; p < t.order(); ++p) s += t.M(p, j) * t.v(p);
  return s;
}

EigenTriple expand_component(const EigenTriple& t, Eigen::Index m, Eigen::Index j,
                             Eigen::Index k, const Variant25& variant,
                             double* epsilon_used) {
  require_valid_input(t);
  const Eigen::Index n = t.order();
  if (m < 1 || j < 0 || j >= n || k < 1 || k > n)
    throw BadVariantIndices("expand_component dimensions");
  if (t.lambda <= 0.0) throw DegenerateInput("lambda must be positive");
  const double a = t.M(0, j);
  if (!(a > 0.0)) throw SignPrecondition("M(0,j) must be positive");
  const double S = expand_hypothesis_sum(t, j, k);
  if (!(S > 0.0)) throw HypothesisViolated("expand_component sum not positive");
  const double lam = t.lambda;

  EigenTriple b;
  b.lambda = lam;
  const Eigen::Index N = m + n;
  b.M = Eigen::MatrixXd::Zero(N, N);

  for (Eigen::Index p = 0; p + 1 < m; ++p) b.M(p, p + 1) = lam;
  b.M(m - 1, m + j) = lam;
  b.M(m, 0) = a;
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = 0; q < n; ++q) {
      if (p == 0 && q == j) continue;     // the subdivided entry
      if (p >= k && q == j) continue;     // relocated rows leave column j
      b.M(m + p, m + q) = t.M(p, q);
    }

  b.u.resize(N);
  b.v.resize(N);
  for (Eigen::Index i = 0; i < m; ++i) b.u(i) = t.u(j);
  b.u.tail(n) = t.u;
  b.v.tail(n) = t.v;

  double eps = 0.0;

  if (const auto* c = std::get_if<Variant25::Plain>(&variant.v)) {
    const Eigen::Index s = c->s;
    if (s < 0 || s >= m) throw BadVariantIndices("Variant25::Plain s");
    for (Eigen::Index p = k; p < n; ++p) b.M(m + p, s) = t.M(p, j);
    for (Eigen::Index i = 0; i < s; ++i) b.v(i) = a * t.v(0) / lam;
    for (Eigen::Index i = s; i < m; ++i) b.v(i) = S / lam;
  } else if (const auto* c = std::get_if<Variant25::Chord>(&variant.v)) {
    const Eigen::Index s = c->s, tt = c->t;
    if (s < 0 || s >= m - 1 || tt < 0 || tt >= m || tt == s + 1)
      throw BadVariantIndices("Variant25::Chord indices");
    eps = pick_epsilon(c->epsilon, S / (a * t.v(0)), "expand_component");
    b.M(s, s + 1) = eps * lam;
    b.M(s, tt) = (1.0 - eps) * lam;
    for (Eigen::Index p = k; p < n; ++p) b.M(m + p, tt) = t.M(p, j);
    double handoff;
    if (tt <= s) {
      for (Eigen::Index i = 0; i < tt; ++i) b.v(i) = a * t.v(0) / lam;
      for (Eigen::Index i = tt; i <= s; ++i) b.v(i) = S / (eps * lam);
      for (Eigen::Index i = s + 1; i < m; ++i) b.v(i) = S / lam;
      handoff = S / eps - a * t.v(0);
    } else {  // tt >= s + 2
      for (Eigen::Index i = 0; i <= s; ++i) b.v(i) = a * t.v(0) / lam;
      for (Eigen::Index i = s + 1; i < tt; ++i) b.v(i) = eps * a * t.v(0) / lam;
      for (Eigen::Index i = tt; i < m; ++i) b.v(i) = S / lam;
      handoff = S - eps * a * t.v(0);
    }
    if (!(handoff > 0.0)) throw InequalityViolated("expand_component chord handoff");
  } else {
    const auto& se = std::get<Variant25::SplitTerminal>(variant.v);
    const Eigen::Index tt = se.t;
    if (tt < 0 || tt >= m) throw BadVariantIndices("Variant25::SplitTerminal t");
    eps = pick_epsilon(se.epsilon, S / (a * t.v(0)), "expand_component");
    b.M(m - 1, m + j) = eps * lam;
    b.M(m - 1, tt) = (1.0 - eps) * lam;
    for (Eigen::Index p = k; p < n; ++p) b.M(m + p, tt) = t.M(p, j);
    for (Eigen::Index i = 0; i < tt; ++i) b.v(i) = a * t.v(0) / lam;
    for (Eigen::Index i = tt; i < m; ++i) b.v(i) = S / (eps * lam);
    const double handoff = S / eps - a * t.v(0);
    if (!(handoff > 0.0)) throw InequalityViolated("expand_component terminal handoff");
  }

  if (epsilon_used) *epsilon_used = eps;
  return finish(std::move(b), "expand_component");
}

EigenTriple contract_pair(const EigenTriple& t) {
  const Eigen::Index n = t.order();
  if (n < 2) throw ShapeMismatch("contract_pair needs order >= 2");
  if (t.M(0, 0) != 0.0 || t.M(1, 1) != 0.0) throw ShapeMismatch("leading diagonal not zero");
  for (Eigen::Index q = 2; q < n; ++q)
    if (t.M(0, q) != 0.0) throw ShapeMismatch("row 0 must vanish beyond column 1");
  for (Eigen::Index p = 2; p < n; ++p)
    if (t.M(p, 1) != 0.0) throw ShapeMismatch("column 1 must vanish beyond row 0");
  const double a01 = t.M(0, 1);
  if (a01 == 0.0) throw ZeroPivot("contract_pair pivot M(0,1)");
  require_valid_input(t);
  const double a10 = t.M(1, 0);

  EigenTriple b;
  b.lambda = t.lambda;
  const Eigen::Index N = n - 1;
  b.M = Eigen::MatrixXd::Zero(N, N);
  b.M(0, 0) = t.lambda + a10 - t.lambda * t.lambda / a01;
  for (Eigen::Index q = 2; q < n; ++q) b.M(0, q - 1) = t.M(1, q);
  for (Eigen::Index p = 2; p < n; ++p) b.M(p - 1, 0) = t.M(p, 0);
  for (Eigen::Index p = 2; p < n; ++p)
    for (Eigen::Index q = 2; q < n; ++q) b.M(p - 1, q - 1) = t.M(p, q);

  b.u.resize(N);
  b.v.resize(N);
  b.u(0) = t.u(0);
  b.v(0) = t.v(1);
  for (Eigen::Index i = 2; i < n; ++i) {
    b.u(i - 1) = t.u(i);
    b.v(i - 1) = t.v(i);
  }
  return finish(std::move(b), "contract_pair");
}

}  // namespace algpos
