#include "algpos/sign_pattern.hpp"

#include <cmath>
#include <sstream>

namespace algpos {

SignPattern::SignPattern(Storage m) : m_(std::move(m)) {
  if (m_.rows() != m_.cols())
    throw NonSquare("pattern storage is " + std::to_string(m_.rows()) + "x" +
                    std::to_string(m_.cols()));
}

SignPattern SignPattern::negated() const {
  SignPattern r = *this;
  r.m_ = -r.m_;
  return r;
}

Eigen::Index SignPattern::nonzero_count() const {
  Eigen::Index c = 0;
  for (Eigen::Index i = 0; i < m_.rows(); ++i)
    for (Eigen::Index j = 0; j < m_.cols(); ++j)
      if (m_(i, j) != 0) ++c;
  return c;
}

SignPattern parse_pattern(const std::string& text) {
  std::vector<std::vector<Sign>> rows;
  std::istringstream lines(text);
  std::string line;
  Eigen::Index lineno = 0;
  while (std::getline(lines, line)) {
    ++lineno;
    std::istringstream toks(line);
    std::string tok;
    std::vector<Sign> row;
    while (toks >> tok) {
      Sign s;
      if (tok == "+")
        s = Sign::Plus;
      else if (tok == "-")
        s = Sign::Minus;
      else if (tok == "0")
        s = Sign::Zero;
      else
        throw BadToken("'" + tok + "' at (" + std::to_string(lineno) + "," +
                       std::to_string(row.size() + 1) + ")");
      row.push_back(s);
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  if (n == 0) throw NonSquare("empty pattern");
  for (Eigen::Index i = 0; i < n; ++i)
    if (static_cast<Eigen::Index>(rows[i].size()) != n)
      throw NonSquare("row " + std::to_string(i + 1) + " has " +
                      std::to_string(rows[i].size()) + " tokens, expected " +
                      std::to_string(n));
  SignPattern p(n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) p.set(i, j, rows[i][j]);
  return p;
}

std::string format_pattern(const SignPattern& a) {
  std::string out;
  const Eigen::Index n = a.order();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      if (j) out += ' ';
      out += sign_char(a.at(i, j));
    }
    out += '\n';
  }
  return out;
}

SignPattern positive_part(const SignPattern& a) {
  SignPattern r(a.order());
  for (Eigen::Index i = 0; i < a.order(); ++i)
    for (Eigen::Index j = 0; j < a.order(); ++j)
      if (a.at(i, j) == Sign::Plus) r.set(i, j, Sign::Plus);
  return r;
}

SignPattern negative_part(const SignPattern& a) {
  SignPattern r(a.order());
  for (Eigen::Index i = 0; i < a.order(); ++i)
    for (Eigen::Index j = 0; j < a.order(); ++j)
      if (a.at(i, j) == Sign::Minus) r.set(i, j, Sign::Minus);
  return r;
}

SignPattern b_matrix(const SignPattern& a) {
  const Eigen::Index n = a.order();
  SignPattern r(n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (a.at(i, j) == Sign::Plus || a.at(j, i) == Sign::Minus)
        r.set(i, j, Sign::Plus);
  return r;
}

bool is_subpattern(const SignPattern& x, const SignPattern& a) {
  if (x.order() != a.order())
    throw OrderMismatch(std::to_string(x.order()) + " vs " + std::to_string(a.order()));
  for (Eigen::Index i = 0; i < x.order(); ++i)
    for (Eigen::Index j = 0; j < x.order(); ++j)
      if (x.at(i, j) != Sign::Zero && x.at(i, j) != a.at(i, j)) return false;
  return true;
}

namespace {
void check_permutation(Eigen::Index n, const std::vector<Eigen::Index>& sigma) {
  if (static_cast<Eigen::Index>(sigma.size()) != n)
    throw BadPermutation("length " + std::to_string(sigma.size()) + " for order " +
                         std::to_string(n));
  std::vector<bool> seen(n, false);
  for (Eigen::Index v : sigma) {
    if (v < 0 || v >= n || seen[v]) throw BadPermutation("not a bijection");
    seen[v] = true;
  }
}
}  // namespace

SignPattern permute(const SignPattern& a, const std::vector<Eigen::Index>& sigma) {
  const Eigen::Index n = a.order();
  check_permutation(n, sigma);
  SignPattern r(n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) r.set(i, j, a.at(sigma[i], sigma[j]));
  return r;
}

Eigen::MatrixXd permute(const Eigen::MatrixXd& m, const std::vector<Eigen::Index>& sigma) {
  const Eigen::Index n = m.rows();
  check_permutation(n, sigma);
  Eigen::MatrixXd r(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) r(i, j) = m(sigma[i], sigma[j]);
  return r;
}

Eigen::VectorXd permute(const Eigen::VectorXd& v, const std::vector<Eigen::Index>& sigma) {
  const Eigen::Index n = v.size();
  check_permutation(n, sigma);
  Eigen::VectorXd r(n);
  for (Eigen::Index i = 0; i < n; ++i) r(i) = v(sigma[i]);
  return r;
}

Eigen::MatrixXd sample_q(const SignPattern& a, const Eigen::MatrixXd* magnitudes) {
  const Eigen::Index n = a.order();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      if (a.at(i, j) == Sign::Zero) continue;
      double mag = 1.0;
      if (magnitudes) {
        mag = (*magnitudes)(i, j);
        if (!(mag > 0.0)) throw NonpositiveMagnitude("at (" + std::to_string(i + 1) + "," +
                                                     std::to_string(j + 1) + ")");
      }
      m(i, j) = (a.at(i, j) == Sign::Plus) ? mag : -mag;
    }
  return m;
}

Eigen::MatrixXd sample_q_jittered(const SignPattern& a, std::mt19937& rng) {
  std::uniform_real_distribution<double> jitter(0.5, 1.5);
  const Eigen::Index n = a.order();
  Eigen::MatrixXd mags(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) mags(i, j) = jitter(rng);
  return sample_q(a, &mags);
}

SignPattern sign_of(const Eigen::MatrixXd& m, double tau) {
  if (m.rows() != m.cols()) throw NonSquare("sign_of input");
  SignPattern r(m.rows());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (m(i, j) > tau)
        r.set(i, j, Sign::Plus);
      else if (m(i, j) < -tau)
        r.set(i, j, Sign::Minus);
    }
  return r;
}

double numeric_sign_threshold(const Eigen::MatrixXd& m) {
  return 1e-12 * m.cwiseAbs().maxCoeff();
}

}  // namespace algpos
