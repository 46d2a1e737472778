#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "algpos/errors.hpp"

namespace algpos {

/// Entry of a sign pattern matrix.
enum class Sign : std::int8_t { Minus = -1, Zero = 0, Plus = 1 };

inline Sign sign_of_value(double x) {
  return x > 0 ? Sign::Plus : (x < 0 ? Sign::Minus : Sign::Zero);
}

inline char sign_char(Sign s) {
  switch (s) {
    case Sign::Plus: return '+';
    case Sign::Minus: return '-';
    default: return '0';
  }
}

/// Square matrix over {+, -, 0}. Stored as an Eigen int8 matrix with
/// values in {-1, 0, +1} so pattern algebra stays expression-friendly.
class SignPattern {
 public:
  using Storage = Eigen::Matrix<std::int8_t, Eigen::Dynamic, Eigen::Dynamic>;

  SignPattern() = default;
  explicit SignPattern(Eigen::Index n) : m_(Storage::Zero(n, n)) {}
  explicit SignPattern(Storage m);

  Eigen::Index order() const { return m_.rows(); }
  Sign at(Eigen::Index i, Eigen::Index j) const { return static_cast<Sign>(m_(i, j)); }
  void set(Eigen::Index i, Eigen::Index j, Sign s) { m_(i, j) = static_cast<std::int8_t>(s); }
  const Storage& raw() const { return m_; }

  bool operator==(const SignPattern& o) const { return m_ == o.m_; }
  bool operator!=(const SignPattern& o) const { return !(*this == o); }

  /// Entrywise negation (swaps + and -).
  SignPattern negated() const;

  Eigen::Index nonzero_count() const;

 private:
  Storage m_;
};

/// Parses the text format: one row per line, tokens +, -, 0 separated by
/// whitespace. Token count per line must equal the line count.
SignPattern parse_pattern(const std::string& text);

/// One row per line, single-character tokens separated by single spaces.
std::string format_pattern(const SignPattern& a);

/// A_+ : keeps the + entries, everything else becomes 0.
SignPattern positive_part(const SignPattern& a);

/// A_- : keeps the - entries, everything else becomes 0.
SignPattern negative_part(const SignPattern& a);

/// B_A = A_+ - (A_-)^T. Entries land in {+, 0}: a + of A_+ and a - of
/// (A_-)^T cannot occupy the same slot with conflicting outcome because
/// subtracting a - yields +.
SignPattern b_matrix(const SignPattern& a);

/// True iff every nonzero entry of x equals the corresponding entry of a.
bool is_subpattern(const SignPattern& x, const SignPattern& a);

/// P^T A P for the permutation sigma: result(i,j) = a(sigma(i), sigma(j)).
SignPattern permute(const SignPattern& a, const std::vector<Eigen::Index>& sigma);

/// Real matrix permutation with the same convention as permute() above.
Eigen::MatrixXd permute(const Eigen::MatrixXd& m, const std::vector<Eigen::Index>& sigma);
Eigen::VectorXd permute(const Eigen::VectorXd& v, const std::vector<Eigen::Index>& sigma);

/// Picks a representative of Q(A). Default magnitude 1.0 for every
/// nonzero; per-entry magnitudes may be supplied (must be positive where
/// the pattern is nonzero).
Eigen::MatrixXd sample_q(const SignPattern& a,
                         const Eigen::MatrixXd* magnitudes = nullptr);

/// Q(A) representative with magnitudes jittered uniformly in [0.5, 1.5].
Eigen::MatrixXd sample_q_jittered(const SignPattern& a, std::mt19937& rng);

/// Entry + if m_ij > tau, - if m_ij < -tau, else 0. tau >= 0.
SignPattern sign_of(const Eigen::MatrixXd& m, double tau = 0.0);

/// tau for noisy numeric paths: 1e-12 * max |entry|.
double numeric_sign_threshold(const Eigen::MatrixXd& m);

}  // namespace algpos
