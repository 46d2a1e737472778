#include <doctest.h>

#include <random>

#include "algpos/errors.hpp"
#include "algpos/sign_pattern.hpp"
#include "helpers.hpp"

using namespace algpos;

TEST_CASE("parse_pattern reads the text format") {
  SignPattern p = parse_pattern("0 +\n+ 0");
  CHECK(p.order() == 2);
  CHECK(p.at(0, 1) == Sign::Plus);
  CHECK(p.at(1, 0) == Sign::Plus);
  CHECK(p.at(0, 0) == Sign::Zero);
}

TEST_CASE("parse_pattern reads the order-11 fixture") {
  SignPattern x = testing::load_fixture("section4_X.sp");
  CHECK(x.order() == 11);
  CHECK(x.at(0, 6) == Sign::Minus);
  CHECK(x.at(8, 8) == Sign::Plus);
  CHECK(x.at(10, 9) == Sign::Plus);
  CHECK(x.nonzero_count() == 18);
}

TEST_CASE("parse_pattern rejects bad input") {
  CHECK_THROWS_AS(parse_pattern("0 x"), BadToken);
  CHECK_THROWS_AS(parse_pattern("0 +\n+ 0 0"), NonSquare);
  CHECK_THROWS_AS(parse_pattern("0 + 0\n+ 0 0"), NonSquare);
  CHECK_THROWS_AS(parse_pattern(""), NonSquare);
}

TEST_CASE("format round-trips") {
  SignPattern x = testing::load_fixture("section4_X.sp");
  CHECK(parse_pattern(format_pattern(x)) == x);
}

TEST_CASE("positive and negative parts") {
  SignPattern p = parse_pattern("0 +\n- 0");
  CHECK(positive_part(p) == parse_pattern("0 +\n0 0"));
  CHECK(negative_part(p) == parse_pattern("0 0\n- 0"));
  SignPattern zero = parse_pattern("0 0\n0 0");
  CHECK(positive_part(zero) == zero);
  SignPattern allplus = parse_pattern("+ +\n+ +");
  CHECK(negative_part(allplus) == zero);
}

TEST_CASE("b_matrix follows the sign algebra") {
  CHECK(b_matrix(parse_pattern("0 +\n+ 0")) == parse_pattern("0 +\n+ 0"));
  CHECK(b_matrix(parse_pattern("0 +\n- 0")) == parse_pattern("0 +\n0 0"));
  CHECK(b_matrix(parse_pattern("0 -\n- 0")) == parse_pattern("0 +\n+ 0"));
}

TEST_CASE("b_matrix entries stay in {+,0} and fix {+,0} patterns") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> sign(-1, 1);
  for (int trial = 0; trial < 50; ++trial) {
    SignPattern p(4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) p.set(i, j, static_cast<Sign>(sign(rng)));
    SignPattern b = b_matrix(p);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) CHECK(b.at(i, j) != Sign::Minus);
    CHECK(b_matrix(b) == b);
  }
}

TEST_CASE("is_subpattern is a partial order") {
  SignPattern a = parse_pattern("0 -\n+ 0");
  SignPattern zero = parse_pattern("0 0\n0 0");
  CHECK(is_subpattern(a, a));
  CHECK(is_subpattern(zero, a));
  CHECK_FALSE(is_subpattern(parse_pattern("0 +\n0 0"), a));
  CHECK_THROWS_AS(is_subpattern(zero, parse_pattern("0")), OrderMismatch);

  std::mt19937 rng(11);
  std::uniform_int_distribution<int> sign(-1, 1);
  for (int trial = 0; trial < 30; ++trial) {
    SignPattern p(3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) p.set(i, j, static_cast<Sign>(sign(rng)));
    SignPattern sub = p;
    sub.set(0, 0, Sign::Zero);
    sub.set(1, 2, Sign::Zero);
    SignPattern sub2 = sub;
    sub2.set(2, 1, Sign::Zero);
    CHECK(is_subpattern(sub, p));
    if (!(sub == p)) CHECK_FALSE(is_subpattern(p, sub));          // antisymmetry
    CHECK((is_subpattern(sub2, sub) && is_subpattern(sub2, p)));  // transitivity
  }
}

TEST_CASE("permute acts as a group action") {
  SignPattern a = parse_pattern("0 +\n- 0");
  std::vector<Eigen::Index> identity{0, 1}, swap{1, 0};
  CHECK(permute(a, identity) == a);
  CHECK(permute(a, swap) == parse_pattern("0 -\n+ 0"));
  CHECK(permute(permute(a, swap), swap) == a);
  CHECK_THROWS_AS(permute(a, std::vector<Eigen::Index>{0, 0}), BadPermutation);

  std::mt19937 rng(3);
  std::uniform_int_distribution<int> sign(-1, 1);
  for (int trial = 0; trial < 30; ++trial) {
    SignPattern p(4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) p.set(i, j, static_cast<Sign>(sign(rng)));
    std::vector<Eigen::Index> s{0, 1, 2, 3}, r{0, 1, 2, 3};
    std::shuffle(s.begin(), s.end(), rng);
    std::shuffle(r.begin(), r.end(), rng);
    std::vector<Eigen::Index> composed(4);
    for (int i = 0; i < 4; ++i) composed[i] = s[r[i]];
    CHECK(permute(permute(p, s), r) == permute(p, composed));
  }
}

TEST_CASE("sample_q and sign_of round-trip") {
  SignPattern p = parse_pattern("0 +\n+ 0");
  Eigen::MatrixXd m = sample_q(p);
  CHECK(m(0, 1) == 1.0);
  CHECK(m(1, 0) == 1.0);
  CHECK(m(0, 0) == 0.0);

  Eigen::MatrixXd mags = Eigen::MatrixXd::Constant(1, 1, 3.0);
  CHECK(sample_q(parse_pattern("+"), &mags)(0, 0) == 3.0);

  Eigen::MatrixXd bad = Eigen::MatrixXd::Constant(1, 1, -1.0);
  CHECK_THROWS_AS(sample_q(parse_pattern("+"), &bad), NonpositiveMagnitude);

  std::mt19937 rng(23);
  std::uniform_int_distribution<int> sign(-1, 1);
  for (int trial = 0; trial < 100; ++trial) {
    SignPattern q(5);
    for (int i = 0; i < 5; ++i)
      for (int j = 0; j < 5; ++j) q.set(i, j, static_cast<Sign>(sign(rng)));
    CHECK(sign_of(sample_q(q)) == q);
    CHECK(sign_of(sample_q_jittered(q, rng)) == q);
  }
}

TEST_CASE("sign_of applies the threshold") {
  Eigen::MatrixXd m(2, 2);
  m << 0, 1, -2, 0;
  CHECK(sign_of(m, 0.0) == parse_pattern("0 +\n- 0"));
  CHECK(sign_of(Eigen::MatrixXd::Zero(2, 2), 0.0) == parse_pattern("0 0\n0 0"));
  CHECK(sign_of(m, 1.5) == parse_pattern("0 0\n- 0"));
  CHECK(numeric_sign_threshold(m) == doctest::Approx(2e-12));
}
