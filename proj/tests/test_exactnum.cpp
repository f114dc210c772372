#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <functional>
#include <random>

#include "sgk/fixtures.hpp"
#include "sgk/groupmodel.hpp"

using namespace sgk;

namespace {

Scalar q(long a, long b = 1) { return Scalar::ratio(a, b); }

Scalar random_scalar(std::mt19937_64& rng) {
  auto r = [&] { return static_cast<long>(rng() % 19) - 9; };
  long d1 = static_cast<long>(rng() % 7) + 1, d2 = static_cast<long>(rng() % 7) + 1;
  return Scalar(Rational(r(), d1), Rational(r(), d2));
}

int brute_inversions(const std::vector<int>& seq) {
  int inv = 0;
  for (std::size_t i = 0; i < seq.size(); ++i)
    for (std::size_t j = i + 1; j < seq.size(); ++j)
      if (seq[i] > seq[j]) ++inv;
  return inv % 2 ? -1 : 1;
}

}  // namespace

TEST_CASE("scalar arithmetic examples") {
  Scalar i = Scalar::imag_unit();
  CHECK(scalar_arith(q(1, 2) + i, q(1, 2) - i, ArithOp::Add) == q(1));
  CHECK(scalar_arith(i, i, ArithOp::Mul) == q(-1));
  CHECK_THROWS_AS(scalar_arith(q(3, 4), q(0), ArithOp::Div), Error);
  try {
    scalar_arith(q(3, 4), q(0), ArithOp::Div);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Degenerate);
  }
}

TEST_CASE("scalar canonical form and text round trip") {
  CHECK(Scalar(Rational(6, 8)).re() == Rational(3, 4));
  CHECK(Scalar(Rational(2, -4)).to_string() == "-1/2");
  CHECK(Scalar::parse("3/4-1/2*i") == Scalar(Rational(3, 4), Rational(-1, 2)));
  CHECK(Scalar::parse(" i ") == Scalar::imag_unit());
  CHECK(Scalar::parse("-i") == -Scalar::imag_unit());
  CHECK(Scalar::parse("2+i") == q(2) + Scalar::imag_unit());
  CHECK_THROWS_AS(Scalar::parse("1/0"), Error);
  CHECK_THROWS_AS(Scalar::parse("abc"), Error);
  CHECK_THROWS_AS(Scalar::parse(""), Error);
  std::mt19937_64 rng(7);
  for (int k = 0; k < 200; ++k) {
    Scalar s = random_scalar(rng);
    CHECK(Scalar::parse(s.to_string()) == s);
  }
}

TEST_CASE("field axioms on random scalars") {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 300; ++k) {
    Scalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a * b == b * a);
    CHECK(a - a == q(0));
    if (!a.is_zero()) CHECK(a * a.inverse() == q(1));
    if (!b.is_zero()) CHECK((a / b) * b == a);
    // |a|^2 is real and equals a * conj(a)
    CHECK((a * a.conj()).is_real());
  }
}

TEST_CASE("powers") {
  CHECK(Scalar::imag_unit().pow(4) == q(1));
  CHECK(q(2).pow(-3) == q(1, 8));
  CHECK(q(5).pow(0) == q(1));
}

TEST_CASE("shuffle sign examples") {
  std::vector<int> l1{1}, r2{2}, l2{2}, r1{1}, l13{1, 3};
  CHECK(shuffle_sign(l1, r2) == 1);
  CHECK(shuffle_sign(l2, r1) == -1);
  CHECK(shuffle_sign(l13, r2) == brute_inversions({1, 3, 2}));
  CHECK(shuffle_sign(l13, r2) == -1);
}

TEST_CASE("shuffle sign rejects malformed parts") {
  std::vector<int> a{2, 1}, b{3}, c{1, 2}, d{2};
  CHECK_THROWS_AS(shuffle_sign(a, b), Error);
  CHECK_THROWS_AS(shuffle_sign(c, d), Error);
}

TEST_CASE("shuffle sign against brute-force inversion counts") {
  for (int r = 0; r <= 8; ++r) {
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
      std::vector<int> left, right;
      for (int k = 1; k <= r; ++k) ((mask >> (k - 1)) & 1 ? left : right).push_back(k);
      std::vector<int> seq = left;
      seq.insert(seq.end(), right.begin(), right.end());
      int s = shuffle_sign(left, right);
      CHECK(s == brute_inversions(seq));
      long ab = static_cast<long>(left.size() * right.size());
      CHECK(s * shuffle_sign(right, left) == sign_pow(ab));
    }
  }
}

TEST_CASE("permutation sign is multiplicative") {
  std::vector<int> p{1, 2, 3, 4, 5};
  std::mt19937_64 rng(3);
  for (int k = 0; k < 100; ++k) {
    std::vector<int> a = p, b = p;
    std::shuffle(a.begin(), a.end(), rng);
    std::shuffle(b.begin(), b.end(), rng);
    std::vector<int> ab(5);
    for (int i = 0; i < 5; ++i) ab[i] = a[b[i] - 1];
    CHECK(permutation_sign(ab) == permutation_sign(a) * permutation_sign(b));
    CHECK(permutation_sign(a) == brute_inversions(a));
  }
  std::vector<int> bad{1, 1, 2};
  CHECK_THROWS_AS(permutation_sign(bad), Error);
}

TEST_CASE("jet arithmetic") {
  Jet1 a(q(3), q(2)), b(q(5), q(-1));
  Jet1 p = a * b;
  CHECK(p.value() == q(15));
  CHECK(p.deriv() == q(3) * q(-1) + q(2) * q(5));
  Jet1 d = a / b;
  CHECK(d.value() == q(3, 5));
  CHECK(d.deriv() == (q(2) * q(5) - q(3) * q(-1)) / q(25));
  CHECK_THROWS_AS(Jet1(q(0), q(1)).inverse(), Error);
}

TEST_CASE("jet evaluation examples") {
  AlgebraPtr g = fixtures::gl_algebra(2, 0);
  GroupModel m = GroupModel::from_rows({"**", "**"}, g);
  ScalarMatrix e12(2, 2), e11(2, 2);
  e12(0, 1) = q(1);
  e11(0, 0) = q(1);
  JetMatrix p = jet_point(m.identity(), e12);
  Jet1 v11 = jet_eval(m, FunctionExpr::variable(m.coord(0, 0)), p);
  CHECK(v11 == Jet1(q(1), q(0)));
  Jet1 v12 = jet_eval(m, FunctionExpr::variable(m.coord(0, 1)), p);
  CHECK(v12 == Jet1(q(0), q(1)));
  // d/dt (2 + t)^{-1} at 0 = -1/4
  JetMatrix p2 = jet_point(fixtures::diag({q(2), q(1)}), e11);
  Jet1 dinv = jet_eval(m, FunctionExpr::variable(m.detinv_var(0)), p2);
  Scalar a = q(2), da = q(1);
  CHECK(dinv.value() == a.inverse());
  CHECK(dinv.deriv() == -da / (a * a));
  CHECK(dinv.deriv() == q(-1, 4));
}

TEST_CASE("jet evaluation at a singular point fails") {
  AlgebraPtr g = fixtures::gl_algebra(2, 0);
  GroupModel m = GroupModel::from_rows({"**", "**"}, g);
  ScalarMatrix z(2, 2), x(2, 2);
  x(0, 0) = q(1);
  CHECK_THROWS_AS(jet_eval(m, FunctionExpr::variable(m.detinv_var(0)), jet_point(z, x)), Error);
}

TEST_CASE("jet chain rule on random product expressions") {
  AlgebraPtr g = fixtures::gl_algebra(2, 0);
  GroupModel m = GroupModel::from_rows({"**", "**"}, g);
  std::mt19937_64 rng(5);
  auto leaf = [&] {
    switch (rng() % 3) {
      case 0: return FunctionExpr::variable(static_cast<FunctionExpr::Var>(rng() % 4));
      case 1: return FunctionExpr(Scalar(static_cast<long>(rng() % 5) - 2));
      default: return FunctionExpr::variable(m.detinv_var(0));
    }
  };
  std::function<FunctionExpr(int)> build = [&](int depth) -> FunctionExpr {
    if (depth == 0) return leaf();
    return rng() % 2 ? build(depth - 1) * build(depth - 1) : build(depth - 1) + build(depth - 1);
  };
  for (int k = 0; k < 60; ++k) {
    FunctionExpr a = build(static_cast<int>(rng() % 4)), b = build(static_cast<int>(rng() % 4));
    ScalarMatrix base(2, 2), dir(2, 2);
    base(0, 0) = q(static_cast<long>(rng() % 4) + 1);
    base(1, 1) = q(static_cast<long>(rng() % 4) + 1);
    base(0, 1) = q(static_cast<long>(rng() % 3));
    for (std::size_t i = 0; i < 4; ++i) dir(i / 2, i % 2) = q(static_cast<long>(rng() % 5) - 2);
    JetMatrix p = jet_point(base, dir);
    Jet1 ja = jet_eval(m, a, p), jb = jet_eval(m, b, p), jab = jet_eval(m, a * b, p);
    CHECK(jab.value() == ja.value() * jb.value());
    CHECK(jab.deriv() == ja.deriv() * jb.value() + ja.value() * jb.deriv());
  }
}
