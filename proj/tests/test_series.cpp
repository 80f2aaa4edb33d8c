#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <vector>

#include "freesum/errors.hpp"
#include "freesum/series.hpp"

using namespace freesum;

namespace {

IntVector iv(std::initializer_list<long> xs) {
  IntVector v;
  for (long x : xs) v.push_back(Int(x));
  return v;
}

TruncatedSeries univariate(const std::vector<long>& coeffs) {
  TruncatedSeries s(1, static_cast<long>(coeffs.size()) - 1);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    s.add_term(iv({static_cast<long>(i)}), Int(coeffs[i]));
  return s;
}

std::vector<Int> coeffs(const TruncatedSeries& s, long n) {
  std::vector<Int> out;
  for (long i = 0; i <= n; ++i) out.push_back(s.coefficient(iv({i})));
  return out;
}

std::vector<Int> ints(std::initializer_list<long> xs) {
  std::vector<Int> v;
  for (long x : xs) v.push_back(Int(x));
  return v;
}

// Elements (a, k) of the monoid over the points {0, 1}: 0 <= a <= k.
std::vector<IntVector> m01_elements(long trunc) {
  std::vector<IntVector> out;
  for (long k = 0; k <= trunc; ++k)
    for (long a = 0; a <= k; ++a) out.push_back(iv({a, k}));
  return out;
}

}  // namespace

TEST_CASE("one is the multiplicative identity") {
  TruncatedSeries a(2, 6);
  a.add_term(iv({1, 2}), Int(3));
  a.add_term(iv({-1, 4}), Int(-2));
  CHECK(mul(a, TruncatedSeries::one(2, 6)) == a);
  CHECK(mul(TruncatedSeries::one(2, 6), a) == a);
}

TEST_CASE("squared geometric series counts pairs") {
  TruncatedSeries g = univariate({1, 1, 1, 1, 1, 1});
  CHECK(coeffs(mul(g, g), 5) == ints({1, 2, 3, 4, 5, 6}));
}

TEST_CASE("product truncates to the smaller degree") {
  TruncatedSeries a = univariate({1, 1, 1, 1, 1, 1});
  TruncatedSeries b = univariate({1, 1, 1});
  TruncatedSeries p = mul(a, b);
  CHECK(p.truncation_degree() == 2);
  CHECK(coeffs(p, 2) == ints({1, 2, 3}));
  CHECK_THROWS_AS(mul(a, TruncatedSeries::one(2, 5)), std::invalid_argument);
}

TEST_CASE("squared fine series counts pairs of monoid elements") {
  long t = 6;
  TruncatedSeries h(2, t);
  for (const auto& e : m01_elements(t)) h.add_term(e, Int(1));
  TruncatedSeries expect(2, t);
  for (const auto& x : m01_elements(t))
    for (const auto& y : m01_elements(t)) expect.add_term(add(x, y), Int(1));
  CHECK(mul(h, h) == expect);
}

TEST_CASE("mul commutes and associates on random series") {
  std::mt19937 rng(84520);
  std::uniform_int_distribution<long> first(-2, 3), last(0, 4), coef(-3, 3);
  for (int round = 0; round < 20; ++round) {
    TruncatedSeries s[3] = {TruncatedSeries(2, 4), TruncatedSeries(2, 5),
                            TruncatedSeries(2, 4)};
    for (auto& a : s)
      for (int i = 0; i < 6; ++i)
        a.add_term(iv({first(rng), last(rng)}), Int(coef(rng)));
    CHECK(mul(s[0], s[1]) == mul(s[1], s[0]));
    CHECK(mul(mul(s[0], s[1]), s[2]) == mul(s[0], mul(s[1], s[2])));
  }
}

TEST_CASE("one minus shift on the zero series is zero") {
  TruncatedSeries z(3, 5);
  CHECK(apply_one_minus_Tg(z, iv({1, 0, 2})) == z);
}

TEST_CASE("one minus shift telescopes the geometric series") {
  TruncatedSeries g = univariate({1, 1, 1, 1, 1});
  TruncatedSeries r = apply_one_minus_Tg(g, iv({1}));
  CHECK(coeffs(r, 4) == ints({1, 0, 0, 0, 0}));
  CHECK_THROWS_AS(apply_one_minus_Tg(g, iv({0})), SeriesError);
  CHECK_THROWS_AS(apply_one_minus_Tg(g, iv({1, 1})), std::invalid_argument);
}

TEST_CASE("killing the binomial relation recovers the square monoid") {
  // The free cover of the square monoid has one relation in degree
  // (1,1,2); stripping it from the multiplicity series must leave every
  // monoid element counted exactly once.
  long t = 8;
  std::vector<IntVector> gens = {iv({0, 0, 1}), iv({1, 0, 1}), iv({0, 1, 1}),
                                 iv({1, 1, 1})};
  TruncatedSeries cover(3, t);
  for (long c0 = 0; c0 <= t; ++c0)
    for (long c1 = 0; c0 + c1 <= t; ++c1)
      for (long c2 = 0; c0 + c1 + c2 <= t; ++c2)
        for (long c3 = 0; c0 + c1 + c2 + c3 <= t; ++c3) {
          IntVector cs = iv({c0, c1, c2, c3});
          IntVector e(3, Int(0));
          for (std::size_t i = 0; i < 4; ++i) e = add(e, scaled(cs[i], gens[i]));
          cover.add_term(e, Int(1));
        }
  TruncatedSeries monoid(3, t);
  for (long k = 0; k <= t; ++k)
    for (long a = 0; a <= k; ++a)
      for (long b = 0; b <= k; ++b) monoid.add_term(iv({a, b, k}), Int(1));
  CHECK(apply_one_minus_Tg(cover, iv({1, 1, 2})) == monoid);

  // Collapsing the fine square series to the standard grading gives the
  // squares, with rational form (1+T)/(1-T)^3.
  TruncatedSeries std_series = specialize(monoid);
  CHECK(coeffs(std_series, 4) == ints({1, 4, 9, 16, 25}));
  RationalSeries r = to_rational(std_series, 1, 2);
  CHECK(r == RationalSeries(ints({1, 1}), 1, 3));
  CHECK(to_string(r) == "(1+T)/(1-T)^3");
}

TEST_CASE("one minus shift is a termwise difference") {
  std::mt19937 rng(332211);
  std::uniform_int_distribution<long> first(-2, 3), last(0, 5), coef(-3, 3);
  for (int round = 0; round < 20; ++round) {
    TruncatedSeries a(2, 5);
    for (int i = 0; i < 7; ++i)
      a.add_term(iv({first(rng), last(rng)}), Int(coef(rng)));
    IntVector g = iv({first(rng), 1 + last(rng) / 2});
    TruncatedSeries r = apply_one_minus_Tg(a, g);
    TruncatedSeries expect(2, 5);
    for (const auto& [e, c] : a.terms()) {
      expect.add_term(e, c);
      expect.add_term(add(e, g), Int(-c));
    }
    CHECK(r == expect);
  }
}

TEST_CASE("recognizing simple rational series") {
  CHECK(to_rational(univariate({1, 1, 1, 1, 1, 1}), 1, 0) ==
        RationalSeries(ints({1}), 1, 1));
  CHECK(to_rational(univariate({1, 2, 3, 4, 5, 6}), 1, 1) ==
        RationalSeries(ints({1}), 1, 2));
  RationalSeries seg = to_rational(univariate({1, 4, 7, 10, 13, 16}), 1, 1);
  CHECK(seg == RationalSeries(ints({1, 2}), 1, 2));
  CHECK(coeffs(expand_rational(seg, 9), 9) ==
        ints({1, 4, 7, 10, 13, 16, 19, 22, 25, 28}));
}

TEST_CASE("recognition divides out shared factors") {
  // Claiming a triple pole for the geometric series still lands on the
  // canonical single-pole form.
  TruncatedSeries ones = univariate({1, 1, 1, 1, 1, 1, 1, 1, 1});
  CHECK(to_rational(ones, 1, 2) == to_rational(ones, 1, 0));
}

TEST_CASE("recognition rejects wrong denominators") {
  CHECK_THROWS_AS(to_rational(univariate({1, 2, 4, 8, 16, 32, 64, 128}), 1, 2),
                  SeriesError);
  // Counting function of [0, 1/2]: denominator two, not one.
  TruncatedSeries half =
      univariate({1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7});
  CHECK(to_rational(half, 2, 1) == RationalSeries(ints({1, 1}), 2, 2));
  CHECK(to_string(to_rational(half, 2, 1)) == "(1+T)/(1-T^2)^2");
  CHECK_THROWS_AS(to_rational(half, 1, 1), SeriesError);
  CHECK_THROWS_AS(to_rational(univariate({1, 2, 3}), 1, 1), SeriesError);
  CHECK_THROWS_AS(to_rational(TruncatedSeries(2, 6), 1, 0),
                  std::invalid_argument);
}

TEST_CASE("expansion of pinned rational forms") {
  CHECK(coeffs(expand_rational(RationalSeries(ints({1}), 1, 1), 3), 3) ==
        ints({1, 1, 1, 1}));
  CHECK(coeffs(expand_rational(RationalSeries(ints({1, 1}), 1, 3), 2), 2) ==
        ints({1, 4, 9}));
  CHECK(coeffs(expand_rational(RationalSeries(ints({1, 2}), 1, 2), 3), 3) ==
        ints({1, 4, 7, 10}));
  CHECK_THROWS_AS(expand_rational(RationalSeries(ints({1}), 1, 1), -1),
                  std::invalid_argument);
}

TEST_CASE("rational canonical form") {
  RationalSeries r(ints({1, -1}), 1, 2);
  CHECK(r.numerator == ints({1}));
  CHECK(r.pole_order == 1);
  RationalSeries z(ints({0, 0}), 1, 3);
  CHECK(z.numerator.empty());
  CHECK(z.pole_order == 0);
  CHECK(to_string(z) == "0");
  RationalSeries trimmed(ints({2, 1, 0, 0}), 2, 0);
  CHECK(trimmed.numerator == ints({2, 1}));
  CHECK_THROWS_AS(RationalSeries(ints({1}), 0, 1), std::invalid_argument);
  CHECK_THROWS_AS(RationalSeries(ints({1}), 1, -1), std::invalid_argument);
}

TEST_CASE("rational rendering") {
  CHECK(to_string(RationalSeries(ints({1}), 1, 1)) == "1/(1-T)");
  CHECK(to_string(RationalSeries(ints({1, 2}), 1, 2)) == "(1+2T)/(1-T)^2");
  CHECK(to_string(RationalSeries(ints({1, -1, 0, 2}), 1, 0)) == "1-T+2T^3");
  CHECK(to_string(RationalSeries(ints({0, 0, 2}), 1, 1)) == "2T^2/(1-T)");
  CHECK(to_string(RationalSeries(ints({0, -1}), 1, 1)) == "-T/(1-T)");
  CHECK(to_string(RationalSeries(ints({1, 3, 5, 4, 2}), 1, 4)) ==
        "(1+3T+5T^2+4T^3+2T^4)/(1-T)^4");
}

TEST_CASE("recognition and expansion are inverse on random rational series") {
  std::mt19937 rng(5157301);
  std::uniform_int_distribution<long> qd(1, 3), pd(1, 3), coef(-3, 3);
  for (int round = 0; round < 60; ++round) {
    long q = qd(rng), pole = pd(rng);
    std::vector<Int> num;
    std::uniform_int_distribution<long> len(1, q * pole + 1);
    long l = len(rng);
    for (long i = 0; i < l; ++i) num.push_back(Int(coef(rng)));
    RationalSeries r(num, q, pole);
    long n = q * pole + q + 2;
    TruncatedSeries a = expand_rational(r, n);
    RationalSeries back = to_rational(a, q, pole - 1);
    CHECK(back == r);
    CHECK(expand_rational(back, n) == a);
  }
}

TEST_CASE("truncating a series drops trailing terms") {
  TruncatedSeries g = univariate({1, 2, 3, 4, 5});
  TruncatedSeries t = g.truncated(2);
  CHECK(t.truncation_degree() == 2);
  CHECK(t == univariate({1, 2, 3}));
  CHECK(g.truncated(9).truncation_degree() == 4);
}
