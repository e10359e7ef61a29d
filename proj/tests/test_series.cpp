#include <gtest/gtest.h>

#include <random>

#include "seqinv/equations.hpp"
#include "seqinv/ntt.hpp"
#include "seqinv/sequences.hpp"
#include "seqinv/series.hpp"

using namespace seqinv;

namespace {

std::vector<u32> random_vec(std::mt19937& rng, std::size_t n, u32 p) {
  std::vector<u32> v(n);
  for (auto& x : v) x = rng() % p;
  return v;
}

PowerSeries random_series(std::mt19937& rng, Prime p, std::size_t n, bool zero_constant) {
  PowerSeries f(p, random_vec(rng, n, p));
  if (zero_constant) f[0] = 0;
  return f;
}

}  // namespace

TEST(Ntt, MatchesSchoolbook) {
  std::mt19937 rng(1);
  for (u32 p : {2u, 3u, 5u, 65521u}) {
    for (std::size_t n : {1u, 7u, 64u, 300u, 1500u}) {
      auto a = random_vec(rng, n, p), b = random_vec(rng, n + 3, p);
      const std::size_t out = 2 * n + 2;
      EXPECT_EQ(ntt::multiply(a, b, p, out), ntt::multiply_schoolbook(a, b, p, out)) << "p=" << p << " n=" << n;
    }
  }
}

TEST(PowerSeries, InverseTimesSelfIsOne) {
  std::mt19937 rng(2);
  Prime p(7);
  auto f = random_series(rng, p, 200, false);
  f[0] = 3;
  auto g = f * f.inverse();
  EXPECT_EQ(g[0], 1u);
  for (std::size_t i = 1; i < g.order(); ++i) EXPECT_EQ(g[i], 0u);
}

TEST(PowerSeries, FrobeniusPower) {
  std::mt19937 rng(3);
  Prime p(3);
  auto f = random_series(rng, p, 100, false);
  auto direct = f * f * f * f * f;
  EXPECT_EQ(power(f, 5).coeffs(), direct.coeffs());
}

TEST(Compose, FastMatchesReference) {
  std::mt19937 rng(4);
  for (u32 pv : {2u, 3u, 5u}) {
    Prime p(pv);
    auto f = random_series(rng, p, 300, false);
    auto g = random_series(rng, p, 300, true);
    EXPECT_EQ(compose(f, g).coeffs(), compose_reference(f, g).coeffs()) << "p=" << pv;
  }
}

TEST(Compose, ReferenceInverseUndoesSeries) {
  Prime p(3);
  auto t = thue_terms(p, 200).series();
  auto g = comp_inverse_ref(t);
  auto x = compose(t, g);
  EXPECT_EQ(x[0], 0u);
  EXPECT_EQ(x[1], 1u);
  for (std::size_t i = 2; i < x.order(); ++i) EXPECT_EQ(x[i], 0u) << i;
}

TEST(Compose, RejectsNonzeroConstant) {
  Prime p(2);
  PowerSeries f(p, std::vector<u32>{0, 1, 1});
  PowerSeries g(p, std::vector<u32>{1, 1, 0});
  EXPECT_THROW(compose(f, g), Error);
}

TEST(Residual, ThueSeriesSatisfiesItsEquation) {
  for (u32 pv : {2u, 3u, 5u, 7u}) {
    Prime p(pv);
    auto t = thue_terms(p, 2000).series();
    EXPECT_TRUE(residual(equations::thue(p), t).is_zero()) << "p=" << pv;
  }
  auto r = rudin_terms(RudinVariant::Plain, 2000).series();
  EXPECT_TRUE(residual(equations::rudin(), r).is_zero());
}

TEST(Residual, PerturbedSeriesFails) {
  Prime p(3);
  auto t = thue_terms(p, 500).series();
  t[100] = (t[100] + 1) % 3;
  EXPECT_FALSE(residual(equations::thue(p), t).is_zero());
}

TEST(Newton, RootMatchesRecurrence) {
  for (u32 pv : {2u, 3u, 5u}) {
    Prime p(pv);
    auto lifted = s_series_newton(p, 3000);
    auto rec = sw_terms(p, 3000).first;
    EXPECT_EQ(lifted.coeffs(), rec.values) << "p=" << pv;
    EXPECT_TRUE(residual(equations::thue_inverse_shifted(p), lifted).is_zero());
  }
}

TEST(Newton, RootSatisfiesRudinInverseEquations) {
  Prime two(2);
  auto u = newton_root(equations::rudin_zeroed_inverse(), series_x(two, 2), 4000);
  auto v = newton_root(equations::rudin_shifted_inverse(), series_x(two, 2), 4000);
  EXPECT_EQ(u.order(), 4000u);
  EXPECT_TRUE(residual(equations::rudin_zeroed_inverse(), u).is_zero());
  EXPECT_TRUE(residual(equations::rudin_shifted_inverse(), v).is_zero());
}

TEST(BivariatePoly, DerivativeDropsPowersDivisibleByP) {
  Prime p(3);
  auto P = BivariatePoly::term(p, 0, 3, 1) + BivariatePoly::term(p, 1, 2, 1);
  auto D = P.derivative_y();
  EXPECT_EQ(D.str(), BivariatePoly::term(p, 1, 1, 2).str());
}
