#include <gtest/gtest.h>

#include <cmath>

#include "hyperlip/error.hpp"
#include "hyperlip/poly.hpp"
#include "oracles.hpp"

namespace hyperlip {
namespace {

MonicPoly mp(std::vector<double> a) { return MonicPoly(std::move(a)); }

TEST(Eval, Examples) {
  EXPECT_EQ(eval(mp({0, -1}), 0.0), -1.0);
  EXPECT_EQ(eval(mp({0, -1}), 1.0), 0.0);
  EXPECT_EQ(eval(mp({0, -1, 0}), 2.0), 6.0);
}

TEST(Eval, NoHiddenNormalization) {
  const MonicPoly p = mp({3.0, -2.0, 0.5});
  EXPECT_EQ(p.degree(), 3);
  EXPECT_EQ(p.coeffs().size(), 3u);
  for (double z : {-2.0, -0.5, 0.0, 1.25, 4.0})
    EXPECT_DOUBLE_EQ(eval(p, z), z * z * z + 3 * z * z - 2 * z + 0.5);
}

TEST(MonicPoly, RejectsEmpty) {
  EXPECT_THROW(MonicPoly(std::vector<double>{}), Error);
}

TEST(Tschirnhausen, Examples) {
  auto t = tschirnhausen(mp({2, 1}));
  EXPECT_EQ(t.shift, 1.0);
  EXPECT_EQ(t.reduced, mp({0, 0}));

  t = tschirnhausen(mp({-2, 0}));
  EXPECT_EQ(t.shift, -1.0);
  EXPECT_EQ(t.reduced, mp({0, -1}));

  t = tschirnhausen(mp({3, 3, 1}));
  EXPECT_EQ(t.shift, 1.0);
  EXPECT_EQ(t.reduced, mp({0, 0, 0}));
}

TEST(Tschirnhausen, FirstCoefficientIsExactlyZero) {
  oracle::Gen g(11);
  for (int trial = 0; trial < 500; ++trial) {
    const MonicPoly p = mp(g.uniforms(g.integer(1, 8), -5, 5));
    EXPECT_EQ(tschirnhausen(p).reduced.coeff(1), 0.0);
  }
}

TEST(Tschirnhausen, ReducedRootsAreShiftedSourceRoots) {
  oracle::Gen g(12);
  for (int trial = 0; trial < 500; ++trial) {
    const auto roots = g.sorted_uniforms(g.integer(1, 8), -3, 3);
    const MonicPoly p(oracle::coeffs_from_roots(roots));
    const TschirnForm t = tschirnhausen(p);
    EXPECT_DOUBLE_EQ(t.shift, p.coeff(1) / p.degree());
    // Evaluate the reduced polynomial at every shifted root.
    const double scale = std::pow(1.0 + 6.0, p.degree());
    for (double r : roots) EXPECT_NEAR(t.reduced(r + t.shift), 0.0, 1e-9 * scale);
    // And compare coefficient-wise with the expansion of the shifted roots.
    std::vector<double> shifted;
    for (double r : roots) shifted.push_back(r + t.shift);
    const auto expect = oracle::coeffs_from_roots(shifted);
    for (int j = 2; j <= p.degree(); ++j) EXPECT_NEAR(t.reduced.coeff(j), expect[j - 1], 1e-9 * scale);
  }
}

TEST(Tschirnhausen, HyperbolicInputHasNonpositiveSecondCoefficient) {
  oracle::Gen g(13);
  for (int trial = 0; trial < 500; ++trial) {
    const auto roots = g.uniforms(g.integer(2, 8), -10, 10);
    EXPECT_LE(tschirnhausen(MonicPoly(oracle::coeffs_from_roots(roots))).reduced.coeff(2), 0.0);
  }
}

TEST(NewtonSums, Examples) {
  EXPECT_EQ(newton_sums(mp({0, -1}), 2), (std::vector<double>{0, 2}));
  EXPECT_EQ(newton_sums(mp({0, -1, 0}), 3), (std::vector<double>{0, 2, 0}));
  EXPECT_EQ(newton_sums(mp({-3, 2}), 2), (std::vector<double>{3, 5}));
}

TEST(NewtonSums, PastTheDegree) {
  // Roots 1, 2: s_3 = 9, s_4 = 17.
  EXPECT_EQ(newton_sums(mp({-3, 2}), 4), (std::vector<double>{3, 5, 9, 17}));
}

TEST(NewtonSums, RejectsNonpositiveK) {
  EXPECT_THROW(newton_sums(mp({0, -1}), 0), Error);
}

TEST(NewtonSums, AgreeWithDirectPowerSums) {
  oracle::Gen g(14);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = g.integer(1, 8);
    const auto roots = g.uniforms(n, -10, 10);
    const MonicPoly p(oracle::coeffs_from_roots(roots));
    const int k = g.integer(1, 10);
    const auto got = newton_sums(p, k);
    const auto want = oracle::power_sums(roots, k);
    for (int i = 0; i < k; ++i) {
      double mag = 0.0;
      for (double r : roots) mag += std::pow(std::abs(r), i + 1);
      EXPECT_NEAR(got[i], want[i], 1e-8 * std::max(1.0, mag)) << "i=" << i + 1;
    }
  }
}

TEST(CoefficientBounds, ReducedCoefficientsAndPowerSums) {
  oracle::Gen g(15);
  for (int trial = 0; trial < 2000; ++trial) {
    const int n = g.integer(2, 8);
    const auto roots = g.uniforms(n, -10, 10);
    const TschirnForm t = tschirnhausen(MonicPoly(oracle::coeffs_from_roots(roots)));
    const double a2 = std::abs(t.reduced.coeff(2));
    for (int i = 2; i <= n; ++i)
      EXPECT_LE(std::pow(std::abs(t.reduced.coeff(i)), 1.0 / i), std::sqrt(2.0) * std::sqrt(a2) * (1 + 1e-12) + 1e-12);
    const auto s = newton_sums(t.reduced, n);
    for (int i = 2; i <= n; ++i)
      EXPECT_LE(std::pow(std::abs(s[i - 1]), 1.0 / i), std::sqrt(std::abs(s[1])) * (1 + 1e-12) + 1e-12);
  }
}

TEST(NormalizeScale, Examples) {
  EXPECT_EQ(normalize_scale(tschirnhausen(mp({0, -4}))), mp({0, -1}));
  EXPECT_EQ(normalize_scale(tschirnhausen(mp({0, -1, 0}))), mp({0, -1, 0}));
  EXPECT_EQ(normalize_scale(tschirnhausen(mp({0, -0.25}))), mp({0, -1}));
}

TEST(NormalizeScale, DegenerateScale) {
  try {
    normalize_scale(tschirnhausen(mp({0, 0, 1})));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kDegenerateScale);
  }
}

TEST(NormalizeScale, SecondCoefficientIsExactlyMinusOne) {
  oracle::Gen g(16);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = g.integer(2, 8);
    const auto roots = g.uniforms(n, -10, 10);
    const TschirnForm t = tschirnhausen(MonicPoly(oracle::coeffs_from_roots(roots)));
    const MonicPoly q = normalize_scale(t);
    EXPECT_EQ(q.coeff(2), -1.0);
    EXPECT_EQ(q.coeff(1), 0.0);
    const double s = std::sqrt(std::abs(t.reduced.coeff(2)));
    for (int j = 3; j <= n; ++j)
      EXPECT_NEAR(q.coeff(j), t.reduced.coeff(j) / std::pow(s, j), 1e-12 * std::max(1.0, std::abs(q.coeff(j))));
  }
}

TEST(DerivativePoly, Examples) {
  EXPECT_EQ(derivative_poly(mp({0, -1})), Poly({0, 2}));
  EXPECT_EQ(derivative_poly(mp({0, -1, 0})), Poly({-1, 0, 3}));
  EXPECT_EQ(derivative_poly(mp({5})), Poly::constant(1));
}

TEST(Poly, ArithmeticAndComposition) {
  const Poly p({1, -2, 3});
  EXPECT_EQ(p.degree(), 2);
  EXPECT_EQ((p - p).degree(), -1);
  EXPECT_EQ(p * Poly({0, 1}), Poly({0, 1, -2, 3}));
  const Poly q = p.compose_affine(2.0, 1.0);
  for (double x : {-1.0, 0.0, 0.5, 2.0}) EXPECT_DOUBLE_EQ(q(x), p(2 * x + 1));
  const DivMod d = divmod(p * Poly({-1, 1}) + Poly::constant(4), Poly({-1, 1}));
  EXPECT_EQ(d.quotient, p);
  EXPECT_EQ(d.remainder, Poly::constant(4));
}

}  // namespace
}  // namespace hyperlip
