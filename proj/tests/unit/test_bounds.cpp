#include <gtest/gtest.h>

#include <cmath>

#include "hyperlip/bounds.hpp"
#include "hyperlip/error.hpp"
#include "hyperlip/tracking.hpp"
#include "oracles.hpp"

namespace hyperlip {
namespace {

Poly P(std::vector<double> c) { return Poly(std::move(c)); }

const Interval kI0{-1, 1};
const Interval kI1{-2, 2};

CoeffCurve model() { return from_root_functions({P({0, 1}), P({0, -1})}, {-3, 3}).curve; }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kInvalidArgument;
}

// Roots c r_j(s t) on the domain scaled by 1/s.
GroundTruthFamily rescaled(const std::vector<Poly>& roots, Interval dom, double c, double s) {
  std::vector<Poly> out;
  for (const Poly& r : roots) out.push_back(r.compose_affine(s, 0.0) * c);
  return from_root_functions(out, {dom.lo / s, dom.hi / s});
}

TEST(BronshteinA, ModelCase) {
  const AQuantities a = bronshtein_A(model(), kI0, kI1);
  EXPECT_NEAR(a.A1, 2.0, 1e-12);
  EXPECT_NEAR(a.A2, std::sqrt(2.0), 1e-12);
  EXPECT_NEAR(a.A0, 12.0, 1e-12);
}

TEST(BronshteinA, ConstantCurve) {
  const auto c = from_root_functions({P({1}), P({-1})}, {-3, 3}).curve;
  const AQuantities a = bronshtein_A(c, kI0, kI1);
  EXPECT_EQ(a.A1, 1.0);
  EXPECT_EQ(a.A2, 0.0);
  EXPECT_EQ(a.A0, 6.0);
}

TEST(BronshteinA, VanishingSecondCoefficient) {
  const auto c = from_root_functions({Poly{}, Poly{}}, {-3, 3}).curve;
  const AQuantities a = bronshtein_A(c, kI0, kI1);
  EXPECT_EQ(a.A1, 0.0);
  EXPECT_EQ(a.A2, 0.0);
  EXPECT_EQ(a.A0, 0.0);
}

TEST(BronshteinA, BadIntervals) {
  EXPECT_EQ(kind_of([] { bronshtein_A(model(), {-1, 3}, kI1); }), ErrorKind::kBadIntervals);
  EXPECT_EQ(kind_of([] { bronshtein_A(model(), kI0, {-4, 4}); }), ErrorKind::kBadIntervals);
  EXPECT_EQ(kind_of([] { bronshtein_A(model(), {-2, 1}, kI1); }), ErrorKind::kBadIntervals);
}

TEST(BronshteinBound, Examples) {
  const BoundReport r = bronshtein_bound(model(), kI0, kI1);
  EXPECT_NEAR(r.bracket, 2.0, 1e-12);
  EXPECT_EQ(r.delta, 1.0);
  EXPECT_NEAR(r.sup_a2, 4.0, 1e-12);
  EXPECT_NEAR(r.lip_a2p, 2.0, 1e-12);
  EXPECT_EQ(r.A0, 6.0 * std::max(r.A1, r.A2));
  EXPECT_FALSE(r.alpha_I.has_value());

  const auto c = from_root_functions({P({1}), P({-1})}, {-3, 3}).curve;
  EXPECT_EQ(bronshtein_bound(c, kI0, kI1).bracket, 1.0);
}

TEST(BronshteinBound, RootScalingIsHomogeneous) {
  oracle::Gen g(41);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = g.integer(2, 5);
    std::vector<Poly> roots;
    for (int j = 0; j < n; ++j) roots.push_back(P(g.uniforms(g.integer(1, 5), -2, 2)));
    const Interval dom{-1, 1};
    const BoundReport base = bronshtein_bound(from_root_functions(roots, dom).curve, {-0.5, 0.5}, dom);
    for (double c : {3.0, 0.25}) {
      const BoundReport s = bronshtein_bound(rescaled(roots, dom, c, 1.0).curve, {-0.5, 0.5}, dom);
      EXPECT_NEAR(s.A1, c * base.A1, 1e-12 * c * base.A1);
      EXPECT_NEAR(s.A2, c * base.A2, 1e-12 * c * base.A2);
      EXPECT_NEAR(s.A0, c * base.A0, 1e-12 * c * base.A0);
      EXPECT_NEAR(s.bracket, c * base.bracket, 1e-12 * c * base.bracket);
    }
  }
}

TEST(BronshteinBound, TimeScalingIsHomogeneous) {
  oracle::Gen g(42);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = g.integer(2, 5);
    std::vector<Poly> roots;
    for (int j = 0; j < n; ++j) roots.push_back(P(g.uniforms(g.integer(1, 5), -2, 2)));
    const Interval dom{-1, 1};
    const BoundReport base = bronshtein_bound(from_root_functions(roots, dom).curve, {-0.5, 0.5}, dom);
    for (double s : {2.0, 0.5}) {
      const BoundReport r =
          bronshtein_bound(rescaled(roots, dom, 1.0, s).curve, {-0.5 / s, 0.5 / s}, {-1 / s, 1 / s});
      EXPECT_NEAR(r.bracket, s * base.bracket, 1e-10 * s * base.bracket);
    }
  }
}

TEST(BronshteinBound, CoarseFormsBoundTheBracketConsistently) {
  oracle::Gen g(43);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = g.integer(2, 5);
    std::vector<Poly> roots;
    for (int j = 0; j < n; ++j) roots.push_back(P(g.uniforms(g.integer(1, 5), -2, 2)));
    const BoundReport r = bronshtein_bound(from_root_functions(roots, {-1, 1}).curve, {-0.5, 0.5}, {-1, 1});
    EXPECT_GE(r.coarse_affine, 1.0);
    EXPECT_LE(r.coarse_root, r.coarse_affine);
    // delta = 1/2, so each bracket term is at most 2 max_i ||a~_i||^{1/i}.
    EXPECT_LE(r.bracket, 2.0 * std::sqrt(2.0) * r.coarse_root + 1e-12);
  }
}

TEST(CheckAssumption, Examples) {
  const AssumptionCheck ok = check_assumption(model(), kI0, kI1, 12.0, 0.5);
  EXPECT_TRUE(ok.a1_ok);
  EXPECT_TRUE(ok.a2_ratio_ok);
  EXPECT_TRUE(ok.deriv_ok);
  EXPECT_TRUE(std::isfinite(ok.c_hat));
  EXPECT_NEAR(ok.radius, 0.5 / 12.0, 1e-15);

  const AssumptionCheck tiny = check_assumption(model(), kI0, kI1, 1e8, 0.5);
  EXPECT_TRUE(tiny.a1_ok);
  EXPECT_TRUE(tiny.a2_ratio_ok);
  EXPECT_LT(tiny.radius, 1e-8);

  const AssumptionCheck wide = check_assumption(model(), kI0, kI1, 0.1, 0.5);
  EXPECT_FALSE(wide.a1_ok);
  EXPECT_NEAR(wide.radius, 5.0, 1e-12);

  EXPECT_EQ(kind_of([] { check_assumption(model(), kI0, kI1, 12.0, 0.0); }), ErrorKind::kZeroA2);
}

TEST(CheckAssumption, RatioFlagMatchesDirectSampling) {
  for (double A : {0.5, 1.0, 2.0, 6.0, 12.0}) {
    for (double t0 : {-0.9, -0.3, 0.2, 0.8}) {
      const AssumptionCheck c = check_assumption(model(), kI0, kI1, A, t0);
      // a~_2 = -t^2, ratio (t/t0)^2 on t0 +- |t0|/A, extremes at the ends.
      const double r = std::abs(t0) / A;
      const double lo = std::max(-3.0, t0 - r), hi = std::min(3.0, t0 + r);
      double mn = std::min(lo * lo, hi * hi) / (t0 * t0);
      if (lo <= 0.0 && hi >= 0.0) mn = 0.0;
      const double mx = std::max(lo * lo, hi * hi) / (t0 * t0);
      EXPECT_EQ(c.a2_ratio_ok, mn >= 0.5 && mx <= 2.0) << "A=" << A << " t0=" << t0;
    }
  }
}

TEST(CheckAssumption, A0PassesAtEveryGridPoint) {
  oracle::Gen g(44);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = g.integer(2, 5);
    std::vector<Poly> roots;
    for (int j = 0; j < n; ++j) roots.push_back(P(g.uniforms(g.integer(1, 5), -2, 2)));
    const auto curve = from_root_functions(roots, {-1, 1}).curve;
    const Interval I0{-0.5, 0.5}, I1{-1, 1};
    const double A0 = bronshtein_A(curve, I0, I1).A0;
    for (double t0 : sample_grid(I0, 32)) {
      if (curve.tschirn(2)(t0) == 0.0) continue;
      const AssumptionCheck c = check_assumption(curve, I0, I1, A0, t0);
      EXPECT_TRUE(c.a1_ok);
      EXPECT_TRUE(c.a2_ratio_ok) << "worst ratio " << c.worst_ratio;
      EXPECT_TRUE(std::isfinite(c.c_hat));
    }
  }
}

TEST(Alpha, Examples) {
  const double a[] = {0, 0, 1};
  EXPECT_EQ(alpha_from_roots(a, 2).value, 1.0);
  const double b[] = {0, 0.1, 1, 1.1};
  EXPECT_NEAR(alpha_from_roots(b, 2).value, 1.1, 1e-15);
  const double c[] = {0, 0, 0};
  EXPECT_TRUE(alpha_from_roots(c, 2).unbounded);
}

TEST(Alpha, OverGrid) {
  const auto curve = from_root_functions({P({0, 1}), P({1, 1}), P({2, 1})}, {-1, 2}).curve;
  const auto grid = sample_grid({-1, 2}, 64);
  const AlphaEstimate a = alpha_uniformity(curve, grid, 2);
  EXPECT_FALSE(a.unbounded);
  EXPECT_NEAR(a.value, 1.0, 1e-12);
  EXPECT_THROW(alpha_uniformity(curve, grid, 3), Error);
  EXPECT_THROW(alpha_uniformity(curve, grid, 1), Error);
}

TEST(LowerMultiplicity, Examples) {
  const auto curve = from_root_functions({P({0, 1}), P({1, 1}), P({2, 1})}, {-1, 2}).curve;
  const BoundReport r = bound_lower_multiplicity(curve, {0, 1}, {-1, 2}, 2);
  EXPECT_TRUE(std::isfinite(r.bracket));
  EXPECT_NEAR(r.m2, 1.0, 1e-12);
  EXPECT_NEAR(r.alpha_I.value(), 1.0, 1e-12);
  EXPECT_NEAR(r.bracket, 1.0, 1e-12);
  // Ground-truth root Lipschitz constant is 1.
  const auto tracks = track_ordered(curve, sample_grid({0, 1}, 256));
  EXPECT_NEAR(empirical_lipschitz(tracks).overall, 1.0, 1e-9);

  EXPECT_EQ(bound_lower_multiplicity(model(), kI0, kI1, 2), bronshtein_bound(model(), kI0, kI1));

  const auto collide = from_root_functions({P({0, 1}), P({0, 2}), P({0, 3})}, {-3, 3}).curve;
  EXPECT_EQ(kind_of([&] { bound_lower_multiplicity(collide, kI0, kI1, 2); }), ErrorKind::kDegenerateM2);
}

TEST(LowerMultiplicity, ScalesWithRoots) {
  const std::vector<Poly> roots{P({0, 1}), P({1, 0, 1}), P({2.5, -1})};
  const BoundReport base = bound_lower_multiplicity(from_root_functions(roots, {-1, 1}).curve, {-0.5, 0.5}, {-1, 1}, 2);
  const BoundReport s = bound_lower_multiplicity(rescaled(roots, {-1, 1}, 4.0, 1.0).curve, {-0.5, 0.5}, {-1, 1}, 2);
  EXPECT_NEAR(s.bracket, 4.0 * base.bracket, 1e-10 * s.bracket);
  EXPECT_EQ(s.A0, 6.0 * std::max(s.A1, s.A2));
}

TEST(Interpolation, Examples) {
  EXPECT_EQ(interpolation_coeff_bound(1, 1, 1), (std::vector<double>{4, 4}));
  EXPECT_EQ(interpolation_coeff_bound(1, 1, 2), (std::vector<double>{4, 2}));
  // 2x - 1 is bounded by 1 on [0, 1].
  EXPECT_LE(2.0, interpolation_coeff_bound(1, 1, 1)[1]);
  EXPECT_THROW(interpolation_coeff_bound(2, 0, 1), Error);
}

TEST(Glaeser, Examples) {
  const GlaeserCheck a = glaeser_bound(P({0, 0, 1}), 1.0, std::sqrt(2.0), {-3, 3});
  EXPECT_EQ(a.lhs, 2.0);
  EXPECT_NEAR(a.rhs, 2.0 * std::sqrt(2.0), 1e-15);
  EXPECT_TRUE(a.holds());

  const GlaeserCheck b = glaeser_bound(P({0, 0, 1}), 0.0, std::sqrt(2.0), {-3, 3});
  EXPECT_EQ(b.lhs, 0.0);
  EXPECT_EQ(b.rhs, 0.0);
  EXPECT_TRUE(b.holds());

  const GlaeserCheck c = glaeser_bound(P({1}), 0.3, 1.0, {-3, 3});
  EXPECT_EQ(c.lhs, 0.0);
  EXPECT_EQ(c.rhs, 2.0);
}

TEST(Glaeser, HypothesisFailures) {
  EXPECT_EQ(kind_of([] { glaeser_bound(P({0, 1}), 0.5, 1.0, {-1, 1}); }), ErrorKind::kHypothesisFailed);
  EXPECT_EQ(kind_of([] { glaeser_bound(P({0, 0, 1}), 1.0, 0.1, {-3, 3}); }), ErrorKind::kHypothesisFailed);
  EXPECT_EQ(kind_of([] { glaeser_bound(P({0, 0, 1}), 1.0, 1.0, {-3, 3}); }), ErrorKind::kHypothesisFailed);
  EXPECT_FALSE(check_glaeser(P({0, 0, 1}), 1.0, 1.0, {-3, 3}).hypotheses_ok);
}

TEST(Taylor, Examples) {
  EXPECT_EQ(taylor_constant(1), 1.0);
  EXPECT_EQ(taylor_constant(2), 8.0);
  const auto b = taylor_derivative_bounds(P({0, 0, 1}), {-1, 1}, 2);
  EXPECT_NEAR(b[0], 36.0, 1e-12);
  for (double x : taylor_derivative_bounds(Poly{}, {-1, 1}, 3)) EXPECT_EQ(x, 0.0);
  const auto c = taylor_derivative_bounds(P({0, 1}), {0, 1}, 1);
  EXPECT_NEAR(c[0], 2.0, 1e-15);
  EXPECT_THROW(taylor_derivative_bounds(P({0, 1}), {1, 1}, 1), Error);
}

TEST(Taylor, NeverViolatedOnRandomPolynomials) {
  oracle::Gen g(45);
  for (int trial = 0; trial < 500; ++trial) {
    const auto c = g.uniforms(g.integer(1, 7), -3, 3);
    const double lo = g.uniform(-2, 1), hi = lo + g.uniform(0.05, 3);
    const int m = g.integer(1, 6);
    const auto bounds = taylor_derivative_bounds(P(c), {lo, hi}, m);
    for (int k = 1; k <= m; ++k)
      EXPECT_LE(oracle::dense_sup_poly(oracle::derivative_ascending(c, k), lo, hi, 2000), bounds[k - 1] * (1 + 1e-12));
  }
}

}  // namespace
}  // namespace hyperlip
