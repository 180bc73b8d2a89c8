#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "hyperlip/error.hpp"
#include "hyperlip/realroots.hpp"
#include "oracles.hpp"

namespace hyperlip {
namespace {

MonicPoly mp(std::vector<double> a) { return MonicPoly(std::move(a)); }

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kInvalidArgument;
}

TEST(IsHyperbolic, Examples) {
  EXPECT_FALSE(is_hyperbolic(mp({0, 1})).is_hyperbolic);
  const auto c = is_hyperbolic(mp({0, -1}));
  EXPECT_TRUE(c.is_hyperbolic);
  EXPECT_EQ(c.real_root_count, 2);
  const auto d = is_hyperbolic(mp({0, -3, 2}));
  EXPECT_TRUE(d.is_hyperbolic);
  EXPECT_EQ(d.real_root_count, 3);
}

TEST(IsHyperbolic, CountMatchesDegreeIffHyperbolic) {
  oracle::Gen g(21);
  for (int trial = 0; trial < 1000; ++trial) {
    const MonicPoly p = mp(g.uniforms(g.integer(1, 7), -3, 3));
    const auto c = is_hyperbolic(p);
    EXPECT_EQ(c.is_hyperbolic, c.real_root_count == p.degree());
    EXPECT_LE(c.real_root_count, p.degree());
  }
}

TEST(IsHyperbolic, MultipleRoots) {
  const double r[] = {2, 2, 2, -1, -1};
  EXPECT_TRUE(is_hyperbolic(MonicPoly::from_roots(r)).is_hyperbolic);
  EXPECT_TRUE(is_hyperbolic(mp({0, 0, 0, 0})).is_hyperbolic);
  // (Z^2 + 1)^2 has no real roots.
  EXPECT_FALSE(is_hyperbolic(mp({0, 2, 0, 1})).is_hyperbolic);
  EXPECT_EQ(is_hyperbolic(mp({0, 2, 0, 1})).real_root_count, 0);
  // (Z - 1)^2 (Z^2 + 1): two of four.
  const MonicPoly q = mp({-2, 1}) * mp({0, 1});
  EXPECT_EQ(is_hyperbolic(q).real_root_count, 2);
}

TEST(OrderedRoots, Examples) {
  EXPECT_EQ(ordered_roots(mp({0, -1, 0})).values, (std::vector<double>{-1, 0, 1}));
  const auto r = ordered_roots(mp({0, -3, 2})).values;
  ASSERT_EQ(r.size(), 3u);
  EXPECT_NEAR(r[0], -2, 1e-12);
  EXPECT_NEAR(r[1], 1, 1e-7);
  EXPECT_NEAR(r[2], 1, 1e-7);
  EXPECT_EQ(kind_of([] { ordered_roots(mp({-2, 2})); }), ErrorKind::kNotHyperbolic);
}

TEST(OrderedRoots, Reconstruction) {
  oracle::Gen g(22);
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = g.integer(1, 8);
    const auto roots = g.sorted_uniforms(n, -5, 5);
    const MonicPoly p(oracle::coeffs_from_roots(roots));
    const OrderedRoots got = ordered_roots(p);
    ASSERT_TRUE(std::is_sorted(got.values.begin(), got.values.end()));
    const MonicPoly back(oracle::coeffs_from_roots(got.values));
    double maxa = 0.0;
    for (double a : p.coeffs()) maxa = std::max(maxa, std::abs(a));
    for (int j = 1; j <= n; ++j) EXPECT_NEAR(back.coeff(j), p.coeff(j), 1e-8 * std::max(1.0, maxa));
  }
}

TEST(OrderedRoots, ClusteredAndRepeated) {
  oracle::Gen g(23);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<double> roots;
    const int clusters = g.integer(1, 3);
    for (int c = 0; c < clusters; ++c) {
      const double centre = g.uniform(-3, 3);
      // Widths stay above the resolution limit of an m-fold cluster, so the
      // rounded polynomial is still hyperbolic and its roots resolvable.
      const int m = g.integer(1, 3);
      const double spread = std::pow(10.0, -g.integer(0, m == 3 ? 2 : 5));
      for (int k = 0; k < m; ++k) roots.push_back(centre + spread * (k - 0.5 * (m - 1)));
    }
    std::sort(roots.begin(), roots.end());
    const MonicPoly p(oracle::coeffs_from_roots(roots));
    const OrderedRoots got = ordered_roots(p);
    ASSERT_EQ(got.values.size(), roots.size());
    // Rounding the coefficients moves root j by about
    // u * sum_k |a_k| |r_j|^{n-k} / |P'(r_j)|; the forward check allows a
    // multiple of that, the backward check is held to 1e-8 relative.
    const int n = p.degree();
    for (int j = 0; j < n; ++j) {
      const double r = roots[j];
      double mag = 0.0;
      for (int k = 0; k <= n; ++k) mag += std::abs(p.coeff(k)) * std::pow(std::abs(r), n - k);
      double dp = 1.0;
      for (int i = 0; i < n; ++i)
        if (i != j) dp *= std::abs(r - roots[i]);
      const double cond = 8.0 * std::numeric_limits<double>::epsilon() * mag / dp;
      EXPECT_NEAR(got.values[j], r, 1e-9 + cond);
    }
    const MonicPoly back(oracle::coeffs_from_roots(got.values));
    double maxa = 1.0;
    for (double a : p.coeffs()) maxa = std::max(maxa, std::abs(a));
    for (int j = 1; j <= p.degree(); ++j) EXPECT_NEAR(back.coeff(j), p.coeff(j), 1e-8 * maxa);
  }
}

TEST(OrderedRoots, PairNearResolutionKeepsItsCentre) {
  // At a gap of 1e-7 each root of the pair is only known to about the gap,
  // and the pair may come back coalesced; its centre stays well conditioned.
  oracle::Gen g(25);
  for (int trial = 0; trial < 50; ++trial) {
    const double c = g.uniform(-3, 3);
    std::vector<double> roots = {c - 5e-8, c + 5e-8, c + g.uniform(0.5, 2.0)};
    const MonicPoly p(oracle::coeffs_from_roots(roots));
    const OrderedRoots got = ordered_roots(p);
    ASSERT_EQ(got.values.size(), 3u);
    EXPECT_NEAR(0.5 * (got.values[0] + got.values[1]), c, 1e-9);
    EXPECT_NEAR(got.values[0], roots[0], 2e-7);
    EXPECT_NEAR(got.values[1], roots[1], 2e-7);
    EXPECT_NEAR(got.values[2], roots[2], 1e-9);
  }
}

TEST(OrderedRoots, ContinuityUnderShrinkingPerturbation) {
  oracle::Gen g(24);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = g.integer(2, 6);
    auto roots = g.sorted_uniforms(n, -2, 2);
    roots[1] = roots[0];  // a double root makes continuity nontrivial
    const MonicPoly p(oracle::coeffs_from_roots(roots));
    const auto base = ordered_roots(p).values;
    double prev = std::numeric_limits<double>::infinity();
    for (double eps : {1e-6, 1e-8, 1e-10, 1e-12}) {
      // Perturb the roots themselves so the polynomial stays hyperbolic.
      std::vector<double> moved = roots;
      moved[1] += eps;
      const auto got = ordered_roots(MonicPoly(oracle::coeffs_from_roots(moved))).values;
      double dist = 0.0;
      for (int j = 0; j < n; ++j) dist = std::max(dist, std::abs(got[j] - base[j]));
      EXPECT_LE(dist, std::max(1e-5, prev));
      prev = dist;
    }
    EXPECT_LT(prev, 1e-5);
  }
}

TEST(ClusterRoots, Examples) {
  using Blocks = std::vector<std::vector<int>>;
  EXPECT_EQ(cluster_roots(OrderedRoots{{-2, 1, 1}, 0}, 0.5), (Blocks{{0}, {1, 2}}));
  EXPECT_EQ(cluster_roots(OrderedRoots{{0, 0.1, 5}, 0}, 1), (Blocks{{0, 1}, {2}}));
  EXPECT_EQ(cluster_roots(OrderedRoots{{0, 0.4, 0.8}, 0}, 1), (Blocks{{0, 1, 2}}));
}

TEST(ClusterRoots, PartitionProperties) {
  oracle::Gen g(25);
  for (int trial = 0; trial < 500; ++trial) {
    OrderedRoots r{g.sorted_uniforms(g.integer(1, 10), -3, 3), 0};
    const double gap = g.uniform(0.01, 2);
    const auto blocks = cluster_roots(r, gap);
    int next = 0;
    for (size_t b = 0; b < blocks.size(); ++b) {
      for (int i : blocks[b]) EXPECT_EQ(i, next++);
      for (size_t k = 1; k < blocks[b].size(); ++k)
        EXPECT_LT(r.values[blocks[b][k]] - r.values[blocks[b][k - 1]], gap);
      if (b > 0) EXPECT_GE(r.values[blocks[b].front()] - r.values[blocks[b - 1].back()], gap);
    }
    EXPECT_EQ(next, static_cast<int>(r.values.size()));
  }
}

TEST(ClusterRoots, DefaultGap) {
  EXPECT_DOUBLE_EQ(default_cluster_gap(OrderedRoots{{-1, 0, 1}, 0}), 2.0 / 12.0);
  EXPECT_THROW(cluster_roots(OrderedRoots{{0, 1}, 0}, 0.0), Error);
}

TEST(Split, Examples) {
  const double b1[] = {-1, 0}, c1[] = {1};
  const SplitResult s = split(mp({0, -1, 0}), b1, c1);
  EXPECT_EQ(s.factor_b, mp({1, 0}));
  EXPECT_EQ(s.factor_c, mp({-1}));
  EXPECT_LE(s.residual, 1e-12);

  const double b2[] = {-1, 1}, c2[] = {-2, 2};
  const SplitResult t = split(mp({0, -5, 0, 4}), b2, c2);
  EXPECT_NEAR(t.factor_b.coeff(1), 0, 1e-14);
  EXPECT_NEAR(t.factor_b.coeff(2), -1, 1e-14);
  EXPECT_NEAR(t.factor_c.coeff(1), 0, 1e-14);
  EXPECT_NEAR(t.factor_c.coeff(2), -4, 1e-14);

  const double b3[] = {1}, c3[] = {1};
  EXPECT_EQ(kind_of([&] { split(mp({0, -1}), b3, c3); }), ErrorKind::kCommonRoot);
}

TEST(Split, IndexBlockForm) {
  const MonicPoly p = mp({0, -5, 0, 4});
  const OrderedRoots r = ordered_roots(p);
  const int b[] = {0, 3}, c[] = {1, 2};
  const SplitResult s = split(p, r, b, c);
  EXPECT_NEAR(s.factor_b.coeff(2), -4, 1e-12);
  EXPECT_NEAR(s.factor_c.coeff(2), -1, 1e-12);
}

TEST(Split, SoundnessOnRandomClusters) {
  oracle::Gen g(26);
  for (int trial = 0; trial < 300; ++trial) {
    const int nb = g.integer(1, 4), nc = g.integer(1, 4);
    auto rb = g.uniforms(nb, -2, 0);
    auto rc = g.uniforms(nc, 0.1, 2);
    std::vector<double> all = rb;
    all.insert(all.end(), rc.begin(), rc.end());
    const MonicPoly p(oracle::coeffs_from_roots(all));
    const SplitResult s = split(p, rb, rc);
    EXPECT_EQ(s.factor_b.degree() + s.factor_c.degree(), p.degree());
    EXPECT_LE(s.residual, 1e-12);
    EXPECT_NEAR(s.residual, split_residual(p, s.factor_b, s.factor_c), 0.0);
    EXPECT_TRUE(is_hyperbolic(s.factor_b).is_hyperbolic);
    EXPECT_TRUE(is_hyperbolic(s.factor_c).is_hyperbolic);
    EXPECT_NE(s.resultant_bc, 0.0);
  }
}

TEST(Split, RefinementDoesNotIncreaseResidual) {
  oracle::Gen g(27);
  for (int trial = 0; trial < 300; ++trial) {
    auto rb = g.uniforms(g.integer(1, 3), -2, -0.5);
    auto rc = g.uniforms(g.integer(1, 3), 0.5, 2);
    std::vector<double> all = rb;
    all.insert(all.end(), rc.begin(), rc.end());
    const MonicPoly p(oracle::coeffs_from_roots(all));
    // Start from perturbed roots so the initial product is visibly off.
    for (double& x : rb) x += 1e-3 * g.uniform(-1, 1);
    for (double& x : rc) x += 1e-3 * g.uniform(-1, 1);
    const double before = split_residual(p, MonicPoly::from_roots(rb), MonicPoly::from_roots(rc));
    const SplitResult s = split(p, rb, rc);
    EXPECT_LE(s.residual, before);
  }
}

TEST(Split, FactorSecondCoefficientBound) {
  oracle::Gen g(28);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = g.integer(2, 6);
    auto roots = g.sorted_uniforms(n, -1, 1);
    double mean = 0.0;
    for (double r : roots) mean += r / n;
    for (double& r : roots) r -= mean;
    const MonicPoly p(oracle::coeffs_from_roots(roots));
    const double a2 = std::abs(tschirnhausen(p).reduced.coeff(2));
    for (int k = 1; k < n; ++k) {
      std::vector<double> sub(roots.begin(), roots.begin() + k);
      const double b2 = std::abs(tschirnhausen(MonicPoly::from_roots(sub)).reduced.coeff(2));
      EXPECT_LE(b2, 2.0 * n * a2 + 1e-10);
    }
  }
}

TEST(Resultant, Examples) {
  EXPECT_NEAR(resultant(mp({-1}), mp({1})), 2.0, 1e-14);
  EXPECT_NEAR(resultant(mp({-1}), mp({-1})), 0.0, 1e-14);
  EXPECT_NEAR(resultant(mp({0, -1}), mp({0})), -1.0, 1e-14);
}

TEST(Resultant, MatchesProductOverRoots) {
  oracle::Gen g(29);
  for (int trial = 0; trial < 500; ++trial) {
    const auto rb = g.uniforms(g.integer(1, 5), -2, 2);
    const auto c = g.uniforms(g.integer(1, 5), -2, 2);
    const double want = oracle::product_resultant(rb, c);
    const double got = resultant(MonicPoly(oracle::coeffs_from_roots(rb)), MonicPoly(c));
    EXPECT_NEAR(got, want, 1e-9 * std::max(1.0, std::abs(want)));
  }
}

}  // namespace
}  // namespace hyperlip
