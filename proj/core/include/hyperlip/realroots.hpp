#pragma once

#include <span>
#include <vector>

#include "hyperlip/poly.hpp"

namespace hyperlip {

/// Relative threshold under which a Euclidean remainder counts as zero when
/// separating multiple roots.
inline constexpr double kGcdThreshold = 1e-9;
inline constexpr double kDefaultTol = 1e-10;

struct HyperbolicityCertificate {
  bool is_hyperbolic = false;
  /// Real roots counted with multiplicity.
  int real_root_count = 0;
  /// 1 + max_j |a_j|; every root lies in [-cauchy_radius, cauchy_radius].
  double cauchy_radius = 0.0;
};

/// Sturm-sequence count of real roots, with multiplicities taken from a
/// numeric square-free decomposition.
///
/// Counting runs on the recentred, rescaled polynomial so that thresholds are
/// scale free. A recentred polynomial whose second coefficient is zero within
/// rounding is accepted as an n-fold root when every other coefficient is
/// zero within rounding as well.
///
/// Throws Error(kIllConditioned) if the square-free factors fail to reproduce
/// the polynomial to within sqrt(kGcdThreshold).
HyperbolicityCertificate is_hyperbolic(const MonicPoly& p, double tol = kDefaultTol);

/// As above for coefficients carrying rounding beyond their own size:
/// `magnitudes[j - 1]` is the scale of the error in a_j (for a coefficient
/// obtained by evaluating a polynomial, the sum of its absolute terms).
HyperbolicityCertificate is_hyperbolic(const MonicPoly& p, std::span<const double> magnitudes);

struct OrderedRoots {
  /// Nondecreasing, repeated according to multiplicity.
  std::vector<double> values;
  /// max_j |P(values[j])|
  double residual = 0.0;
};

/// All n real roots in nondecreasing order.
///
/// Roots are isolated with Sturm chains, then clusters of nearby roots are
/// split off and recursively recentred and rescaled, which keeps
/// near-multiple roots at their conditioning limit instead of the gcd
/// threshold. Throws Error(kNotHyperbolic) when certification fails.
OrderedRoots ordered_roots(const MonicPoly& p, double tol = kDefaultTol);
OrderedRoots ordered_roots(const MonicPoly& p, std::span<const double> magnitudes);

/// Default gap for cluster_roots: (max - min) / (4 n).
double default_cluster_gap(const OrderedRoots& roots);

/// Maximal runs of consecutive roots with spacing < gap, as index blocks.
std::vector<std::vector<int>> cluster_roots(const OrderedRoots& roots, double gap);

struct SplitResult {
  MonicPoly factor_b{std::vector<double>{0.0}};
  MonicPoly factor_c{std::vector<double>{0.0}};
  /// max_j |a_j - (b*c)_j| / max(1, max_j |a_j|)
  double residual = 0.0;
  double resultant_bc = 0.0;
  int newton_iters = 0;
};

/// Factors p = P_b * P_c where P_b collects the roots near `roots_b` and P_c
/// those near `roots_c`.
///
/// The factors start as products over the given approximate roots and are
/// refined by Newton's method on the coefficient map (b, c) -> b * c, whose
/// Jacobian determinant is the resultant. At most 50 iterations; each step is
/// clamped to the Cauchy radius of p.
///
/// Throws Error(kCommonRoot) if the two root sets are not separated and
/// Error(kNoConvergence) if the residual stays above `tol`.
SplitResult split(const MonicPoly& p, std::span<const double> roots_b,
                  std::span<const double> roots_c, double tol = 1e-12);

/// Index-block form: the blocks refer to positions in `roots.values`.
SplitResult split(const MonicPoly& p, const OrderedRoots& roots, std::span<const int> block_b,
                  std::span<const int> block_c, double tol = 1e-12);

/// Relative coefficient residual of p - b * c, as reported by split().
double split_residual(const MonicPoly& p, const MonicPoly& b, const MonicPoly& c);

/// Determinant of the Sylvester matrix of b and c; for monic b this equals the
/// product of c over the roots of b.
double resultant(const MonicPoly& b, const MonicPoly& c);

}  // namespace hyperlip
