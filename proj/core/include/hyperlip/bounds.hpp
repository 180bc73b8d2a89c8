#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hyperlip/curves.hpp"

namespace hyperlip {

inline constexpr int kAlphaGrid = 2048;
inline constexpr int kAssumptionSamples = 256;

struct AQuantities {
  double A1 = 0.0;
  double A2 = 0.0;
  double A0 = 0.0;
  /// Smallest i attaining the max in A2; 0 when every term vanishes.
  int A2_argmax = 0;
};

struct BoundReport {
  int n = 0;
  int p = 0;
  Interval I0;
  Interval I1;
  /// min(I0.lo - I1.lo, I1.hi - I0.hi)
  double delta = 0.0;
  /// sup_{I1} |a~_2|
  double sup_a2 = 0.0;
  /// Lip_{I1}(a~_2')
  double lip_a2p = 0.0;
  /// M[i-2] = Lip_{I1}(a~_i^{(p-1)}), i = 2..n.
  std::vector<double> M;
  /// inf_{I0} |a~_2|; only filled when p < n.
  double m2 = 0.0;
  double A1 = 0.0;
  double A2 = 0.0;
  double A0 = 0.0;
  int A2_argmax = 0;
  /// Grid estimate of sup_{I1} alpha(t); absent when p == n.
  std::optional<double> alpha_I;
  bool alpha_unbounded = false;
  /// The max-expression of the final bound without the universal constant.
  double bracket = 0.0;
  /// max_i ||a~_i||^{1/i} in C^{p-1,1}(I1).
  double coarse_root = 0.0;
  /// 1 + max_i ||a~_i|| in C^{p-1,1}(I1).
  double coarse_affine = 0.0;

  friend bool operator==(const BoundReport&, const BoundReport&) = default;
};

/// A1 = max(delta^{-1} ||a~_2||^{1/2}, Lip(a~_2')^{1/2}),
/// A2 = max_i (M_i ||a~_2||^{(n-i)/2})^{1/n}, A0 = 6 max(A1, A2); norms on I1.
/// Throws Error(kBadIntervals) unless I0 lies strictly inside I1 and I1 inside
/// the curve domain.
AQuantities bronshtein_A(const CoeffCurve& curve, const Interval& I0, const Interval& I1);

struct AssumptionCheck {
  double t0 = 0.0;
  /// |a~_2(t0)|^{1/2} / A
  double radius = 0.0;
  bool a1_ok = false;
  bool a2_ratio_ok = false;
  bool deriv_ok = false;
  /// Sampled a~_2(t)/a~_2(t0) farthest from 1 in the log sense.
  double worst_ratio = 1.0;
  /// Smallest C with |a~_i^{(k)}| <= C A^k |a~_2|^{(i-k)/2} at every sample.
  double c_hat = 0.0;
  /// deriv_cap - c_hat; +inf without a cap.
  double worst_deriv_margin = std::numeric_limits<double>::infinity();
};

/// Samples I_{t0}(1/A) (clipped to the curve domain) at `samples` points and
/// checks interval containment, the ratio bounds [1/2, 2] and the derivative
/// bounds for i = 2..n, k = 0..n. deriv_ok holds when c_hat is finite and at
/// most `deriv_cap`.
///
/// Throws Error(kZeroA2) when a~_2(t0) = 0 and Error(kBadIntervals) for t0
/// outside I0.
AssumptionCheck check_assumption(const CoeffCurve& curve, const Interval& I0, const Interval& I1,
                                 double A, double t0, int samples = kAssumptionSamples,
                                 double deriv_cap = std::numeric_limits<double>::infinity());

/// Full report for p = n.
BoundReport bronshtein_bound(const CoeffCurve& curve, const Interval& I0, const Interval& I1);

struct AlphaEstimate {
  double value = 0.0;
  bool unbounded = false;
};

/// |l_n - l_1| / min_{i <= n-p} |l_{i+p} - l_i| for sorted roots.
AlphaEstimate alpha_from_roots(std::span<const double> sorted_roots, int p);

/// Max of alpha over the grid nodes. Throws Error(kInvalidArgument) unless
/// 2 <= p < n.
AlphaEstimate alpha_uniformity(const CoeffCurve& curve, std::span<const double> grid, int p);

/// Bound for root multiplicities at most p < n; delegates to bronshtein_bound
/// when p == n. alpha is estimated on `alpha_grid` + 1 equispaced nodes of I1.
/// Throws Error(kDegenerateM2) when inf_{I0} |a~_2| vanishes.
BoundReport bound_lower_multiplicity(const CoeffCurve& curve, const Interval& I0,
                                     const Interval& I1, int p, int alpha_grid = kAlphaGrid);

/// b_j = (2n)^{n+1} A B^{-j}, j = 0..n: bounds on the coefficients of a degree
/// n polynomial with |P| <= A on [0, B].
std::vector<double> interpolation_coeff_bound(int n, double A, double B);

struct GlaeserCheck {
  /// |f'(t0)|
  double lhs = 0.0;
  /// 2 M |f(t0)|^{1/2}
  double rhs = 0.0;
  bool hypotheses_ok = false;
  /// Empty when the hypotheses hold.
  std::string violated;
  bool holds() const { return lhs <= rhs * (1.0 + 1e-12) + 1e-300; }
};

/// Evaluates both sides of |f'(t0)| <= 2 M |f(t0)|^{1/2} and checks the
/// hypotheses: f single-signed on I, I_{t0}(1/M) inside I and M^2 >= Lip(f')
/// on I_{t0}(1/M).
GlaeserCheck check_glaeser(const Poly& f, double t0, double M, const Interval& I);

/// As check_glaeser, but throws Error(kHypothesisFailed) naming the violated
/// condition.
GlaeserCheck glaeser_bound(const Poly& f, double t0, double M, const Interval& I);

/// m! (2(m-1))^m for m >= 2, and 1 for m = 1.
double taylor_constant(int m);

/// bound_k = C(m) |I|^{-k} (||f||_inf + Lip(f^{(m-1)}) |I|^m) for k = 1..m,
/// returned at index k-1.
std::vector<double> taylor_derivative_bounds(const Poly& f, const Interval& I, int m);

}  // namespace hyperlip
