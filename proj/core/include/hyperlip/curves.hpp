#pragma once

#include <vector>

#include "hyperlip/poly.hpp"

namespace hyperlip {

/// Closed parameter interval [lo, hi]. Open/closed makes no numerical
/// difference here.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  double mid() const { return 0.5 * (lo + hi); }
  bool contains(double t) const { return t >= lo && t <= hi; }
  bool contains(const Interval& other) const { return other.lo >= lo && other.hi <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

inline constexpr int kValidationPoints = 1024;

struct GroundTruthFamily;

/// One-parameter family t -> P_{a(t)} whose coefficients a_1(t)..a_n(t) are
/// polynomials in t, together with the recentred coefficients a~_j(t).
class CoeffCurve {
 public:
  int degree() const { return static_cast<int>(coeff_.size()); }
  const Interval& domain() const { return domain_; }
  const std::vector<Poly>& coeff_polys() const { return coeff_; }
  /// a_j(t), j in [1, n].
  const Poly& coeff(int j) const { return coeff_[j - 1]; }
  /// a~_j(t), j in [1, n]; a~_1 is the zero polynomial.
  const Poly& tschirn(int j) const { return tschirn_[j - 1]; }

 private:
  friend CoeffCurve make_curve(std::vector<Poly>, Interval, int);
  friend GroundTruthFamily from_root_functions(std::vector<Poly>, Interval);
  CoeffCurve(std::vector<Poly> coeff, Interval domain);

  std::vector<Poly> coeff_;
  std::vector<Poly> tschirn_;
  Interval domain_;
};

/// Builds a curve and checks hyperbolicity at `validation_points` equispaced
/// times covering the domain. Throws Error(kNotHyperbolicOnDomain) carrying
/// the first failing t.
CoeffCurve make_curve(std::vector<Poly> coeff_polys, Interval domain,
                      int validation_points = kValidationPoints);

/// Curve with known roots r_1(t)..r_n(t): a_j = (-1)^j e_j(r_1, ..., r_n).
/// Hyperbolic by construction, so no grid validation is run.
struct GroundTruthFamily {
  std::vector<Poly> root_polys;
  CoeffCurve curve;
};

GroundTruthFamily from_root_functions(std::vector<Poly> root_polys, Interval domain);

/// P_{a(t)}; throws Error(kOutOfDomain) for t outside the domain.
MonicPoly eval_curve(const CoeffCurve& curve, double t);

/// Rounding scale of each evaluated coefficient: for a_j of t-degree d,
/// max(1, d / (n + 1)) * sum_k |c_k| |t|^k. Pass to ordered_roots so that
/// cancellation in a_j(t) near collisions is not read as complex roots.
std::vector<double> eval_curve_magnitudes(const CoeffCurve& curve, double t);

/// The recentred polynomial P_{a~(t)} built from the a~_j(t).
MonicPoly eval_tschirn(const CoeffCurve& curve, double t);

// ---------------------------------------------------------------------------
// Exact norms of polynomial data on an interval.

/// sup |f| over I: endpoints plus every real critical point in I.
double sup_abs(const Poly& f, const Interval& interval);

/// inf |f| over I; 0 when f changes sign on I.
double inf_abs(const Poly& f, const Interval& interval);

/// Lip_I(f) = sup_I |f'|.
double lipschitz(const Poly& f, const Interval& interval);

/// Real roots of f inside I, ascending, polished to rounding level.
std::vector<double> real_roots_in(const Poly& f, const Interval& interval);

struct DerivativeNorms {
  /// sup_norms[j-1][k] = sup |a_j^{(k)}| for k = 0..p-1.
  std::vector<std::vector<double>> sup_norms;
  /// lip[j-1] = Lip(a_j^{(p-1)}).
  std::vector<double> lip;
  /// M[i-2] = Lip(a~_i^{(p-1)}) for i = 2..n.
  std::vector<double> M;
};

DerivativeNorms curve_derivative_norms(const CoeffCurve& curve, const Interval& interval, int p);

/// ||f||_{C^{p-1,1}(I)} = max_{k<p} sup|f^{(k)}| + Lip(f^{(p-1)}).
double cnorm(const Poly& f, const Interval& interval, int p);

}  // namespace hyperlip
