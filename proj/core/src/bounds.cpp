#include "hyperlip/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hyperlip/error.hpp"
#include "hyperlip/realroots.hpp"

namespace hyperlip {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// m2 below this fraction of sup|a~_2| is treated as a zero of a~_2 on I0.
constexpr double kM2Floor = 1e-12;

double check_intervals(const CoeffCurve& curve, const Interval& I0, const Interval& I1) {
  if (!(I0.lo < I0.hi) || !(I1.lo < I1.hi)) throw Error(ErrorKind::kBadIntervals, "intervals must be nondegenerate");
  if (!curve.domain().contains(I1)) throw Error(ErrorKind::kBadIntervals, "I1 is not contained in the curve domain");
  const double delta = std::min(I0.lo - I1.lo, I1.hi - I0.hi);
  if (!(delta > 0.0)) throw Error(ErrorKind::kBadIntervals, "I0 must lie strictly inside I1");
  return delta;
}

struct MinMax {
  double min;
  double max;
};

MinMax extrema(const Poly& f, const Interval& I) {
  MinMax out{std::min(f(I.lo), f(I.hi)), std::max(f(I.lo), f(I.hi))};
  for (double t : real_roots_in(f.derivative(), I)) {
    const double v = f(t);
    out.min = std::min(out.min, v);
    out.max = std::max(out.max, v);
  }
  return out;
}

// Shared by the p = n and p < n reports: everything except A2 and alpha.
BoundReport base_report(const CoeffCurve& curve, const Interval& I0, const Interval& I1, int p) {
  BoundReport r;
  r.n = curve.degree();
  r.p = p;
  r.I0 = I0;
  r.I1 = I1;
  r.delta = check_intervals(curve, I0, I1);
  if (r.n < 2) throw Error(ErrorKind::kInvalidArgument, "bounds need degree n >= 2");
  const Poly& a2 = curve.tschirn(2);
  r.sup_a2 = sup_abs(a2, I1);
  r.lip_a2p = lipschitz(a2.derivative(), I1);
  r.A1 = std::max(std::sqrt(r.sup_a2) / r.delta, std::sqrt(r.lip_a2p));
  for (int i = 2; i <= r.n; ++i) r.M.push_back(lipschitz(curve.tschirn(i).derivative(p - 1), I1));
  double coarse = 0.0;
  double coarse_root = 0.0;
  for (int i = 2; i <= r.n; ++i) {
    const double c = cnorm(curve.tschirn(i), I1, p);
    coarse = std::max(coarse, c);
    coarse_root = std::max(coarse_root, std::pow(c, 1.0 / i));
  }
  r.coarse_root = coarse_root;
  r.coarse_affine = 1.0 + coarse;
  return r;
}

// max over i of terms[i-2]^{1/p}, with the smallest maximizing i.
std::pair<double, int> root_max(const std::vector<double>& terms, int p) {
  double best = 0.0;
  int arg = 0;
  for (size_t k = 0; k < terms.size(); ++k) {
    const double v = std::pow(terms[k], 1.0 / p);
    if (v > best) {
      best = v;
      arg = static_cast<int>(k) + 2;
    }
  }
  return {best, arg};
}

}  // namespace

AQuantities bronshtein_A(const CoeffCurve& curve, const Interval& I0, const Interval& I1) {
  const BoundReport r = bronshtein_bound(curve, I0, I1);
  return {r.A1, r.A2, r.A0, r.A2_argmax};
}

BoundReport bronshtein_bound(const CoeffCurve& curve, const Interval& I0, const Interval& I1) {
  const int n = curve.degree();
  BoundReport r = base_report(curve, I0, I1, n);
  std::vector<double> terms;
  for (int i = 2; i <= n; ++i) terms.push_back(r.M[i - 2] * std::pow(r.sup_a2, 0.5 * (n - i)));
  std::tie(r.A2, r.A2_argmax) = root_max(terms, n);
  r.A0 = 6.0 * std::max(r.A1, r.A2);
  r.bracket = std::max(r.A1, r.A2);
  return r;
}

AssumptionCheck check_assumption(const CoeffCurve& curve, const Interval& I0, const Interval& I1,
                                 double A, double t0, int samples, double deriv_cap) {
  if (!(A >= 0.0)) throw Error(ErrorKind::kInvalidArgument, "A must be nonnegative");
  if (!I0.contains(t0)) throw Error(ErrorKind::kBadIntervals, "t0 must lie in I0", t0);
  check_intervals(curve, I0, I1);
  const int n = curve.degree();
  const Poly& a2 = curve.tschirn(2);
  const double a2t0 = a2(t0);
  if (a2t0 == 0.0) throw Error(ErrorKind::kZeroA2, "a2(t0) = 0: the assumption interval is empty", t0);

  AssumptionCheck out;
  out.t0 = t0;
  out.radius = A > 0.0 ? std::sqrt(std::abs(a2t0)) / A : kInf;
  out.a1_ok = t0 - out.radius >= I1.lo && t0 + out.radius <= I1.hi;

  const Interval& dom = curve.domain();
  const double lo = std::max(dom.lo, t0 - out.radius);
  const double hi = std::min(dom.hi, t0 + out.radius);
  const int count = std::max(samples, 2);

  std::vector<std::vector<Poly>> deriv(n + 1);
  for (int i = 2; i <= n; ++i)
    for (int k = 0; k <= n; ++k) deriv[i].push_back(curve.tschirn(i).derivative(k));

  out.a2_ratio_ok = true;
  double worst_log = 0.0;
  for (int s = 0; s < count; ++s) {
    const double t = s + 1 == count ? hi : lo + s * ((hi - lo) / (count - 1));
    const double a2t = a2(t);
    const double ratio = a2t / a2t0;
    if (!(ratio >= 0.5 && ratio <= 2.0)) out.a2_ratio_ok = false;
    const double lg = ratio > 0.0 ? std::abs(std::log(ratio)) : kInf;
    if (lg > worst_log) {
      worst_log = lg;
      out.worst_ratio = ratio;
    }
    for (int i = 2; i <= n; ++i) {
      for (int k = 0; k <= n; ++k) {
        const double lhs = std::abs(deriv[i][k](t));
        if (lhs == 0.0) continue;
        const double rhs = std::pow(A, k) * std::pow(std::abs(a2t), 0.5 * (i - k));
        out.c_hat = std::max(out.c_hat, rhs > 0.0 ? lhs / rhs : kInf);
      }
    }
  }
  out.deriv_ok = std::isfinite(out.c_hat) && out.c_hat <= deriv_cap;
  out.worst_deriv_margin = deriv_cap - out.c_hat;
  return out;
}

AlphaEstimate alpha_from_roots(std::span<const double> roots, int p) {
  const int n = static_cast<int>(roots.size());
  if (p < 1 || p >= n) throw Error(ErrorKind::kInvalidArgument, "alpha needs 1 <= p < n");
  double den = kInf;
  for (int i = 0; i + p < n; ++i) den = std::min(den, std::abs(roots[i + p] - roots[i]));
  if (den == 0.0) return {kInf, true};
  return {std::abs(roots[n - 1] - roots[0]) / den, false};
}

AlphaEstimate alpha_uniformity(const CoeffCurve& curve, std::span<const double> grid, int p) {
  const int n = curve.degree();
  if (p < 2 || p >= n) throw Error(ErrorKind::kInvalidArgument, "alpha needs 2 <= p < n");
  AlphaEstimate out;
  for (double t : grid) {
    const AlphaEstimate a = alpha_from_roots(ordered_roots(eval_curve(curve, t), eval_curve_magnitudes(curve, t)).values, p);
    if (a.unbounded) return a;
    out.value = std::max(out.value, a.value);
  }
  return out;
}

BoundReport bound_lower_multiplicity(const CoeffCurve& curve, const Interval& I0, const Interval& I1,
                                     int p, int alpha_grid) {
  const int n = curve.degree();
  if (p == n) return bronshtein_bound(curve, I0, I1);
  if (p < 2 || p > n) throw Error(ErrorKind::kInvalidArgument, "p must satisfy 2 <= p <= n");
  if (alpha_grid < 1) throw Error(ErrorKind::kInvalidN, "alpha grid needs at least one step");

  BoundReport r = base_report(curve, I0, I1, p);
  r.m2 = inf_abs(curve.tschirn(2), I0);
  if (!(r.m2 > kM2Floor * r.sup_a2)) {
    std::ostringstream os;
    os << "m2 = " << r.m2 << ": a2 vanishes on I0, the lower-multiplicity bound is unavailable";
    throw Error(ErrorKind::kDegenerateM2, os.str());
  }

  std::vector<double> terms;
  for (int i = 2; i <= n; ++i) {
    const double base = i <= p ? r.sup_a2 : r.m2;
    terms.push_back(r.M[i - 2] * std::pow(base, 0.5 * (p - i)));
  }
  std::tie(r.A2, r.A2_argmax) = root_max(terms, p);
  r.A0 = 6.0 * std::max(r.A1, r.A2);

  std::vector<double> grid(alpha_grid + 1);
  for (int k = 0; k <= alpha_grid; ++k)
    grid[k] = k == alpha_grid ? I1.hi : I1.lo + k * (I1.length() / alpha_grid);
  const AlphaEstimate alpha = alpha_uniformity(curve, grid, p);
  r.alpha_I = alpha.value;
  r.alpha_unbounded = alpha.unbounded;
  r.bracket = alpha.unbounded ? kInf : std::pow(alpha.value, double(n - p) / p) * std::max(r.A1, r.A2);
  return r;
}

std::vector<double> interpolation_coeff_bound(int n, double A, double B) {
  if (n < 1) throw Error(ErrorKind::kInvalidArgument, "interpolation bound needs n >= 1");
  if (!(A > 0.0) || !(B > 0.0)) throw Error(ErrorKind::kInvalidArgument, "A and B must be positive");
  const double lead = std::pow(2.0 * n, n + 1) * A;
  std::vector<double> out(n + 1);
  for (int j = 0; j <= n; ++j) out[j] = lead * std::pow(B, -j);
  return out;
}

GlaeserCheck check_glaeser(const Poly& f, double t0, double M, const Interval& I) {
  if (!(M > 0.0)) throw Error(ErrorKind::kInvalidArgument, "M must be positive");
  if (!I.contains(t0)) throw Error(ErrorKind::kInvalidArgument, "t0 must lie in I", t0);
  GlaeserCheck out;
  const double ft0 = f(t0);
  out.lhs = std::abs(f.derivative()(t0));
  out.rhs = 2.0 * M * std::sqrt(std::abs(ft0));

  const MinMax range = extrema(f, I);
  const double slack = 1e-12 * std::max(std::abs(range.min), std::abs(range.max));
  const double r = std::sqrt(std::abs(ft0)) / M;
  const Interval J{t0 - r, t0 + r};
  if (range.min < -slack && range.max > slack) {
    out.violated = "f changes sign on I";
  } else if (!I.contains(J)) {
    out.violated = "I_t0(1/M) is not contained in I";
  } else if (M * M * (1.0 + 1e-12) < lipschitz(f.derivative(), J)) {
    out.violated = "M^2 < Lip(f') on I_t0(1/M)";
  }
  out.hypotheses_ok = out.violated.empty();
  return out;
}

GlaeserCheck glaeser_bound(const Poly& f, double t0, double M, const Interval& I) {
  GlaeserCheck out = check_glaeser(f, t0, M, I);
  if (!out.hypotheses_ok) throw Error(ErrorKind::kHypothesisFailed, out.violated, t0);
  return out;
}

double taylor_constant(int m) {
  if (m < 1) throw Error(ErrorKind::kInvalidArgument, "m must be >= 1");
  if (m == 1) return 1.0;
  return std::tgamma(m + 1.0) * std::pow(2.0 * (m - 1), m);
}

std::vector<double> taylor_derivative_bounds(const Poly& f, const Interval& I, int m) {
  if (!(I.length() > 0.0)) throw Error(ErrorKind::kInvalidArgument, "interval must have positive length");
  const double C = taylor_constant(m);
  const double len = I.length();
  const double scale = sup_abs(f, I) + lipschitz(f.derivative(m - 1), I) * std::pow(len, m);
  std::vector<double> out(m);
  for (int k = 1; k <= m; ++k) out[k - 1] = C * std::pow(len, -k) * scale;
  return out;
}

}  // namespace hyperlip
