#include "hyperlip/curves.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hyperlip/error.hpp"
#include "hyperlip/realroots.hpp"

namespace hyperlip {

namespace {

void check_domain(const Interval& d) {
  if (!(d.lo < d.hi)) {
    std::ostringstream os;
    os << "curve domain [" << d.lo << ", " << d.hi << "] is degenerate";
    throw Error(ErrorKind::kInvalidArgument, os.str());
  }
}

// Descending synthetic division with polynomial entries: the recentred
// coefficients as polynomials in t.
std::vector<Poly> recentre_curve(const std::vector<Poly>& coeff) {
  const int n = static_cast<int>(coeff.size());
  const Poly h = coeff[0] * (-1.0 / n);
  std::vector<Poly> desc;
  desc.reserve(n + 1);
  desc.push_back(Poly::constant(1.0));
  desc.insert(desc.end(), coeff.begin(), coeff.end());
  for (int i = 0; i < n; ++i)
    for (int j = 1; j <= n - i; ++j) desc[j] += h * desc[j - 1];
  desc[1] = Poly{};
  return {desc.begin() + 1, desc.end()};
}

}  // namespace

CoeffCurve::CoeffCurve(std::vector<Poly> coeff, Interval domain)
    : coeff_(std::move(coeff)), domain_(domain) {
  if (coeff_.empty()) throw Error(ErrorKind::kInvalidArgument, "curve needs degree >= 1");
  check_domain(domain_);
  tschirn_ = recentre_curve(coeff_);
}

CoeffCurve make_curve(std::vector<Poly> coeff_polys, Interval domain, int validation_points) {
  CoeffCurve curve(std::move(coeff_polys), domain);
  const int pts = std::max(validation_points, 2);
  for (int k = 0; k < pts; ++k) {
    const double t = k + 1 == pts ? domain.hi : domain.lo + k * (domain.length() / (pts - 1));
    if (!is_hyperbolic(eval_curve(curve, t), eval_curve_magnitudes(curve, t)).is_hyperbolic) {
      std::ostringstream os;
      os << "curve is not hyperbolic at t = " << t;
      throw Error(ErrorKind::kNotHyperbolicOnDomain, os.str(), t);
    }
  }
  return curve;
}

GroundTruthFamily from_root_functions(std::vector<Poly> root_polys, Interval domain) {
  if (root_polys.empty()) throw Error(ErrorKind::kInvalidArgument, "need at least one root function");
  // prod_j (Z - r_j(t)) with Z-coefficients that are polynomials in t,
  // descending in Z.
  std::vector<Poly> desc{Poly::constant(1.0)};
  for (const Poly& r : root_polys) {
    desc.emplace_back();
    for (size_t k = desc.size() - 1; k >= 1; --k) desc[k] -= r * desc[k - 1];
  }
  std::vector<Poly> coeff(desc.begin() + 1, desc.end());
  return {std::move(root_polys), CoeffCurve(std::move(coeff), domain)};
}

MonicPoly eval_curve(const CoeffCurve& curve, double t) {
  if (!curve.domain().contains(t)) {
    std::ostringstream os;
    os << "t = " << t << " lies outside the curve domain [" << curve.domain().lo << ", "
       << curve.domain().hi << "]";
    throw Error(ErrorKind::kOutOfDomain, os.str(), t);
  }
  std::vector<double> a(static_cast<size_t>(curve.degree()));
  for (int j = 1; j <= curve.degree(); ++j) a[j - 1] = curve.coeff(j)(t);
  return MonicPoly(std::move(a));
}

std::vector<double> eval_curve_magnitudes(const CoeffCurve& curve, double t) {
  const int n = curve.degree();
  std::vector<double> out(static_cast<size_t>(n));
  for (int j = 1; j <= n; ++j) {
    const Poly& c = curve.coeff(j);
    double sum = 0.0;
    for (size_t k = c.coeffs().size(); k-- > 0;) sum = sum * std::abs(t) + std::abs(c.coeffs()[k]);
    out[j - 1] = std::max(1.0, static_cast<double>(c.degree()) / (n + 1)) * sum;
  }
  return out;
}

MonicPoly eval_tschirn(const CoeffCurve& curve, double t) {
  if (!curve.domain().contains(t)) {
    std::ostringstream os;
    os << "t = " << t << " lies outside the curve domain";
    throw Error(ErrorKind::kOutOfDomain, os.str(), t);
  }
  std::vector<double> a(static_cast<size_t>(curve.degree()));
  for (int j = 2; j <= curve.degree(); ++j) a[j - 1] = curve.tschirn(j)(t);
  return MonicPoly(std::move(a));
}

DerivativeNorms curve_derivative_norms(const CoeffCurve& curve, const Interval& interval, int p) {
  if (p < 1) throw Error(ErrorKind::kInvalidArgument, "p must be >= 1");
  if (!curve.domain().contains(interval))
    throw Error(ErrorKind::kBadIntervals, "norm interval is not inside the curve domain");
  const int n = curve.degree();
  DerivativeNorms out;
  out.sup_norms.resize(n);
  out.lip.resize(n);
  for (int j = 1; j <= n; ++j) {
    for (int k = 0; k < p; ++k) out.sup_norms[j - 1].push_back(sup_abs(curve.coeff(j).derivative(k), interval));
    out.lip[j - 1] = lipschitz(curve.coeff(j).derivative(p - 1), interval);
  }
  for (int i = 2; i <= n; ++i) out.M.push_back(lipschitz(curve.tschirn(i).derivative(p - 1), interval));
  return out;
}

double cnorm(const Poly& f, const Interval& interval, int p) {
  if (p < 1) throw Error(ErrorKind::kInvalidArgument, "p must be >= 1");
  double sup = 0.0;
  for (int k = 0; k < p; ++k) sup = std::max(sup, sup_abs(f.derivative(k), interval));
  return sup + lipschitz(f.derivative(p - 1), interval);
}

}  // namespace hyperlip
