#include "hyperlip/poly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "detail/shift.hpp"
#include "hyperlip/error.hpp"

namespace hyperlip {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDegenerateScale: return "DegenerateScale";
    case ErrorKind::kIllConditioned: return "IllConditioned";
    case ErrorKind::kNotHyperbolic: return "NotHyperbolic";
    case ErrorKind::kCommonRoot: return "CommonRoot";
    case ErrorKind::kNoConvergence: return "NoConvergence";
    case ErrorKind::kNotHyperbolicOnDomain: return "NotHyperbolicOnDomain";
    case ErrorKind::kOutOfDomain: return "OutOfDomain";
    case ErrorKind::kBadIntervals: return "BadIntervals";
    case ErrorKind::kZeroA2: return "ZeroA2";
    case ErrorKind::kDegenerateM2: return "DegenerateM2";
    case ErrorKind::kHypothesisFailed: return "HypothesisFailed";
    case ErrorKind::kInvalidN: return "InvalidN";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kParse: return "Parse";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// Poly

Poly::Poly(std::vector<double> ascending) : c_(std::move(ascending)) { trim(); }

Poly Poly::constant(double c) { return Poly({c}); }

Poly Poly::monomial(double c, int power) {
  std::vector<double> v(static_cast<size_t>(power) + 1, 0.0);
  v.back() = c;
  return Poly(std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
}

double Poly::operator[](int k) const {
  return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : 0.0;
}

double Poly::max_abs_coeff() const {
  double m = 0.0;
  for (double c : c_) m = std::max(m, std::abs(c));
  return m;
}

double Poly::operator()(double x) const {
  double r = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * x + *it;
  return r;
}

Poly Poly::derivative(int order) const {
  std::vector<double> d = c_;
  for (int o = 0; o < order; ++o) {
    if (d.empty()) break;
    std::vector<double> next(d.size() - 1);
    for (size_t k = 1; k < d.size(); ++k) next[k - 1] = d[k] * static_cast<double>(k);
    d = std::move(next);
  }
  return Poly(std::move(d));
}

Poly Poly::compose_affine(double scale, double offset) const {
  // Horner in polynomial arithmetic: r = r * (scale x + offset) + c_k.
  std::vector<double> r;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    std::vector<double> next(r.size() + 1, 0.0);
    for (size_t k = 0; k < r.size(); ++k) {
      next[k] += r[k] * offset;
      next[k + 1] += r[k] * scale;
    }
    next[0] += *it;
    r = std::move(next);
  }
  return Poly(std::move(r));
}

Poly& Poly::operator+=(const Poly& rhs) {
  if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), 0.0);
  for (size_t k = 0; k < rhs.c_.size(); ++k) c_[k] += rhs.c_[k];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
  if (rhs.c_.size() > c_.size()) c_.resize(rhs.c_.size(), 0.0);
  for (size_t k = 0; k < rhs.c_.size(); ++k) c_[k] -= rhs.c_[k];
  trim();
  return *this;
}

Poly& Poly::operator*=(double s) {
  for (double& c : c_) c *= s;
  trim();
  return *this;
}

Poly operator*(const Poly& lhs, const Poly& rhs) {
  if (lhs.is_zero() || rhs.is_zero()) return {};
  std::vector<double> r(lhs.c_.size() + rhs.c_.size() - 1, 0.0);
  for (size_t i = 0; i < lhs.c_.size(); ++i)
    for (size_t j = 0; j < rhs.c_.size(); ++j) r[i + j] += lhs.c_[i] * rhs.c_[j];
  return Poly(std::move(r));
}

DivMod divmod(const Poly& num, const Poly& den) {
  if (den.is_zero()) throw Error(ErrorKind::kInvalidArgument, "division by zero polynomial");
  const int dn = den.degree();
  std::vector<double> rem(num.coeffs().begin(), num.coeffs().end());
  if (num.degree() < dn) return {Poly{}, num};
  std::vector<double> q(static_cast<size_t>(num.degree() - dn) + 1, 0.0);
  const double lead = den.leading();
  for (int k = num.degree() - dn; k >= 0; --k) {
    const double f = rem[k + dn] / lead;
    q[k] = f;
    for (int j = 0; j <= dn; ++j) rem[k + j] -= f * den[j];
    rem[k + dn] = 0.0;
  }
  rem.resize(static_cast<size_t>(dn));
  return {Poly(std::move(q)), Poly(std::move(rem))};
}

// ---------------------------------------------------------------------------
// MonicPoly

MonicPoly::MonicPoly(std::vector<double> coeffs) : a_(std::move(coeffs)) {
  if (a_.empty()) throw Error(ErrorKind::kInvalidArgument, "monic polynomial needs degree >= 1");
}

MonicPoly MonicPoly::from_roots(std::span<const double> roots) {
  // Descending coefficients, leading 1 implicit at index 0.
  std::vector<double> d{1.0};
  for (double r : roots) {
    d.push_back(0.0);
    for (size_t k = d.size() - 1; k >= 1; --k) d[k] -= r * d[k - 1];
  }
  return MonicPoly(std::vector<double>(d.begin() + 1, d.end()));
}

MonicPoly MonicPoly::from_poly(const Poly& p) {
  if (p.degree() < 1) throw Error(ErrorKind::kInvalidArgument, "need degree >= 1 to make monic");
  const int n = p.degree();
  std::vector<double> a(static_cast<size_t>(n));
  for (int j = 1; j <= n; ++j) a[j - 1] = p[n - j] / p.leading();
  return MonicPoly(std::move(a));
}

double MonicPoly::operator()(double z) const {
  double r = 1.0;
  for (double a : a_) r = r * z + a;
  return r;
}

Poly MonicPoly::to_poly() const {
  const int n = degree();
  std::vector<double> c(static_cast<size_t>(n) + 1);
  c[n] = 1.0;
  for (int j = 1; j <= n; ++j) c[n - j] = a_[j - 1];
  return Poly(std::move(c));
}

MonicPoly operator*(const MonicPoly& lhs, const MonicPoly& rhs) {
  const int m = lhs.degree();
  const int k = rhs.degree();
  std::vector<double> a(static_cast<size_t>(m + k), 0.0);
  for (int i = 0; i <= m; ++i)
    for (int j = 0; j <= k; ++j)
      if (i + j > 0) a[i + j - 1] += lhs.coeff(i) * rhs.coeff(j);
  return MonicPoly(std::move(a));
}

double eval(const MonicPoly& p, double z) { return p(z); }

namespace detail {

std::vector<double> taylor_shift_descending(std::vector<double> desc, double h) {
  const size_t n = desc.size() - 1;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 1; j <= n - i; ++j) desc[j] += h * desc[j - 1];
  return desc;
}

RecentredWithNoise recentre_with_noise(const MonicPoly& p, std::span<const double> magnitudes) {
  const int n = p.degree();
  const double shift = p.coeff(1) / n;
  std::vector<double> desc(static_cast<size_t>(n) + 1);
  std::vector<double> mag(static_cast<size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    desc[j] = p.coeff(j);
    mag[j] = std::abs(p.coeff(j));
    if (j >= 1 && static_cast<size_t>(j) <= magnitudes.size()) mag[j] = std::max(mag[j], magnitudes[j - 1]);
  }
  desc = taylor_shift_descending(std::move(desc), -shift);
  mag = taylor_shift_descending(std::move(mag), std::abs(shift));
  desc[1] = 0.0;

  constexpr double kEps = std::numeric_limits<double>::epsilon();
  RecentredWithNoise out{{shift, MonicPoly(std::vector<double>(desc.begin() + 1, desc.end()))},
                         std::vector<double>(static_cast<size_t>(n) + 1, 0.0)};
  for (int j = 2; j <= n; ++j) out.noise[j] = 2.0 * (n + 1) * kEps * mag[j];
  return out;
}

}  // namespace detail

TschirnForm tschirnhausen(const MonicPoly& p) { return detail::recentre_with_noise(p).form; }

std::vector<double> newton_sums(const MonicPoly& p, int k) {
  if (k < 1) throw Error(ErrorKind::kInvalidArgument, "newton_sums needs k >= 1");
  const int n = p.degree();
  auto a = [&](int j) { return j <= n ? p.coeff(j) : 0.0; };
  std::vector<double> s(static_cast<size_t>(k) + 1, 0.0);
  for (int m = 1; m <= k; ++m) {
    double v = -m * a(m);
    for (int j = 1; j < m; ++j) v -= a(j) * s[m - j];
    s[m] = v;
  }
  return {s.begin() + 1, s.end()};
}

MonicPoly normalize_scale(const TschirnForm& t) {
  const MonicPoly& r = t.reduced;
  const int n = r.degree();
  if (n < 2 || r.coeff(2) == 0.0)
    throw Error(ErrorKind::kDegenerateScale, "cannot rescale: second coefficient is zero");
  const double a2 = r.coeff(2);
  const double scale = std::sqrt(std::abs(a2));
  std::vector<double> q(static_cast<size_t>(n), 0.0);
  q[1] = a2 < 0.0 ? -1.0 : 1.0;
  for (int j = 3; j <= n; ++j) q[j - 1] = r.coeff(j) / std::pow(scale, j);
  return MonicPoly(std::move(q));
}

Poly derivative_poly(const MonicPoly& p) { return p.to_poly().derivative(); }

}  // namespace hyperlip
