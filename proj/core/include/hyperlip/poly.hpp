#pragma once

#include <span>
#include <vector>

namespace hyperlip {

/// Dense real polynomial stored by ascending powers: `coeffs()[k]` multiplies
/// x^k. Trailing exact zeros are trimmed, so the zero polynomial has degree -1.
///
/// Used both for polynomials in the root variable Z (derivatives, Sturm
/// chains) and for coefficient functions a_j(t) of a curve.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<double> ascending);

  static Poly constant(double c);
  static Poly monomial(double c, int power);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::span<const double> coeffs() const { return c_; }
  double operator[](int k) const;
  double leading() const { return c_.empty() ? 0.0 : c_.back(); }
  double max_abs_coeff() const;

  double operator()(double x) const;
  Poly derivative(int order = 1) const;
  /// Returns q(x) = p(scale * x + offset).
  Poly compose_affine(double scale, double offset) const;

  Poly& operator+=(const Poly& rhs);
  Poly& operator-=(const Poly& rhs);
  Poly& operator*=(double s);

  friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
  friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
  friend Poly operator*(Poly lhs, double s) { return lhs *= s; }
  friend Poly operator*(double s, Poly rhs) { return rhs *= s; }
  friend Poly operator*(const Poly& lhs, const Poly& rhs);
  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void trim();
  std::vector<double> c_;
};

struct DivMod {
  Poly quotient;
  Poly remainder;
};

/// Long division; `den` must be nonzero.
DivMod divmod(const Poly& num, const Poly& den);

/// Monic real polynomial Z^n + a_1 Z^{n-1} + ... + a_n, held by its n
/// non-leading coefficients exactly as given.
class MonicPoly {
 public:
  explicit MonicPoly(std::vector<double> coeffs);

  /// prod_j (Z - roots[j]) expanded left to right.
  static MonicPoly from_roots(std::span<const double> roots);
  /// Makes `p` monic by dividing through its leading coefficient.
  static MonicPoly from_poly(const Poly& p);

  int degree() const { return static_cast<int>(a_.size()); }
  std::span<const double> coeffs() const { return a_; }
  /// a_j for j in [0, n]; a_0 is the implicit leading 1.
  double coeff(int j) const { return j == 0 ? 1.0 : a_[j - 1]; }

  double operator()(double z) const;
  Poly to_poly() const;

  friend bool operator==(const MonicPoly&, const MonicPoly&) = default;

 private:
  std::vector<double> a_;
};

MonicPoly operator*(const MonicPoly& lhs, const MonicPoly& rhs);

/// Recentred polynomial: reduced(Z) = P(Z - shift) with shift = a_1 / n, so
/// each root of `reduced` is a root of P plus `shift`. reduced.coeff(1) == 0.
struct TschirnForm {
  double shift = 0.0;
  MonicPoly reduced{std::vector<double>{0.0}};
};

double eval(const MonicPoly& p, double z);

TschirnForm tschirnhausen(const MonicPoly& p);

/// Power sums s_1..s_k of the roots via Newton's identities.
std::vector<double> newton_sums(const MonicPoly& p, int k);

/// |a2|^{-n/2} P(|a2|^{1/2} Z) for a recentred P with a2 != 0. The result has
/// second coefficient exactly -1 when a2 < 0 (the hyperbolic case).
MonicPoly normalize_scale(const TschirnForm& t);

Poly derivative_poly(const MonicPoly& p);

}  // namespace hyperlip
