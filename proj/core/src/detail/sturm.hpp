#pragma once

#include <utility>
#include <vector>

#include "hyperlip/poly.hpp"

namespace hyperlip::detail {

// p / max|coeff|; the zero polynomial is returned unchanged.
Poly unit_scaled(const Poly& p);

// Euclidean gcd where a remainder whose coefficients all fall below
// `threshold` (relative to unit-scaled operands) is taken as zero. The result
// is monic, or the constant 1 when the operands are coprime at threshold.
Poly numeric_gcd(const Poly& a, const Poly& b, double threshold);

// Exact-multiplicity square-free factors: f ~ prod_k factor_k^k, each factor
// monic and square-free at threshold. Constant factors are omitted.
struct SquareFreeFactor {
  Poly factor;
  int multiplicity = 1;
};
std::vector<SquareFreeFactor> square_free_decomposition(const Poly& f, double threshold);

class SturmChain {
 public:
  SturmChain(const Poly& f, double threshold);

  int sign_changes(double x) const;
  // Number of distinct real roots in (a, b].
  int count(double a, double b) const { return sign_changes(a) - sign_changes(b); }
  const Poly& base() const { return chain_.front(); }

 private:
  std::vector<Poly> chain_;
};

// Real roots of the square-free polynomial f in (lo, hi], ascending, each
// resolved to about machine precision. Clusters that bisection cannot pull
// apart are returned as repeated midpoints.
std::vector<double> isolate_real_roots(const Poly& f, const SturmChain& chain, double lo,
                                       double hi);

// Safeguarded Newton on a bracket [lo, hi] where f(lo) and f(hi) differ in
// sign (or one of them vanishes).
double refine_bracketed_root(const Poly& f, double lo, double hi);

}  // namespace hyperlip::detail
