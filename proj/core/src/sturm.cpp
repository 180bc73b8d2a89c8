#include <algorithm>
#include <cmath>
#include <limits>

#include "detail/sturm.hpp"
#include "hyperlip/error.hpp"

namespace hyperlip::detail {

namespace {

Poly zero_small(const Poly& p, double threshold) {
  std::vector<double> c(p.coeffs().begin(), p.coeffs().end());
  for (double& x : c)
    if (std::abs(x) <= threshold) x = 0.0;
  return Poly(std::move(c));
}

Poly make_monic(const Poly& p) { return p * (1.0 / p.leading()); }

int sign(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

Poly unit_scaled(const Poly& p) {
  const double m = p.max_abs_coeff();
  return m > 0.0 ? p * (1.0 / m) : p;
}

Poly numeric_gcd(const Poly& a, const Poly& b, double threshold) {
  Poly u = unit_scaled(a);
  Poly v = unit_scaled(b);
  if (u.degree() < v.degree()) std::swap(u, v);
  if (v.is_zero()) return u.is_zero() ? Poly::constant(1.0) : make_monic(u);
  while (v.degree() > 0) {
    Poly r = zero_small(divmod(u, v).remainder, threshold);
    if (r.is_zero()) return make_monic(v);
    u = std::move(v);
    v = unit_scaled(r);
  }
  return Poly::constant(1.0);
}

std::vector<SquareFreeFactor> square_free_decomposition(const Poly& f, double threshold) {
  // w_0 = f, w_k = gcd(w_{k-1}, w_{k-1}'); h_k = w_{k-1}/w_k collects the
  // distinct roots of multiplicity >= k.
  std::vector<Poly> h;
  Poly w = make_monic(f);
  while (w.degree() > 0) {
    Poly next = numeric_gcd(w, w.derivative(), threshold);
    h.push_back(divmod(w, next).quotient);
    w = std::move(next);
  }
  std::vector<SquareFreeFactor> out;
  for (size_t k = 0; k < h.size(); ++k) {
    Poly q = k + 1 < h.size() ? divmod(h[k], h[k + 1]).quotient : h[k];
    if (q.degree() > 0) out.push_back({make_monic(q), static_cast<int>(k) + 1});
  }
  return out;
}

SturmChain::SturmChain(const Poly& f, double threshold) {
  chain_.push_back(unit_scaled(f));
  if (f.degree() < 1) return;
  chain_.push_back(unit_scaled(f.derivative()));
  while (chain_.back().degree() > 0) {
    const Poly& u = chain_[chain_.size() - 2];
    const Poly& v = chain_.back();
    Poly r = zero_small(divmod(u, v).remainder, threshold);
    if (r.is_zero()) break;
    chain_.push_back(unit_scaled(r * -1.0));
  }
}

int SturmChain::sign_changes(double x) const {
  int changes = 0;
  int last = 0;
  for (const Poly& p : chain_) {
    const int s = sign(p(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

double refine_bracketed_root(const Poly& f, double lo, double hi) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  const Poly df = f.derivative();
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if (sign(fx) == sign(flo)) {
      lo = x;
      flo = fx;
    } else {
      hi = x;
    }
    const double d = df(x);
    double next = d != 0.0 ? x - fx / d : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double scale = std::max(1.0, std::abs(x));
    if (std::abs(next - x) <= 2.0 * std::numeric_limits<double>::epsilon() * scale ||
        hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * scale) {
      return next;
    }
    x = next;
  }
  return x;
}

namespace {

void isolate(const Poly& f, const SturmChain& chain, double lo, double hi, int count, int depth,
             std::vector<double>& out) {
  if (count <= 0) return;
  const double scale = std::max({1.0, std::abs(lo), std::abs(hi)});
  if (count == 1) {
    out.push_back(refine_bracketed_root(f, lo, hi));
    return;
  }
  if (depth > 200 || hi - lo <= 8.0 * std::numeric_limits<double>::epsilon() * scale) {
    for (int i = 0; i < count; ++i) out.push_back(0.5 * (lo + hi));
    return;
  }
  const double mid = 0.5 * (lo + hi);
  const int left = chain.count(lo, mid);
  isolate(f, chain, lo, mid, left, depth + 1, out);
  isolate(f, chain, mid, hi, count - left, depth + 1, out);
}

}  // namespace

std::vector<double> isolate_real_roots(const Poly& f, const SturmChain& chain, double lo,
                                       double hi) {
  std::vector<double> out;
  isolate(f, chain, lo, hi, chain.count(lo, hi), 0, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace hyperlip::detail
