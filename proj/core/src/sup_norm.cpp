#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <unsupported/Eigen/Polynomials>

#include "detail/sturm.hpp"
#include "hyperlip/curves.hpp"

namespace hyperlip {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Points of [-1, 1] where g may vanish: real parts of near-real companion
// eigenvalues plus sign changes on a dense Chebyshev sample, all polished by
// bracketed Newton. Spurious candidates are harmless for sup/inf purposes.
std::vector<double> zero_candidates(const Poly& g) {
  std::vector<double> out;
  if (g.degree() < 1) return out;
  if (g.degree() == 1) {
    const double u = -g[0] / g[1];
    if (u >= -1.0 && u <= 1.0) out.push_back(u);
    return out;
  }

  Eigen::VectorXd c(g.degree() + 1);
  for (int k = 0; k <= g.degree(); ++k) c(k) = g[k];
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
  solver.compute(c);
  for (const std::complex<double>& z : solver.roots()) {
    if (std::abs(z.imag()) > 1e-4 * (1.0 + std::abs(z.real()))) continue;
    const double u = z.real();
    if (u < -1.0 - 1e-9 || u > 1.0 + 1e-9) continue;
    out.push_back(std::clamp(u, -1.0, 1.0));
  }

  const int samples = 32 * (g.degree() + 1);
  double prev_u = -1.0;
  double prev_v = g(-1.0);
  for (int i = 1; i <= samples; ++i) {
    const double u = i == samples ? 1.0 : -std::cos(M_PI * i / samples);
    const double v = g(u);
    if (v == 0.0) out.push_back(u);
    else if (prev_v != 0.0 && (v < 0.0) != (prev_v < 0.0))
      out.push_back(detail::refine_bracketed_root(g, prev_u, u));
    prev_u = u;
    prev_v = v;
  }

  // Newton polish; keep the better of polished and raw.
  const Poly dg = g.derivative();
  for (double& u : out) {
    double x = u;
    for (int it = 0; it < 8; ++it) {
      const double d = dg(x);
      if (d == 0.0) break;
      const double next = std::clamp(x - g(x) / d, -1.0, 1.0);
      if (std::abs(g(next)) >= std::abs(g(x))) break;
      x = next;
    }
    u = x;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// g(u) = f(mid + half * u)
Poly to_unit(const Poly& f, const Interval& I) { return f.compose_affine(0.5 * I.length(), I.mid()); }

}  // namespace

std::vector<double> real_roots_in(const Poly& f, const Interval& interval) {
  if (f.degree() < 1) return {};
  if (interval.length() <= 0.0) return f(interval.lo) == 0.0 ? std::vector<double>{interval.lo} : std::vector<double>{};
  const Poly g = to_unit(f, interval);
  double mag = 0.0;
  for (double c : g.coeffs()) mag += std::abs(c);
  std::vector<double> out;
  for (double u : zero_candidates(g)) {
    if (std::abs(g(u)) > 64.0 * g.degree() * kEps * mag) continue;
    const double t = std::clamp(interval.mid() + 0.5 * interval.length() * u, interval.lo, interval.hi);
    if (out.empty() || t - out.back() > 1e-12 * std::max(1.0, std::abs(t))) out.push_back(t);
  }
  return out;
}

double sup_abs(const Poly& f, const Interval& interval) {
  double best = std::max(std::abs(f(interval.lo)), std::abs(f(interval.hi)));
  if (f.degree() < 2 || interval.length() <= 0.0) return best;
  const Poly g = to_unit(f, interval);
  for (double u : zero_candidates(g.derivative())) {
    const double t = std::clamp(interval.mid() + 0.5 * interval.length() * u, interval.lo, interval.hi);
    best = std::max(best, std::abs(f(t)));
  }
  return best;
}

double inf_abs(const Poly& f, const Interval& interval) {
  const double flo = f(interval.lo);
  const double fhi = f(interval.hi);
  double best = std::min(std::abs(flo), std::abs(fhi));
  if (f.degree() < 1 || interval.length() <= 0.0 || best == 0.0) return best;
  if ((flo < 0.0) != (fhi < 0.0)) return 0.0;
  const Poly g = to_unit(f, interval);
  for (const Poly& h : {g, g.derivative()}) {
    for (double u : zero_candidates(h)) {
      const double v = g(u);
      if (v == 0.0 || (v < 0.0) != (flo < 0.0)) return 0.0;
      const double t = std::clamp(interval.mid() + 0.5 * interval.length() * u, interval.lo, interval.hi);
      best = std::min(best, std::abs(f(t)));
    }
  }
  return best;
}

double lipschitz(const Poly& f, const Interval& interval) { return sup_abs(f.derivative(), interval); }

}  // namespace hyperlip
