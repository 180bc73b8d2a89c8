#include "hyperlip/realroots.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <optional>
#include <unsupported/Eigen/Polynomials>
#include <cmath>
#include <limits>
#include <numeric>

#include "detail/shift.hpp"
#include "detail/sturm.hpp"
#include "hyperlip/error.hpp"

namespace hyperlip {

namespace {

using detail::SquareFreeFactor;

// A recentred second coefficient within kZeroBand * noise of zero is treated
// as exactly zero. On the positive side (complex pair) rounding is forgiven up
// to kPositiveBand * noise before the polynomial is rejected.
constexpr double kZeroBand = 16.0;
constexpr double kPositiveBand = 1024.0;
// Relative noise in the rescaled coefficients above which a failed count is
// attributed to rounding rather than to complex roots.
constexpr double kNoiseDominated = 1e-8;

enum class Mode { kStrict, kCoalesce };

struct Analysis {
  bool hyperbolic = false;
  int count = 0;
  std::vector<double> roots;
};

Analysis all_at(int n, double value) { return {true, n, std::vector<double>(n, value)}; }

// Compensated Horner: p(x) with about twice working precision.
double accurate_eval(const MonicPoly& p, double x) {
  double r = 1.0;
  double c = 0.0;
  for (int j = 1; j <= p.degree(); ++j) {
    const double prod = r * x;
    const double prod_err = std::fma(r, x, -prod);
    const double sum = prod + p.coeff(j);
    const double bv = sum - prod;
    const double sum_err = (prod - (sum - bv)) + (p.coeff(j) - bv);
    r = sum;
    c = c * x + (prod_err + sum_err);
  }
  return r + c;
}

// Every simple root whose neighbour midpoints bracket a sign change of p is
// re-solved on p itself. Clustered roots reached through recentring, rescaling
// and splitting lose accuracy at each stage; this restores what p resolves.
void polish_on(const MonicPoly& p, std::vector<double>& roots) {
  const int n = static_cast<int>(roots.size());
  if (n < 2) return;
  const std::vector<double> in = roots;
  for (int i = 0; i < n; ++i) {
    if ((i > 0 && in[i - 1] == in[i]) || (i + 1 < n && in[i + 1] == in[i])) continue;
    const double lo = i == 0 ? in[0] - (in[1] - in[0]) : 0.5 * (in[i - 1] + in[i]);
    const double hi = i + 1 == n ? in[n - 1] + (in[n - 1] - in[n - 2]) : 0.5 * (in[i] + in[i + 1]);
    double a = lo;
    double b = hi;
    double fa = accurate_eval(p, a);
    const double fb = accurate_eval(p, b);
    if (fa == 0.0 || fb == 0.0 || (fa < 0.0) == (fb < 0.0)) continue;
    for (int it = 0; it < 200; ++it) {
      const double m = 0.5 * (a + b);
      if (m <= a || m >= b) break;
      const double fm = accurate_eval(p, m);
      if (fm == 0.0) {
        a = b = m;
        break;
      }
      if ((fm < 0.0) == (fa < 0.0)) {
        a = m;
        fa = fm;
      } else {
        b = m;
      }
    }
    roots[i] = 0.5 * (a + b);
  }
  std::sort(roots.begin(), roots.end());
}

struct Count {
  int count = 0;
  double radius = 0.0;
  std::vector<SquareFreeFactor> factors;
};

Count sturm_count(const MonicPoly& q) {
  const Poly f = q.to_poly();
  Count out;
  out.factors = detail::square_free_decomposition(f, kGcdThreshold);

  Poly rebuilt = Poly::constant(1.0);
  for (const auto& [factor, k] : out.factors)
    for (int i = 0; i < k; ++i) rebuilt = rebuilt * factor;
  const double mismatch = (rebuilt - f).max_abs_coeff() / std::max(1.0, f.max_abs_coeff());
  if (mismatch > std::sqrt(kGcdThreshold)) {
    throw Error(ErrorKind::kIllConditioned,
                "square-free decomposition is numerically ambiguous (mismatch " +
                    std::to_string(mismatch) + ")");
  }

  double maxc = 0.0;
  for (double a : q.coeffs()) maxc = std::max(maxc, std::abs(a));
  out.radius = 1.0 + maxc;
  for (const auto& [factor, k] : out.factors) {
    detail::SturmChain chain(factor, kGcdThreshold);
    out.count += k * chain.count(-out.radius, out.radius);
  }
  return out;
}

// Coefficients a_j / s^j with s = max_j |a_j|^{1/j}; used only to count roots
// of a recentred polynomial whose second coefficient vanishes.
MonicPoly rescale_by_max(const MonicPoly& a) {
  double s = 0.0;
  for (int j = 2; j <= a.degree(); ++j) s = std::max(s, std::pow(std::abs(a.coeff(j)), 1.0 / j));
  std::vector<double> q(a.coeffs().begin(), a.coeffs().end());
  if (s > 0.0)
    for (int j = 2; j <= a.degree(); ++j) q[j - 1] = a.coeff(j) / std::pow(s, j);
  return MonicPoly(std::move(q));
}

struct NewtonSplit {
  MonicPoly b;
  MonicPoly c;
  double residual;
  double initial_residual;
  int iters;
};

NewtonSplit newton_split(const MonicPoly& p, std::span<const double> roots_b,
                         std::span<const double> roots_c, double tol) {
  const int n = p.degree();
  const int k = static_cast<int>(roots_b.size());
  const int m = static_cast<int>(roots_c.size());
  MonicPoly b = MonicPoly::from_roots(roots_b);
  MonicPoly c = MonicPoly::from_roots(roots_c);

  double cauchy = 0.0;
  for (double a : p.coeffs()) cauchy = std::max(cauchy, std::abs(a));
  cauchy += 1.0;

  double best = split_residual(p, b, c);
  NewtonSplit out{b, c, best, best, 0};
  Eigen::MatrixXd jac(n, n);
  Eigen::VectorXd rhs(n);
  for (int it = 1; it <= 50; ++it) {
    // Rows j = 1..n: (b*c)_j - a_j. Columns: b_1..b_k, then c_1..c_m.
    const MonicPoly prod = b * c;
    for (int j = 1; j <= n; ++j) {
      rhs(j - 1) = p.coeff(j) - prod.coeff(j);
      for (int i = 1; i <= k; ++i) jac(j - 1, i - 1) = (j - i >= 0 && j - i <= m) ? c.coeff(j - i) : 0.0;
      for (int i = 1; i <= m; ++i)
        jac(j - 1, k + i - 1) = (j - i >= 0 && j - i <= k) ? b.coeff(j - i) : 0.0;
    }
    Eigen::VectorXd step = jac.partialPivLu().solve(rhs);
    if (!step.allFinite()) break;
    const double len = step.lpNorm<Eigen::Infinity>();
    if (len > cauchy) step *= cauchy / len;

    std::vector<double> nb(b.coeffs().begin(), b.coeffs().end());
    std::vector<double> nc(c.coeffs().begin(), c.coeffs().end());
    for (int i = 0; i < k; ++i) nb[i] += step(i);
    for (int i = 0; i < m; ++i) nc[i] += step(k + i);
    b = MonicPoly(std::move(nb));
    c = MonicPoly(std::move(nc));
    const double r = split_residual(p, b, c);
    const bool improved = r < out.residual;
    if (improved) {
      const bool slow = r > 0.5 * out.residual;
      out = {b, c, r, out.initial_residual, it};
      if (r == 0.0 || (r <= tol && slow)) break;
    } else if (out.residual <= tol) {
      break;
    }
  }
  return out;
}

std::vector<double> refine_normalized(const MonicPoly& q, std::vector<double> approx);

// Companion roots of q when every non-real pair x +- iy can be turned into a
// real double root x by a coefficient change (of size y^2 times the cofactor)
// inside the rounding band of q. Each merged pair contributes x twice.
std::optional<std::vector<double>> merge_rounding_pairs(const MonicPoly& q, double band) {
  const Poly f = q.to_poly();
  Eigen::VectorXd c(f.degree() + 1);
  for (int k = 0; k <= f.degree(); ++k) c(k) = f[k];
  Eigen::PolynomialSolver<double, Eigen::Dynamic> solver;
  solver.compute(c);
  std::vector<double> approx;
  double change = 0.0;
  for (const std::complex<double>& z : solver.roots()) {
    const double x = z.real();
    const double y = std::abs(z.imag());
    if (y <= 1e-12 * std::max(1.0, std::abs(x))) {
      approx.push_back(x);
      continue;
    }
    if (z.imag() < 0.0) continue;
    const Poly cof = divmod(f, Poly({x * x + y * y, -2.0 * x, 1.0})).quotient;
    change += y * y * cof.max_abs_coeff();
    approx.push_back(x);
    approx.push_back(x);
  }
  if (static_cast<int>(approx.size()) != q.degree() || change > band) return std::nullopt;
  std::sort(approx.begin(), approx.end());
  return approx;
}

Analysis analyse(const MonicPoly& p, Mode mode, bool want_roots, std::span<const double> magnitudes = {}) {
  const int n = p.degree();
  if (n == 1) return {true, 1, {-p.coeff(1)}};

  const auto rec = detail::recentre_with_noise(p, magnitudes);
  const MonicPoly& a = rec.form.reduced;
  const double shift = rec.form.shift;
  const double a2 = a.coeff(2);
  const std::vector<double>& noise = rec.noise;

  const bool coalesce = mode == Mode::kCoalesce;
  const bool zero_like = std::abs(a2) <= kZeroBand * noise[2] ||
                         (a2 > 0.0 && a2 <= kPositiveBand * noise[2]);
  if (zero_like) {
    const double band = std::max(std::abs(a2), kZeroBand * noise[2]);
    bool flat = true;
    for (int j = 3; j <= n; ++j) {
      const double allowed = std::pow(2.0 * band, 0.5 * j) + kPositiveBand * noise[j];
      if (std::abs(a.coeff(j)) > allowed) flat = false;
    }
    if (flat || coalesce) return all_at(n, -shift);
    return {false, sturm_count(rescale_by_max(a)).count, {}};
  }
  if (a2 > 0.0) {
    if (coalesce) return all_at(n, -shift);
    return {false, sturm_count(normalize_scale(rec.form)).count, {}};
  }

  const double s = std::sqrt(-a2);
  const MonicPoly q = normalize_scale(rec.form);
  const Count cnt = sturm_count(q);
  std::optional<std::vector<double>> merged;
  if (cnt.count != n) {
    double rel_noise = 0.0;
    for (int j = 3; j <= n; ++j) rel_noise = std::max(rel_noise, noise[j] / std::pow(s, j));
    if (coalesce || rel_noise > kNoiseDominated) return all_at(n, -shift);
    double band = 0.0;
    for (int j = 2; j <= n; ++j) band = std::max(band, noise[j] / std::pow(s, j));
    merged = merge_rounding_pairs(q, kPositiveBand * band);
    if (!merged) return {false, cnt.count, {}};
  }
  if (!want_roots) return {true, n, {}};

  std::vector<double> approx;
  if (merged) {
    approx = std::move(*merged);
  } else {
    for (const auto& [factor, k] : cnt.factors) {
      detail::SturmChain chain(factor, kGcdThreshold);
      for (double r : detail::isolate_real_roots(factor, chain, -cnt.radius, cnt.radius))
        for (int i = 0; i < k; ++i) approx.push_back(r);
    }
    std::sort(approx.begin(), approx.end());
  }
  if (static_cast<int>(approx.size()) != n) {
    if (coalesce) return all_at(n, -shift);
    return {false, static_cast<int>(approx.size()), {}};
  }

  std::vector<double> mu = refine_normalized(q, std::move(approx));
  Analysis out{true, n, {}};
  out.roots.reserve(n);
  for (double x : mu) out.roots.push_back(s * x - shift);
  std::sort(out.roots.begin(), out.roots.end());
  polish_on(p, out.roots);
  return out;
}

// Roots of the rescaled polynomial q (second coefficient -1, roots of order
// one). Isolated roots are polished on q directly; every cluster is split off
// as its own factor and solved again after recentring.
std::vector<double> refine_normalized(const MonicPoly& q, std::vector<double> approx) {
  const int n = q.degree();
  const Poly qp = q.to_poly();
  const double gap = (approx.back() - approx.front()) / (4.0 * n);
  std::vector<std::pair<int, int>> runs;  // [first, last]
  for (int i = 0; i < n; ++i) {
    if (i > 0 && approx[i] - approx[i - 1] < gap) runs.back().second = i;
    else runs.emplace_back(i, i);
  }

  double radius = 0.0;
  for (double a : q.coeffs()) radius = std::max(radius, std::abs(a));
  radius += 1.0;

  std::vector<double> out;
  out.reserve(n);
  for (size_t r = 0; r < runs.size(); ++r) {
    const auto [first, last] = runs[r];
    if (first == last) {
      const double x = approx[first];
      const double lo = r == 0 ? -radius : 0.5 * (approx[runs[r - 1].second] + x);
      const double hi = r + 1 == runs.size() ? radius : 0.5 * (x + approx[runs[r + 1].first]);
      const double flo = qp(lo);
      const double fhi = qp(hi);
      out.push_back((flo < 0.0) != (fhi < 0.0) ? detail::refine_bracketed_root(qp, lo, hi) : x);
      continue;
    }
    std::vector<double> inside(approx.begin() + first, approx.begin() + last + 1);
    std::vector<double> outside;
    for (int i = 0; i < n; ++i)
      if (i < first || i > last) outside.push_back(approx[i]);
    const NewtonSplit sp = newton_split(q, inside, outside, 1e-14);
    if (!(sp.residual <= 1e-10)) {
      out.insert(out.end(), inside.begin(), inside.end());
      continue;
    }
    const Analysis sub = analyse(sp.b, Mode::kCoalesce, true);
    out.insert(out.end(), sub.roots.begin(), sub.roots.end());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

HyperbolicityCertificate is_hyperbolic(const MonicPoly& p, double /*tol*/) {
  return is_hyperbolic(p, std::span<const double>{});
}

HyperbolicityCertificate is_hyperbolic(const MonicPoly& p, std::span<const double> magnitudes) {
  const Analysis a = analyse(p, Mode::kStrict, false, magnitudes);
  double maxc = 0.0;
  for (double c : p.coeffs()) maxc = std::max(maxc, std::abs(c));
  return {a.hyperbolic, a.count, 1.0 + maxc};
}

OrderedRoots ordered_roots(const MonicPoly& p, double /*tol*/) {
  return ordered_roots(p, std::span<const double>{});
}

OrderedRoots ordered_roots(const MonicPoly& p, std::span<const double> magnitudes) {
  Analysis a = analyse(p, Mode::kStrict, true, magnitudes);
  if (!a.hyperbolic) {
    throw Error(ErrorKind::kNotHyperbolic,
                "not hyperbolic: " + std::to_string(a.count) + " of " +
                    std::to_string(p.degree()) + " roots are real");
  }
  OrderedRoots out{std::move(a.roots), 0.0};
  for (double r : out.values) out.residual = std::max(out.residual, std::abs(p(r)));
  return out;
}

double default_cluster_gap(const OrderedRoots& roots) {
  if (roots.values.empty()) return 0.0;
  const double n = static_cast<double>(roots.values.size());
  return (roots.values.back() - roots.values.front()) / (4.0 * n);
}

std::vector<std::vector<int>> cluster_roots(const OrderedRoots& roots, double gap) {
  if (!(gap > 0.0)) throw Error(ErrorKind::kInvalidArgument, "cluster gap must be positive");
  std::vector<std::vector<int>> blocks;
  const auto& v = roots.values;
  for (int i = 0; i < static_cast<int>(v.size()); ++i) {
    if (i > 0 && v[i] - v[i - 1] < gap) blocks.back().push_back(i);
    else blocks.push_back({i});
  }
  return blocks;
}

double split_residual(const MonicPoly& p, const MonicPoly& b, const MonicPoly& c) {
  const MonicPoly prod = b * c;
  double err = 0.0;
  double scale = 1.0;
  for (int j = 1; j <= p.degree(); ++j) {
    err = std::max(err, std::abs(p.coeff(j) - prod.coeff(j)));
    scale = std::max(scale, std::abs(p.coeff(j)));
  }
  return err / scale;
}

SplitResult split(const MonicPoly& p, std::span<const double> roots_b,
                  std::span<const double> roots_c, double tol) {
  if (roots_b.empty() || roots_c.empty() ||
      static_cast<int>(roots_b.size() + roots_c.size()) != p.degree()) {
    throw Error(ErrorKind::kInvalidArgument,
                "split needs two nonempty blocks whose sizes add up to the degree");
  }
  double scale = 1.0;
  double closest = std::numeric_limits<double>::infinity();
  for (double x : roots_b) {
    scale = std::max(scale, std::abs(x));
    for (double y : roots_c) closest = std::min(closest, std::abs(x - y));
  }
  for (double y : roots_c) scale = std::max(scale, std::abs(y));
  if (closest <= kGcdThreshold * scale) {
    throw Error(ErrorKind::kCommonRoot, "blocks share a root; the factors would not be coprime");
  }

  const NewtonSplit ns = newton_split(p, roots_b, roots_c, tol);
  if (!(ns.residual <= tol)) {
    throw Error(ErrorKind::kNoConvergence,
                "Newton refinement of the split stalled at residual " + std::to_string(ns.residual));
  }
  return {ns.b, ns.c, ns.residual, resultant(ns.b, ns.c), ns.iters};
}

SplitResult split(const MonicPoly& p, const OrderedRoots& roots, std::span<const int> block_b,
                  std::span<const int> block_c, double tol) {
  std::vector<double> rb;
  std::vector<double> rc;
  const int n = static_cast<int>(roots.values.size());
  for (int i : block_b) {
    if (i < 0 || i >= n) throw Error(ErrorKind::kInvalidArgument, "root index out of range");
    rb.push_back(roots.values[i]);
  }
  for (int i : block_c) {
    if (i < 0 || i >= n) throw Error(ErrorKind::kInvalidArgument, "root index out of range");
    rc.push_back(roots.values[i]);
  }
  return split(p, rb, rc, tol);
}

double resultant(const MonicPoly& b, const MonicPoly& c) {
  const int m = b.degree();
  const int k = c.degree();
  Eigen::MatrixXd syl = Eigen::MatrixXd::Zero(m + k, m + k);
  for (int row = 0; row < k; ++row)
    for (int j = 0; j <= m; ++j) syl(row, row + j) = b.coeff(j);
  for (int row = 0; row < m; ++row)
    for (int j = 0; j <= k; ++j) syl(k + row, row + j) = c.coeff(j);
  return syl.fullPivLu().determinant();
}

}  // namespace hyperlip
