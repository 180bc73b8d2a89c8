#include "hyperlip/tracking.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "hyperlip/error.hpp"
#include "hyperlip/realroots.hpp"

namespace hyperlip {

namespace {

// Sub-steps per h0 in the local matched window; a multiple of 8 so that every
// Richardson step lands on a node.
constexpr int kWindowSteps = 64;

void check_grid(std::span<const double> grid) {
  if (grid.empty()) throw Error(ErrorKind::kInvalidN, "empty grid");
  for (size_t k = 1; k < grid.size(); ++k)
    if (!(grid[k] > grid[k - 1])) throw Error(ErrorKind::kInvalidArgument, "grid must be strictly increasing", grid[k]);
}

OrderedRoots roots_at(const CoeffCurve& curve, double t) {
  try {
    return ordered_roots(eval_curve(curve, t), eval_curve_magnitudes(curve, t));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kNotHyperbolic || e.kind() == ErrorKind::kIllConditioned)
      throw Error(e.kind(), std::string(e.what()) + " at t = " + std::to_string(t), t);
    throw;
  }
}

// Lagrange extrapolation to t from up to three previous nodes of one branch.
double predict(std::span<const double> ts, const std::vector<double>& vs, size_t k, double t) {
  const size_t m = std::min<size_t>(k, 3);
  double out = 0.0;
  for (size_t a = k - m; a < k; ++a) {
    double w = 1.0;
    for (size_t b = k - m; b < k; ++b)
      if (b != a) w *= (t - ts[b]) / (ts[a] - ts[b]);
    out += w * vs[a];
  }
  return out;
}

struct SideEstimate {
  std::array<double, 4> quotient{};
  std::array<double, 3> extrapolated{};
  bool converged = false;
};

SideEstimate richardson(const std::array<double, 4>& q, double tol) {
  SideEstimate s;
  s.quotient = q;
  for (int i = 1; i < 4; ++i) s.extrapolated[i - 1] = 2.0 * q[i] - q[i - 1];
  s.converged = std::abs(s.extrapolated[2] - s.extrapolated[1]) < tol;
  return s;
}

}  // namespace

std::vector<double> sample_grid(const Interval& I, int N) {
  if (N < 1) throw Error(ErrorKind::kInvalidN, "grid needs N >= 1 steps");
  std::vector<double> out(N + 1);
  for (int k = 0; k <= N; ++k) out[k] = k == N ? I.hi : I.lo + k * (I.length() / N);
  return out;
}

RootTracks track_ordered(const CoeffCurve& curve, std::span<const double> grid) {
  check_grid(grid);
  RootTracks out;
  out.grid.assign(grid.begin(), grid.end());
  out.mode = TrackMode::kOrdered;
  out.branches.assign(curve.degree(), std::vector<double>(grid.size()));
  for (size_t k = 0; k < grid.size(); ++k) {
    const OrderedRoots r = roots_at(curve, grid[k]);
    for (int j = 0; j < curve.degree(); ++j) out.branches[j][k] = r.values[j];
    out.max_residual = std::max(out.max_residual, r.residual);
  }
  return out;
}

namespace {

// dr/dt = -P_t(r) / P_Z(r) at simple roots, 0 at multiple ones. Seeds the
// first prediction, which has no history to extrapolate from.
std::vector<double> root_velocities(const CoeffCurve& curve, double t, std::span<const double> roots) {
  const int n = curve.degree();
  std::vector<double> dt(n + 1, 0.0);
  for (int j = 1; j <= n; ++j) dt[j] = curve.coeff(j).derivative()(t);
  const MonicPoly p = eval_curve(curve, t);
  const Poly dz = derivative_poly(p);
  std::vector<double> out;
  for (double r : roots) {
    double pt = 0.0;
    for (int j = 1; j <= n; ++j) pt = pt * r + dt[j];
    const double pz = dz(r);
    out.push_back(pz != 0.0 && std::isfinite(pt / pz) ? -pt / pz : 0.0);
  }
  return out;
}

}  // namespace

RootTracks track_matched(const CoeffCurve& curve, std::span<const double> grid) {
  check_grid(grid);
  const int n = curve.degree();
  RootTracks out;
  out.grid.assign(grid.begin(), grid.end());
  out.mode = TrackMode::kMatched;
  out.branches.assign(n, std::vector<double>(grid.size()));
  std::vector<double> pred(n);
  std::vector<double> velocity;
  std::vector<int> order(n);
  for (size_t k = 0; k < grid.size(); ++k) {
    const OrderedRoots r = roots_at(curve, grid[k]);
    out.max_residual = std::max(out.max_residual, r.residual);
    if (k == 0) {
      for (int j = 0; j < n; ++j) out.branches[j][0] = r.values[j];
      velocity = root_velocities(curve, grid[0], r.values);
      continue;
    }
    for (int j = 0; j < n; ++j)
      pred[j] = k == 1 ? out.branches[j][0] + velocity[j] * (grid[1] - grid[0])
                       : predict(grid, out.branches[j], k, grid[k]);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return pred[a] < pred[b]; });
    for (int i = 0; i < n; ++i) out.branches[order[i]][k] = r.values[i];
  }
  return out;
}

LipschitzEstimate empirical_lipschitz(const RootTracks& tracks) {
  if (tracks.grid.size() < 2) throw Error(ErrorKind::kInvalidN, "Lipschitz estimate needs at least two nodes");
  LipschitzEstimate out;
  for (const auto& b : tracks.branches) {
    double best = 0.0;
    for (size_t k = 1; k < b.size(); ++k)
      best = std::max(best, std::abs(b[k] - b[k - 1]) / (tracks.grid[k] - tracks.grid[k - 1]));
    out.per_branch.push_back(best);
    out.overall = std::max(out.overall, best);
  }
  return out;
}

std::vector<double> piecewise_lipschitz(const RootTracks& tracks, std::span<const double> cuts) {
  const auto& g = tracks.grid;
  std::vector<size_t> bounds{0};
  for (double c : cuts) {
    if (c <= g.front() || c >= g.back()) continue;
    const auto it = std::lower_bound(g.begin(), g.end(), c);
    if (it == g.end() || *it != c) throw Error(ErrorKind::kInvalidArgument, "cut point is not a grid node", c);
    bounds.push_back(static_cast<size_t>(it - g.begin()));
  }
  bounds.push_back(g.size() - 1);
  std::sort(bounds.begin(), bounds.end());
  bounds.erase(std::unique(bounds.begin(), bounds.end()), bounds.end());

  std::vector<double> out;
  for (size_t p = 0; p + 1 < bounds.size(); ++p) {
    double best = 0.0;
    for (const auto& b : tracks.branches)
      for (size_t k = bounds[p] + 1; k <= bounds[p + 1]; ++k)
        best = std::max(best, std::abs(b[k] - b[k - 1]) / (g[k] - g[k - 1]));
    out.push_back(best);
  }
  return out;
}

std::vector<double> insert_nodes(std::span<const double> grid, std::span<const double> extra) {
  std::vector<double> out(grid.begin(), grid.end());
  out.insert(out.end(), extra.begin(), extra.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

DerivativeDiagnostics one_sided_derivatives(const CoeffCurve& curve, BranchSelector sel, double t0,
                                            double h0, double tol) {
  if (!(h0 > 0.0)) throw Error(ErrorKind::kInvalidArgument, "h0 must be positive");
  if (sel.branch < 0 || sel.branch >= curve.degree())
    throw Error(ErrorKind::kInvalidArgument, "branch index out of range");
  const Interval& dom = curve.domain();
  if (!dom.contains(t0)) throw Error(ErrorKind::kOutOfDomain, "t0 outside the curve domain", t0);
  const bool has_left = t0 - h0 >= dom.lo;
  const bool has_right = t0 + h0 <= dom.hi;

  // value(k): branch value at t0 + k h0 / kWindowSteps.
  std::vector<double> window_t;
  std::vector<double> window_v;
  int k_first = 0;
  if (sel.mode == TrackMode::kMatched) {
    k_first = has_left ? -kWindowSteps : 0;
    const int k_last = has_right ? kWindowSteps : 0;
    for (int k = k_first; k <= k_last; ++k) window_t.push_back(t0 + k * (h0 / kWindowSteps));
    window_v = track_matched(curve, window_t).branches[sel.branch];
  }
  auto node = [&](int k) -> std::pair<double, double> {
    if (sel.mode == TrackMode::kMatched) return {window_t[k - k_first], window_v[k - k_first]};
    const double t = t0 + k * (h0 / kWindowSteps);
    return {t, roots_at(curve, t).values[sel.branch]};
  };

  DerivativeDiagnostics out;
  out.t0 = t0;
  out.richardson_orders.resize(4);
  const double v0 = node(0).second;
  std::optional<SideEstimate> left, right;
  for (int side : {-1, 1}) {
    if ((side < 0 && !has_left) || (side > 0 && !has_right)) continue;
    std::array<double, 4> q{};
    for (int i = 0; i < 4; ++i) {
      const auto [t, v] = node(side * (kWindowSteps >> i));
      q[i] = (v - v0) / (t - t0);
    }
    (side < 0 ? left : right) = richardson(q, tol);
  }
  for (int i = 0; i < 4; ++i) {
    RichardsonRow& row = out.richardson_orders[i];
    row.h = h0 / (1 << i);
    if (left) row.left_quotient = left->quotient[i];
    if (right) row.right_quotient = right->quotient[i];
    if (i > 0 && left) row.left_extrapolated = left->extrapolated[i - 1];
    if (i > 0 && right) row.right_extrapolated = right->extrapolated[i - 1];
  }
  if (left) out.left = left->extrapolated[2];
  if (right) out.right = right->extrapolated[2];
  out.converged = (left || right) && (!left || left->converged) && (!right || right->converged);
  return out;
}

C1Report c1_report(const CoeffCurve& curve, std::span<const double> grid, std::span<const double> t0_list,
                   double tol) {
  check_grid(grid);
  double h = curve.domain().length();
  for (size_t k = 1; k < grid.size(); ++k) h = std::min(h, grid[k] - grid[k - 1]);
  const Interval& dom = curve.domain();

  C1Report out;
  for (double t0 : t0_list) {
    for (int j = 0; j < curve.degree(); ++j) {
      C1Point pt;
      pt.t0 = t0;
      pt.branch = j;
      pt.at_t0 = one_sided_derivatives(curve, {TrackMode::kOrdered, j}, t0, h, tol);
      out.all_converged = out.all_converged && pt.at_t0.converged;
      for (double eps : {4.0 * h, 2.0 * h, h}) {
        if (pt.at_t0.left && t0 - 1.5 * eps >= dom.lo)
          pt.left_limit = one_sided_derivatives(curve, {TrackMode::kOrdered, j}, t0 - eps, 0.5 * eps, tol).left;
        if (pt.at_t0.right && t0 + 1.5 * eps <= dom.hi)
          pt.right_limit = one_sided_derivatives(curve, {TrackMode::kOrdered, j}, t0 + eps, 0.5 * eps, tol).right;
      }
      if (pt.left_limit) pt.mismatch = std::max(pt.mismatch, std::abs(*pt.left_limit - *pt.at_t0.left));
      if (pt.right_limit) pt.mismatch = std::max(pt.mismatch, std::abs(*pt.right_limit - *pt.at_t0.right));
      out.max_mismatch = std::max(out.max_mismatch, pt.mismatch);
      out.points.push_back(std::move(pt));
    }
  }
  return out;
}

}  // namespace hyperlip
