#pragma once

#include <optional>
#include <span>
#include <vector>

#include "hyperlip/curves.hpp"

namespace hyperlip {

/// N + 1 equispaced nodes lo + k (hi - lo) / N; the last node is hi exactly.
/// Throws Error(kInvalidN) for N < 1.
std::vector<double> sample_grid(const Interval& I, int N);

enum class TrackMode { kOrdered, kMatched };

struct RootTracks {
  std::vector<double> grid;
  /// branches[j][k] is branch j at grid[k].
  std::vector<std::vector<double>> branches;
  TrackMode mode = TrackMode::kOrdered;
  /// max over nodes of the root residual |P(root)|.
  double max_residual = 0.0;
};

/// Branch j is the j-th smallest root at every node. Throws
/// Error(kNotHyperbolic) carrying the offending node.
RootTracks track_ordered(const CoeffCurve& curve, std::span<const double> grid);

/// Continuous system of roots on the grid. Each branch is extrapolated from
/// its last three values and the new roots are assigned to the predictions by
/// the assignment of least total absolute movement (sorted order against
/// sorted order; equal predictions keep branch order).
RootTracks track_matched(const CoeffCurve& curve, std::span<const double> grid);

struct LipschitzEstimate {
  std::vector<double> per_branch;
  double overall = 0.0;
};

/// Max |Delta branch| / |Delta t| over consecutive nodes.
LipschitzEstimate empirical_lipschitz(const RootTracks& tracks);

/// Overall empirical Lipschitz constant restricted to each piece between
/// consecutive cut points; cuts must be grid nodes. Pieces with fewer than two
/// nodes report 0.
std::vector<double> piecewise_lipschitz(const RootTracks& tracks, std::span<const double> cuts);

/// Merges extra nodes into a sorted grid, dropping duplicates.
std::vector<double> insert_nodes(std::span<const double> grid, std::span<const double> extra);

struct BranchSelector {
  TrackMode mode = TrackMode::kOrdered;
  /// 0-based. For kMatched, branches are numbered by order at the left end
  /// of the local window and followed through it.
  int branch = 0;
};

inline constexpr double kRichardsonTol = 1e-4;

struct RichardsonRow {
  double h = 0.0;
  std::optional<double> left_quotient;
  std::optional<double> right_quotient;
  std::optional<double> left_extrapolated;
  std::optional<double> right_extrapolated;
};

struct DerivativeDiagnostics {
  double t0 = 0.0;
  std::optional<double> left;
  std::optional<double> right;
  /// Steps h0, h0/2, h0/4, h0/8 with raw quotients and Richardson values
  /// 2 D(h) - D(2h) (from the second row on).
  std::vector<RichardsonRow> richardson_orders;
  /// Every available side has its last two extrapolations within tol.
  bool converged = false;
};

/// One-sided difference quotients of the selected root branch at t0. A side
/// whose stencil leaves the domain is absent. Non-convergence is reported,
/// never thrown.
DerivativeDiagnostics one_sided_derivatives(const CoeffCurve& curve, BranchSelector branch,
                                            double t0, double h0, double tol = kRichardsonTol);

struct C1Point {
  double t0 = 0.0;
  int branch = 0;
  DerivativeDiagnostics at_t0;
  /// Left derivative at t0 - eps and right derivative at t0 + eps for the
  /// smallest neighbourhood radius eps.
  std::optional<double> left_limit;
  std::optional<double> right_limit;
  double mismatch = 0.0;
};

struct C1Report {
  std::vector<C1Point> points;
  double max_mismatch = 0.0;
  bool all_converged = true;
};

/// For every ordered branch and every t0, compares the one-sided derivatives
/// at t0 with the derivatives on the matching side at radii 4h, 2h, h, where
/// h is the smallest grid spacing.
C1Report c1_report(const CoeffCurve& curve, std::span<const double> grid,
                   std::span<const double> t0_list, double tol = kRichardsonTol);

}  // namespace hyperlip
