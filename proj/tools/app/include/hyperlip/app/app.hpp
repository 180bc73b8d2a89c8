#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hyperlip/curves.hpp"

namespace hyperlip::app {

enum class Command { kCertify, kRoots, kTschirn, kSplit, kBound, kTrack, kC1Check, kVerify, kCalibrate };

inline constexpr Interval kDefaultI0{-0.5, 0.5};
inline constexpr Interval kDefaultI1{-1.0, 1.0};

struct RunConfig {
  Command command = Command::kCertify;
  std::string input_path;
  std::string output_path;
  int grid_n = 2048;
  double tol = 1e-10;
  std::optional<int> p;
  std::optional<Interval> I0;
  std::optional<Interval> I1;
  std::uint64_t seed = 0;
  /// calibrate only.
  int n = 3;
  int families = 100;
  /// track only: follow roots through crossings instead of sorting.
  bool matched = false;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitDomain = 2;

/// Runs one command. Reports go to --output when given and to `out`
/// otherwise; diagnostics go to `err`. Returns the process exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv with CLI11 and runs the command.
int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err);

// ---------------------------------------------------------------------------
// Calibration of the empirical Lipschitz / bracket ratio.

/// Family `index` of a seeded batch: n root polynomials of degree 0..4 with
/// coefficients uniform in [-2, 2] on the domain [-1, 1]. Each family has its
/// own generator seeded by (seed, index), so a batch is a prefix of any
/// larger batch with the same seed.
GroundTruthFamily random_family(int n, std::uint64_t seed, int index);

struct CalibrationOptions {
  int n = 3;
  int p = 3;
  int families = 100;
  std::uint64_t seed = 0;
  int grid_n = 2048;
  Interval I0 = kDefaultI0;
  Interval I1 = kDefaultI1;
};

struct CalibrationRow {
  int index = 0;
  double empirical = 0.0;
  double bracket = 0.0;
  /// empirical / bracket; 0 when both vanish, absent when the bound is
  /// unavailable for this family.
  std::optional<double> ratio;
};

struct CalibrationTable {
  CalibrationOptions options;
  std::vector<CalibrationRow> rows;
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
  /// Max over the first half of the families.
  double max_first_half = 0.0;
  /// max / max_first_half - 1 (0 when both vanish).
  double growth = 0.0;
  /// growth < 10%.
  bool stable = true;
};

/// Empirical Lipschitz constant of the recentred roots on I0 (the roots minus
/// their mean, which is what the bracket controls) over grid_n steps.
double recentred_lipschitz(const CoeffCurve& curve, const Interval& I0, int grid_n);

/// The bracket for p == n, or the lower-multiplicity bracket for p < n.
double bracket_for(const CoeffCurve& curve, const Interval& I0, const Interval& I1, int p);

CalibrationTable calibrate(const CalibrationOptions& options);

std::string to_json(const CalibrationTable& table);
std::string to_csv(const CalibrationTable& table);

}  // namespace hyperlip::app
