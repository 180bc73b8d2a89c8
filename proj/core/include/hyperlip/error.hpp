#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperlip {

enum class ErrorKind {
  kDegenerateScale,
  kIllConditioned,
  kNotHyperbolic,
  kCommonRoot,
  kNoConvergence,
  kNotHyperbolicOnDomain,
  kOutOfDomain,
  kBadIntervals,
  kZeroA2,
  kDegenerateM2,
  kHypothesisFailed,
  kInvalidN,
  kInvalidArgument,
  kParse,
};

std::string_view to_string(ErrorKind kind);

// Domain error raised by every library operation. `where` carries the
// offending parameter value (a time t, a grid node) when one exists.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what,
        std::optional<double> where = std::nullopt)
      : std::runtime_error(what), kind_(kind), where_(where) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<double> where() const noexcept { return where_; }

 private:
  ErrorKind kind_;
  std::optional<double> where_;
};

}  // namespace hyperlip
