#pragma once

#include <string>
#include <string_view>

#include "hyperlip/bounds.hpp"
#include "hyperlip/curves.hpp"
#include "hyperlip/poly.hpp"
#include "hyperlip/realroots.hpp"
#include "hyperlip/tracking.hpp"

// Text formats. Every reader throws Error(kParse) on malformed input.
// Non-finite reals are written as JSON null and read back as +inf.
namespace hyperlip::io {

/// {"degree": n, "coeffs": [a1, ..., an]}
std::string to_json(const MonicPoly& p);
MonicPoly monic_from_json(std::string_view text);
/// One CSV row "n,a1,...,an".
std::string to_csv(const MonicPoly& p);
MonicPoly monic_from_csv(std::string_view row);
/// JSON when the first non-blank character is '{', CSV otherwise.
MonicPoly parse_monic(std::string_view text);

/// {"b": [...], "c": [...], "residual": r, "resultant": s}
std::string to_json(const SplitResult& s);
SplitResult split_from_json(std::string_view text);

/// {"degree": n, "domain": [lo, hi], "coeff_polys": [[c0, c1, ...], ...]}
std::string to_json(const CoeffCurve& c);
/// Validates hyperbolicity on `validation_points` grid nodes.
CoeffCurve curve_from_json(std::string_view text, int validation_points = kValidationPoints);

/// Curve JSON plus "root_polys" in the same ascending encoding.
std::string to_json(const GroundTruthFamily& f);
GroundTruthFamily family_from_json(std::string_view text);
/// Family JSON when "root_polys" is present, curve JSON otherwise.
CoeffCurve parse_curve(std::string_view text, int validation_points = kValidationPoints);

std::string to_json(const BoundReport& r);
BoundReport bound_report_from_json(std::string_view text);

std::string to_json(const AssumptionCheck& a);

/// Header "t,branch_1,...,branch_n", one row per node, 17 significant digits.
std::string to_csv(const RootTracks& tracks);

std::string to_json(const DerivativeDiagnostics& d);
std::string to_json(const C1Report& r);

}  // namespace hyperlip::io
