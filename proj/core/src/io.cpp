#include "hyperlip/io.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "hyperlip/error.hpp"
#include "json.hpp"

namespace hyperlip::io {

namespace {

using Json = nlohmann::ordered_json;

constexpr double kInf = std::numeric_limits<double>::infinity();

Json parse(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::kParse, std::string("malformed JSON: ") + e.what());
  }
}

template <typename Fn>
auto guarded(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("unexpected JSON layout: ") + e.what());
  }
}

Json real(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }
double real(const Json& j) { return j.is_null() ? kInf : j.get<double>(); }

Json reals(std::span<const double> v) {
  Json out = Json::array();
  for (double x : v) out.push_back(real(x));
  return out;
}

const Json& array(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::kParse, "expected a JSON array");
  return j;
}

std::vector<double> to_reals(const Json& j) {
  std::vector<double> out;
  array(j);
  for (const Json& x : j) out.push_back(real(x));
  return out;
}

Json polys(const std::vector<Poly>& ps) {
  Json out = Json::array();
  for (const Poly& p : ps) out.push_back(reals(p.coeffs()));
  return out;
}

std::vector<Poly> polys(const Json& j) {
  std::vector<Poly> out;
  array(j);
  for (const Json& p : j) out.emplace_back(to_reals(p));
  return out;
}

Json interval(const Interval& I) { return Json::array({I.lo, I.hi}); }
Interval interval(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::kParse, "interval must be a pair [lo, hi]");
  return {j[0].get<double>(), j[1].get<double>()};
}

MonicPoly monic(const Json& j) {
  const int n = j.at("degree").get<int>();
  std::vector<double> a = to_reals(j.at("coeffs"));
  if (n < 1 || static_cast<int>(a.size()) != n)
    throw Error(ErrorKind::kParse, "degree must be positive and match the number of coefficients");
  return MonicPoly(std::move(a));
}

Json curve_json(const CoeffCurve& c) {
  Json j;
  j["degree"] = c.degree();
  j["domain"] = interval(c.domain());
  j["coeff_polys"] = polys(c.coeff_polys());
  return j;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json optional_real(const std::optional<double>& v) { return v ? real(*v) : Json(nullptr); }

Json diagnostics(const DerivativeDiagnostics& d) {
  Json j;
  j["t0"] = d.t0;
  j["left"] = optional_real(d.left);
  j["right"] = optional_real(d.right);
  Json rows = Json::array();
  for (const RichardsonRow& r : d.richardson_orders) {
    Json row;
    row["h"] = r.h;
    row["left_quotient"] = optional_real(r.left_quotient);
    row["right_quotient"] = optional_real(r.right_quotient);
    row["left_extrapolated"] = optional_real(r.left_extrapolated);
    row["right_extrapolated"] = optional_real(r.right_extrapolated);
    rows.push_back(row);
  }
  j["richardson_orders"] = rows;
  j["converged"] = d.converged;
  return j;
}

}  // namespace

std::string to_json(const MonicPoly& p) {
  Json j;
  j["degree"] = p.degree();
  j["coeffs"] = reals(p.coeffs());
  return dump(j);
}

MonicPoly monic_from_json(std::string_view text) {
  const Json j = parse(text);
  return guarded([&] { return monic(j); });
}

std::string to_csv(const MonicPoly& p) {
  std::string out = std::to_string(p.degree());
  char buf[32];
  for (double a : p.coeffs()) {
    std::snprintf(buf, sizeof buf, ",%.17g", a);
    out += buf;
  }
  return out + "\n";
}

MonicPoly monic_from_csv(std::string_view row) {
  std::vector<double> values;
  std::string cell;
  std::istringstream in{std::string(row)};
  while (std::getline(in, cell, ',')) {
    size_t used = 0;
    try {
      values.push_back(std::stod(cell, &used));
    } catch (const std::exception&) {
      throw Error(ErrorKind::kParse, "CSV cell is not a number: '" + cell + "'");
    }
    if (cell.find_first_not_of(" \t\r\n", used) != std::string::npos)
      throw Error(ErrorKind::kParse, "CSV cell is not a number: '" + cell + "'");
  }
  if (values.size() < 2) throw Error(ErrorKind::kParse, "CSV row needs the degree and at least one coefficient");
  const double n = values.front();
  if (n != std::floor(n) || n < 1 || static_cast<size_t>(n) + 1 != values.size())
    throw Error(ErrorKind::kParse, "CSV degree does not match the number of coefficients");
  return MonicPoly(std::vector<double>(values.begin() + 1, values.end()));
}

MonicPoly parse_monic(std::string_view text) {
  const size_t first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw Error(ErrorKind::kParse, "empty polynomial input");
  if (text[first] == '{') return monic_from_json(text);
  const size_t eol = text.find('\n', first);
  return monic_from_csv(text.substr(first, eol == std::string_view::npos ? eol : eol - first));
}

std::string to_json(const SplitResult& s) {
  Json j;
  j["b"] = reals(s.factor_b.coeffs());
  j["c"] = reals(s.factor_c.coeffs());
  j["residual"] = real(s.residual);
  j["resultant"] = real(s.resultant_bc);
  return dump(j);
}

SplitResult split_from_json(std::string_view text) {
  const Json j = parse(text);
  return guarded([&] {
    SplitResult s;
    s.factor_b = MonicPoly(to_reals(j.at("b")));
    s.factor_c = MonicPoly(to_reals(j.at("c")));
    s.residual = real(j.at("residual"));
    s.resultant_bc = real(j.at("resultant"));
    return s;
  });
}

std::string to_json(const CoeffCurve& c) { return dump(curve_json(c)); }

CoeffCurve curve_from_json(std::string_view text, int validation_points) {
  const Json j = parse(text);
  auto [coeffs, domain] = guarded([&] {
    std::vector<Poly> cp = polys(j.at("coeff_polys"));
    if (j.at("degree").get<int>() != static_cast<int>(cp.size()))
      throw Error(ErrorKind::kParse, "degree does not match the number of coefficient polynomials");
    return std::pair{std::move(cp), interval(j.at("domain"))};
  });
  return make_curve(std::move(coeffs), domain, validation_points);
}

std::string to_json(const GroundTruthFamily& f) {
  Json j = curve_json(f.curve);
  j["root_polys"] = polys(f.root_polys);
  return dump(j);
}

GroundTruthFamily family_from_json(std::string_view text) {
  const Json j = parse(text);
  auto [roots, domain] = guarded([&] { return std::pair{polys(j.at("root_polys")), interval(j.at("domain"))}; });
  return from_root_functions(std::move(roots), domain);
}

CoeffCurve parse_curve(std::string_view text, int validation_points) {
  const Json j = parse(text);
  if (j.is_object() && j.contains("root_polys")) return family_from_json(text).curve;
  return curve_from_json(text, validation_points);
}

std::string to_json(const BoundReport& r) {
  Json j;
  j["n"] = r.n;
  j["p"] = r.p;
  j["I0"] = interval(r.I0);
  j["I1"] = interval(r.I1);
  j["delta"] = real(r.delta);
  j["sup_a2"] = real(r.sup_a2);
  j["lip_a2p"] = real(r.lip_a2p);
  j["M"] = reals(r.M);
  j["m2"] = real(r.m2);
  j["A1"] = real(r.A1);
  j["A2"] = real(r.A2);
  j["A0"] = real(r.A0);
  j["A2_argmax"] = r.A2_argmax;
  j["alpha_I"] = optional_real(r.alpha_I);
  j["alpha_unbounded"] = r.alpha_unbounded;
  j["bracket"] = real(r.bracket);
  j["coarse_root"] = real(r.coarse_root);
  j["coarse_affine"] = real(r.coarse_affine);
  return dump(j);
}

BoundReport bound_report_from_json(std::string_view text) {
  const Json j = parse(text);
  return guarded([&] {
    BoundReport r;
    r.n = j.at("n").get<int>();
    r.p = j.at("p").get<int>();
    r.I0 = interval(j.at("I0"));
    r.I1 = interval(j.at("I1"));
    r.delta = real(j.at("delta"));
    r.sup_a2 = real(j.at("sup_a2"));
    r.lip_a2p = real(j.at("lip_a2p"));
    r.M = to_reals(j.at("M"));
    r.m2 = real(j.at("m2"));
    r.A1 = real(j.at("A1"));
    r.A2 = real(j.at("A2"));
    r.A0 = real(j.at("A0"));
    r.A2_argmax = j.at("A2_argmax").get<int>();
    if (!j.at("alpha_I").is_null() || j.at("alpha_unbounded").get<bool>()) r.alpha_I = real(j.at("alpha_I"));
    r.alpha_unbounded = j.at("alpha_unbounded").get<bool>();
    r.bracket = real(j.at("bracket"));
    r.coarse_root = real(j.at("coarse_root"));
    r.coarse_affine = real(j.at("coarse_affine"));
    return r;
  });
}

std::string to_json(const AssumptionCheck& a) {
  Json j;
  j["t0"] = a.t0;
  j["radius"] = real(a.radius);
  j["a1_ok"] = a.a1_ok;
  j["a2_ratio_ok"] = a.a2_ratio_ok;
  j["deriv_ok"] = a.deriv_ok;
  j["worst_ratio"] = real(a.worst_ratio);
  j["c_hat"] = real(a.c_hat);
  j["worst_deriv_margin"] = real(a.worst_deriv_margin);
  return dump(j);
}

std::string to_csv(const RootTracks& tracks) {
  std::string out = "t";
  for (size_t j = 0; j < tracks.branches.size(); ++j) out += ",branch_" + std::to_string(j + 1);
  out += "\n";
  char buf[32];
  for (size_t k = 0; k < tracks.grid.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", tracks.grid[k]);
    out += buf;
    for (const auto& b : tracks.branches) {
      std::snprintf(buf, sizeof buf, ",%.17g", b[k]);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

std::string to_json(const DerivativeDiagnostics& d) { return dump(diagnostics(d)); }

std::string to_json(const C1Report& r) {
  Json j;
  Json pts = Json::array();
  for (const C1Point& p : r.points) {
    Json e;
    e["t0"] = p.t0;
    e["branch"] = p.branch + 1;
    e["derivatives"] = diagnostics(p.at_t0);
    e["left_limit"] = optional_real(p.left_limit);
    e["right_limit"] = optional_real(p.right_limit);
    e["mismatch"] = real(p.mismatch);
    pts.push_back(e);
  }
  j["points"] = pts;
  j["max_mismatch"] = real(r.max_mismatch);
  j["all_converged"] = r.all_converged;
  return dump(j);
}

}  // namespace hyperlip::io
