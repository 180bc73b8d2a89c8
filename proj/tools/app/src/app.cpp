#include "hyperlip/app/app.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "hyperlip/bounds.hpp"
#include "hyperlip/error.hpp"
#include "hyperlip/io.hpp"
#include "hyperlip/realroots.hpp"
#include "hyperlip/tracking.hpp"
#include "json.hpp"

namespace hyperlip::app {

namespace {

using Json = nlohmann::ordered_json;

constexpr int kProbePoints = 64;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  if (path.empty()) throw IoError("--input is required for this command");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(cfg.output_path, std::ios::binary);
  if (!f || !(f << text)) throw IoError("cannot write " + cfg.output_path);
}

Json real(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Interval I0_of(const RunConfig& c) { return c.I0.value_or(kDefaultI0); }
Interval I1_of(const RunConfig& c) { return c.I1.value_or(kDefaultI1); }

// Condition text per error kind, prefixed to the library message.
std::string_view condition(ErrorKind k) {
  switch (k) {
    case ErrorKind::kNotHyperbolic: return "not hyperbolic: the polynomial has non-real roots";
    case ErrorKind::kNotHyperbolicOnDomain: return "not hyperbolic: the curve leaves the hyperbolic polynomials";
    case ErrorKind::kDegenerateM2: return "m2 = 0: lower-multiplicity bound unavailable";
    case ErrorKind::kZeroA2: return "a2(t0) = 0: assumption interval is empty";
    case ErrorKind::kBadIntervals: return "intervals must satisfy I0 strictly inside I1 inside the domain";
    case ErrorKind::kCommonRoot: return "blocks share a root: the split is not well posed";
    case ErrorKind::kHypothesisFailed: return "lemma hypothesis violated";
    default: return to_string(k);
  }
}

int cmd_certify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const MonicPoly p = io::parse_monic(read_file(c.input_path));
  const HyperbolicityCertificate cert = is_hyperbolic(p, c.tol);
  Json j;
  j["is_hyperbolic"] = cert.is_hyperbolic;
  j["real_root_count"] = cert.real_root_count;
  j["degree"] = p.degree();
  j["cauchy_radius"] = cert.cauchy_radius;
  emit(c, out, dump(j));
  if (!cert.is_hyperbolic) {
    err << "error: not hyperbolic: " << cert.real_root_count << " of " << p.degree() << " roots are real\n";
    return kExitDomain;
  }
  return kExitOk;
}

int cmd_roots(const RunConfig& c, std::ostream& out) {
  const OrderedRoots r = ordered_roots(io::parse_monic(read_file(c.input_path)), c.tol);
  Json j;
  j["roots"] = r.values;
  j["residual"] = r.residual;
  emit(c, out, dump(j));
  return kExitOk;
}

int cmd_tschirn(const RunConfig& c, std::ostream& out) {
  const TschirnForm t = tschirnhausen(io::parse_monic(read_file(c.input_path)));
  Json j;
  j["shift"] = t.shift;
  j["reduced"] = Json::parse(io::to_json(t.reduced));
  if (t.reduced.degree() >= 2 && t.reduced.coeff(2) != 0.0)
    j["normalized"] = Json::parse(io::to_json(normalize_scale(t)));
  else
    j["normalized"] = nullptr;
  emit(c, out, dump(j));
  return kExitOk;
}

int cmd_split(const RunConfig& c, std::ostream& out) {
  const std::string text = read_file(c.input_path);
  const MonicPoly p = io::parse_monic(text);
  const OrderedRoots roots = ordered_roots(p, c.tol);
  std::vector<int> b, cc;
  const Json j = text.find('{') != std::string::npos ? Json::parse(text, nullptr, false) : Json();
  if (j.is_object() && j.contains("blocks")) {
    if (!j["blocks"].is_array() || j["blocks"].size() != 2) throw Error(ErrorKind::kParse, "blocks must be two index lists");
    for (const Json& i : j["blocks"][0]) b.push_back(i.get<int>());
    for (const Json& i : j["blocks"][1]) cc.push_back(i.get<int>());
    for (int i : b)
      if (i < 0 || i >= p.degree()) throw Error(ErrorKind::kParse, "block index out of range");
    for (int i : cc)
      if (i < 0 || i >= p.degree()) throw Error(ErrorKind::kParse, "block index out of range");
  } else {
    const auto blocks = cluster_roots(roots, default_cluster_gap(roots));
    if (blocks.size() < 2) throw Error(ErrorKind::kCommonRoot, "all roots form a single cluster");
    b = blocks.front();
    for (size_t k = 1; k < blocks.size(); ++k) cc.insert(cc.end(), blocks[k].begin(), blocks[k].end());
  }
  emit(c, out, io::to_json(split(p, roots, b, cc, std::max(c.tol, 1e-12))));
  return kExitOk;
}

std::string bound_table(const BoundReport& r) {
  std::string s;
  auto row = [&](const std::string& name, double v) { s += name + "\t" + (std::isfinite(v) ? fmt(v) : "inf") + "\n"; };
  row("n", r.n);
  row("p", r.p);
  row("delta", r.delta);
  row("sup_a2", r.sup_a2);
  row("lip_a2p", r.lip_a2p);
  for (size_t i = 0; i < r.M.size(); ++i) row("M_" + std::to_string(i + 2), r.M[i]);
  row("m2", r.m2);
  row("A1", r.A1);
  row("A2", r.A2);
  row("A0", r.A0);
  if (r.alpha_I) row("alpha_I", *r.alpha_I);
  row("bracket", r.bracket);
  row("coarse_root", r.coarse_root);
  row("coarse_affine", r.coarse_affine);
  return s;
}

BoundReport bound_report(const CoeffCurve& curve, const RunConfig& c) {
  const int p = c.p.value_or(curve.degree());
  if (p == curve.degree()) return bronshtein_bound(curve, I0_of(c), I1_of(c));
  return bound_lower_multiplicity(curve, I0_of(c), I1_of(c), p, c.grid_n);
}

int cmd_bound(const RunConfig& c, std::ostream& out) {
  const CoeffCurve curve = io::parse_curve(read_file(c.input_path));
  const BoundReport r = bound_report(curve, c);
  if (c.output_path.empty()) {
    out << bound_table(r);
  } else {
    emit(c, out, io::to_json(r));
  }
  return kExitOk;
}

int cmd_track(const RunConfig& c, std::ostream& out) {
  const CoeffCurve curve = io::parse_curve(read_file(c.input_path));
  const Interval I = c.I0.value_or(curve.domain());
  const auto grid = sample_grid(I, c.grid_n);
  emit(c, out, io::to_csv(c.matched ? track_matched(curve, grid) : track_ordered(curve, grid)));
  return kExitOk;
}

int cmd_c1check(const RunConfig& c, std::ostream& out) {
  const CoeffCurve curve = io::parse_curve(read_file(c.input_path));
  const Interval I = c.I0.value_or(curve.domain());
  const auto probes = sample_grid({I.lo + 0.05 * I.length(), I.hi - 0.05 * I.length()}, kProbePoints - 1);
  emit(c, out, io::to_json(c1_report(curve, sample_grid(I, c.grid_n), probes)));
  return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const CoeffCurve curve = io::parse_curve(read_file(c.input_path));
  const Interval I0 = I0_of(c), I1 = I1_of(c);
  const BoundReport r = bound_report(curve, c);
  const auto grid = sample_grid(I0, c.grid_n);
  const double lip = empirical_lipschitz(track_ordered(curve, grid)).overall;
  const double rlip = recentred_lipschitz(curve, I0, c.grid_n);

  Json assumption;
  int checked = 0;
  bool a1 = true, a2 = true;
  double c_hat = 0.0;
  if (r.p == r.n) {
    for (double t0 : sample_grid(I0, kProbePoints - 1)) {
      if (curve.tschirn(2)(t0) == 0.0) continue;
      const AssumptionCheck a = check_assumption(curve, I0, I1, r.A0, t0);
      ++checked;
      a1 = a1 && a.a1_ok;
      a2 = a2 && a.a2_ratio_ok;
      c_hat = std::max(c_hat, a.c_hat);
    }
  }
  assumption["points"] = checked;
  assumption["all_a1_ok"] = a1;
  assumption["all_a2_ratio_ok"] = a2;
  assumption["c_hat_max"] = real(c_hat);

  const auto probes = sample_grid({I0.lo, I0.hi}, 15);
  const C1Report c1 = c1_report(curve, sample_grid(I0, c.grid_n), probes);

  Json j;
  j["hyperbolic_on_domain"] = true;
  j["bound"] = Json::parse(io::to_json(r));
  j["empirical_lipschitz"] = lip;
  j["recentred_lipschitz"] = rlip;
  j["ratio"] = r.bracket > 0.0 ? real(rlip / r.bracket) : (rlip == 0.0 ? Json(0.0) : Json(nullptr));
  j["assumption"] = assumption;
  j["c1"] = {{"max_mismatch", real(c1.max_mismatch)}, {"all_converged", c1.all_converged}};
  emit(c, out, dump(j));
  return kExitOk;
}

int cmd_calibrate(const RunConfig& c, std::ostream& out) {
  if (c.n < 2 || c.n > 6) throw Error(ErrorKind::kInvalidArgument, "calibrate needs 2 <= n <= 6");
  if (c.families < 1) throw Error(ErrorKind::kInvalidN, "calibrate needs at least one family");
  CalibrationOptions o;
  o.n = c.n;
  o.p = c.p.value_or(c.n);
  if (o.p < 2 || o.p > o.n) throw Error(ErrorKind::kInvalidArgument, "calibrate needs 2 <= p <= n");
  o.families = c.families;
  o.seed = c.seed;
  o.grid_n = c.grid_n;
  o.I0 = I0_of(c);
  o.I1 = I1_of(c);
  const CalibrationTable t = calibrate(o);
  const bool csv = c.output_path.size() >= 4 && c.output_path.compare(c.output_path.size() - 4, 4, ".csv") == 0;
  emit(c, out, csv ? to_csv(t) : to_json(t));
  return kExitOk;
}

Interval parse_interval(const std::string& s) {
  const size_t comma = s.find(',');
  if (comma == std::string::npos) throw CLI::ValidationError("interval", "expected a,b but got '" + s + "'");
  try {
    size_t used_a = 0, used_b = 0;
    const std::string a = s.substr(0, comma), b = s.substr(comma + 1);
    const Interval I{std::stod(a, &used_a), std::stod(b, &used_b)};
    if (used_a != a.size() || used_b != b.size()) throw std::invalid_argument(s);
    if (!(I.lo < I.hi)) throw CLI::ValidationError("interval", "need a < b in '" + s + "'");
    return I;
  } catch (const std::logic_error&) {
    throw CLI::ValidationError("interval", "expected a,b but got '" + s + "'");
  }
}

}  // namespace

GroundTruthFamily random_family(int n, std::uint64_t seed, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  std::uniform_int_distribution<int> degree(0, 4);
  std::uniform_real_distribution<double> coeff(-2.0, 2.0);
  std::vector<Poly> roots;
  for (int j = 0; j < n; ++j) {
    std::vector<double> c(degree(rng) + 1);
    for (double& x : c) x = coeff(rng);
    roots.emplace_back(std::move(c));
  }
  return from_root_functions(std::move(roots), kDefaultI1);
}

double recentred_lipschitz(const CoeffCurve& curve, const Interval& I0, int grid_n) {
  RootTracks tracks = track_ordered(curve, sample_grid(I0, grid_n));
  const Poly shift = curve.coeff(1) * (1.0 / curve.degree());
  for (auto& b : tracks.branches)
    for (size_t k = 0; k < b.size(); ++k) b[k] += shift(tracks.grid[k]);
  return empirical_lipschitz(tracks).overall;
}

double bracket_for(const CoeffCurve& curve, const Interval& I0, const Interval& I1, int p) {
  if (p == curve.degree()) return bronshtein_bound(curve, I0, I1).bracket;
  return bound_lower_multiplicity(curve, I0, I1, p).bracket;
}

CalibrationTable calibrate(const CalibrationOptions& o) {
  CalibrationTable t;
  t.options = o;
  std::vector<double> ratios;
  for (int i = 0; i < o.families; ++i) {
    const GroundTruthFamily fam = random_family(o.n, o.seed, i);
    CalibrationRow row;
    row.index = i;
    row.empirical = recentred_lipschitz(fam.curve, o.I0, o.grid_n);
    try {
      row.bracket = bracket_for(fam.curve, o.I0, o.I1, o.p);
      if (row.bracket > 0.0) row.ratio = row.empirical / row.bracket;
      else if (row.empirical == 0.0) row.ratio = 0.0;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kDegenerateM2) throw;
      row.bracket = std::numeric_limits<double>::infinity();
    }
    if (row.ratio) {
      ratios.push_back(*row.ratio);
      if (2 * i < o.families) t.max_first_half = std::max(t.max_first_half, *row.ratio);
    }
    t.rows.push_back(row);
  }
  if (!ratios.empty()) {
    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    t.min = sorted.front();
    t.max = sorted.back();
    const size_t m = sorted.size();
    t.median = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
  }
  t.growth = t.max_first_half > 0.0 ? t.max / t.max_first_half - 1.0 : (t.max > 0.0 ? 1.0 / 0.0 : 0.0);
  t.stable = t.growth < 0.1;
  return t;
}

std::string to_json(const CalibrationTable& t) {
  Json j;
  j["n"] = t.options.n;
  j["p"] = t.options.p;
  j["families"] = t.options.families;
  j["seed"] = t.options.seed;
  j["grid"] = t.options.grid_n;
  j["I0"] = {t.options.I0.lo, t.options.I0.hi};
  j["I1"] = {t.options.I1.lo, t.options.I1.hi};
  j["min"] = t.min;
  j["median"] = t.median;
  j["max"] = t.max;
  j["max_first_half"] = t.max_first_half;
  j["growth"] = real(t.growth);
  j["stable"] = t.stable;
  Json rows = Json::array();
  for (const CalibrationRow& r : t.rows)
    rows.push_back({{"index", r.index},
                    {"empirical", r.empirical},
                    {"bracket", real(r.bracket)},
                    {"ratio", r.ratio ? real(*r.ratio) : Json(nullptr)}});
  j["rows"] = rows;
  return dump(j);
}

std::string to_csv(const CalibrationTable& t) {
  std::string s = "index,empirical,bracket,ratio\n";
  for (const CalibrationRow& r : t.rows)
    s += std::to_string(r.index) + "," + fmt(r.empirical) + "," + fmt(r.bracket) + "," +
         (r.ratio ? fmt(*r.ratio) : std::string()) + "\n";
  return s;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    if (c.grid_n < 1) throw Error(ErrorKind::kInvalidN, "--grid must be at least 1");
    switch (c.command) {
      case Command::kCertify: return cmd_certify(c, out, err);
      case Command::kRoots: return cmd_roots(c, out);
      case Command::kTschirn: return cmd_tschirn(c, out);
      case Command::kSplit: return cmd_split(c, out);
      case Command::kBound: return cmd_bound(c, out);
      case Command::kTrack: return cmd_track(c, out);
      case Command::kC1Check: return cmd_c1check(c, out);
      case Command::kVerify: return cmd_verify(c, out);
      case Command::kCalibrate: return cmd_calibrate(c, out);
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::kParse) {
      err << "error: cannot parse input: " << e.what() << "\n";
      return kExitIo;
    }
    err << "error: " << condition(e.kind()) << " (" << e.what() << ")\n";
    return kExitDomain;
  }
  return kExitIo;
}

int main_entry(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App cli{"Root regularity toolkit for curves of hyperbolic polynomials", "hyperlip"};
  cli.require_subcommand(1);
  RunConfig cfg;
  std::string I0, I1;
  int p = 0;

  const std::vector<std::pair<const char*, Command>> commands{
      {"certify", Command::kCertify}, {"roots", Command::kRoots},   {"tschirn", Command::kTschirn},
      {"split", Command::kSplit},     {"bound", Command::kBound},   {"track", Command::kTrack},
      {"c1check", Command::kC1Check}, {"verify", Command::kVerify}, {"calibrate", Command::kCalibrate}};
  const std::vector<std::pair<const char*, const char*>> help{
      {"certify", "Sturm hyperbolicity certificate of a polynomial"},
      {"roots", "ordered real roots"},
      {"tschirn", "recentred and rescaled forms"},
      {"split", "factor a polynomial along two root blocks"},
      {"bound", "A1, A2, A0 and the bracket of a curve"},
      {"track", "root branches on a grid as CSV"},
      {"c1check", "one-sided derivative diagnostics"},
      {"verify", "bound, assumption and derivative checks for one curve"},
      {"calibrate", "empirical Lipschitz / bracket over random families"}};
  for (size_t i = 0; i < commands.size(); ++i) {
    CLI::App* sub = cli.add_subcommand(commands[i].first, help[i].second);
    const Command cmd = commands[i].second;
    sub->callback([&cfg, cmd] { cfg.command = cmd; });
    sub->add_option("--input", cfg.input_path, "input file (JSON, or CSV for polynomials)");
    sub->add_option("--output", cfg.output_path, "output file; stdout when omitted");
    sub->add_option("--I0", I0, "inner interval a,b")->allow_extra_args(false);
    sub->add_option("--I1", I1, "outer interval a,b")->allow_extra_args(false);
    sub->add_option("--grid", cfg.grid_n, "grid steps")->capture_default_str();
    sub->add_option("--tol", cfg.tol, "tolerance")->capture_default_str();
    sub->add_option("--p", p, "multiplicity bound p");
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--n", cfg.n, "degree (calibrate)");
    sub->add_option("--families", cfg.families, "number of families (calibrate)");
    sub->add_flag("--matched", cfg.matched, "track through crossings (track)");
  }

  // "--I0 -1,1" would read the value as a flag; glue such pairs first.
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if ((a == "--I0" || a == "--I1") && i + 1 < argc) {
      args.push_back(a + "=" + argv[++i]);
    } else {
      args.push_back(a);
    }
  }
  std::reverse(args.begin(), args.end());
  try {
    cli.parse(args);
    if (!I0.empty()) cfg.I0 = parse_interval(I0);
    if (!I1.empty()) cfg.I1 = parse_interval(I1);
  } catch (const CLI::ParseError& e) {
    const int code = cli.exit(e, out, err);
    return code == 0 ? kExitOk : kExitIo;
  }
  if (p != 0) cfg.p = p;
  return run(cfg, out, err);
}

}  // namespace hyperlip::app
