#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>

#include "probinfo/bounds.hpp"
#include "probinfo/cantor.hpp"
#include "probinfo/discrete.hpp"
#include "probinfo/errors.hpp"
#include "probinfo/machine.hpp"
#include "probinfo/oracle.hpp"
#include "probinfo/quantum.hpp"
#include "probinfo/space.hpp"
#include "probinfo/threads.hpp"

namespace probinfo::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

// ---------------------------------------------------------------- helpers ---

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw InputError("cannot read " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q.push_back('"');
    q.push_back(c);
  }
  return q + "\"";
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

/// Paths that do not exist relative to the working directory are looked up
/// among the shipped fixtures.
std::string resolve_path(const std::string& field, const std::string& path) {
  if (fs::exists(path)) return fs::absolute(path).lexically_normal().string();
  const fs::path fixture = fs::path(PROBINFO_FIXTURE_DIR) / path;
  if (fs::exists(fixture)) return fixture.lexically_normal().string();
  throw ConfigError("field '" + field + "': no such file " + path);
}

struct Report {
  std::string machine;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  ordered_json summary = ordered_json::object();
  std::vector<std::string> failures;
};

struct Param {
  std::string name;
  std::string fallback;
  std::string help;
};

class Context;
using Handler = std::function<Report(Context&)>;

struct Command {
  std::string name;
  std::string help;
  std::vector<Param> params;
  Handler handler;
};

const std::vector<Param>& common_params() {
  static const std::vector<Param> p = {
      {"machine", "", "machine file (default from $PROBINFO_MACHINE, else the bitreg fixture)"},
      {"max-len", "20", "program length bound"},
      {"budget", std::to_string(kDefaultBudget), "step budget per run"},
      {"depth", "8", "Cantor / sigma-region depth"},
      {"seed", "7", "root seed"},
      {"threads", "0", "worker threads (0: hardware, at most 8)"},
  };
  return p;
}

class Context {
 public:
  Context(std::string sub, std::map<std::string, std::string> values)
      : sub_(std::move(sub)), v_(std::move(values)) {}

  const std::string& sub() const { return sub_; }
  const std::map<std::string, std::string>& values() const { return v_; }

  const std::string& str(const std::string& f) const { return v_.at(f); }

  std::uint64_t u64(const std::string& f) const {
    const std::string& s = str(f);
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw ConfigError("field '" + f + "': expected a natural number, got '" + s + "'");
    }
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw ConfigError("field '" + f + "': value out of range");
    }
  }
  std::size_t size(const std::string& f) const { return static_cast<std::size_t>(u64(f)); }

  double real(const std::string& f) const {
    try {
      std::size_t pos = 0;
      const double x = std::stod(str(f), &pos);
      if (pos == str(f).size()) return x;
    } catch (const std::exception&) {
    }
    throw ConfigError("field '" + f + "': expected a number, got '" + str(f) + "'");
  }

  bool flag(const std::string& f) const {
    if (str(f) == "true") return true;
    if (str(f) == "false") return false;
    throw ConfigError("field '" + f + "': expected true or false, got '" + str(f) + "'");
  }

  Rational rational(const std::string& f, const std::string& text) const {
    try {
      return parse_rational(text);
    } catch (const Error&) {
      throw ConfigError("field '" + f + "': expected a rational, got '" + text + "'");
    }
  }

  std::vector<Rational> rationals(const std::string& f) const {
    std::vector<Rational> out;
    for (const auto& s : split(str(f), ',')) out.push_back(rational(f, s));
    return out;
  }

  RealLineSpace window(const std::string& f = "window") const {
    const auto parts = split(str(f), ',');
    if (parts.size() != 2) throw ConfigError("field '" + f + "': expected lo,hi");
    return RealLineSpace(rational(f, parts[0]), rational(f, parts[1]));
  }

  const MachineSpec& machine() {
    if (!machine_) {
      const std::size_t validate = std::min<std::size_t>(size("max-len"), kHardCap);
      machine_ = load_machine_file(str("machine"), validate);
    }
    return *machine_;
  }

  OracleConfig oracle(const MachineSpec& m) const { return OracleConfig(m, size("max-len"), u64("budget")); }
  OracleConfig oracle() { return oracle(machine()); }

  // Measure specs: inline forms or a JSON file.
  SemiMeasure discrete(const std::string& f, const std::string& spec) const {
    if (ends_with(spec, ".json")) return semimeasure_from_json(slurp(resolve_path(f, spec)));
    const auto [kind, arg] = head(spec);
    if (kind == "point") return SemiMeasure::point(bits(f, arg));
    if (kind == "uniform-length") return SemiMeasure::uniform_length(natural(f, arg));
    if (kind == "uniform") {
      std::vector<BitString> support;
      for (const auto& s : split(arg, ',')) support.push_back(bits(f, s));
      return SemiMeasure::uniform(support);
    }
    throw ConfigError("field '" + f + "': unknown discrete measure '" + spec + "'");
  }

  SpaceMeasure space(const std::string& f, const std::string& spec) const {
    if (ends_with(spec, ".json")) return space_measure_from_json(slurp(resolve_path(f, spec)));
    const auto [kind, arg] = head(spec);
    const auto a = split(arg, ',');
    auto need = [&](std::size_t n) {
      if (a.size() != n) throw ConfigError("field '" + f + "': " + kind + " takes " + std::to_string(n) + " arguments");
    };
    if (kind == "gaussian") {
      need(2);
      return SpaceMeasure::gaussian(rational(f, a[0]), rational(f, a[1]));
    }
    if (kind == "uniform") {
      need(2);
      return SpaceMeasure::uniform(rational(f, a[0]), rational(f, a[1]));
    }
    if (kind == "pulse") {
      need(2);
      return SpaceMeasure::pulse(bits(f, a[0]), static_cast<unsigned>(natural(f, a[1])));
    }
    if (kind == "point") {
      need(1);
      return SpaceMeasure::point(rational(f, a[0]));
    }
    throw ConfigError("field '" + f + "': unknown space measure '" + spec + "'");
  }

  CantorMeasure cantor(const std::string& f, const std::string& spec) const {
    if (ends_with(spec, ".json")) return cantor_from_depth_table(slurp(resolve_path(f, spec)), spec);
    const auto [kind, arg] = head(spec);
    if (kind == "uniform") return CantorMeasure::uniform();
    if (kind == "cylinder") return CantorMeasure::cylinder(bits(f, arg));
    if (kind == "bernoulli") return CantorMeasure::bernoulli(rational(f, arg));
    if (kind == "point") {
      const auto a = split(arg, ',');
      return a.size() == 1 ? CantorMeasure::point(bits(f, a[0])) : CantorMeasure::point(bits(f, a[0]), bits(f, a[1]));
    }
    if (kind == "fixture") {
      const auto all = fixture_cantor_measures();
      const std::size_t k = natural(f, arg);
      if (k >= all.size()) throw ConfigError("field '" + f + "': fixture index out of range");
      return all[k];
    }
    throw ConfigError("field '" + f + "': unknown Cantor measure '" + spec + "'");
  }

 private:
  static std::pair<std::string, std::string> head(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) return {spec, ""};
    return {spec.substr(0, colon), spec.substr(colon + 1)};
  }
  static BitString bits(const std::string& f, const std::string& s) {
    try {
      return BitString(s);
    } catch (const Error&) {
      throw ConfigError("field '" + f + "': '" + s + "' is not a bit string");
    }
  }
  static std::size_t natural(const std::string& f, const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
      throw ConfigError("field '" + f + "': expected a natural number, got '" + s + "'");
    }
    return std::stoull(s);
  }

  std::string sub_;
  std::map<std::string, std::string> v_;
  std::optional<MachineSpec> machine_;
};

std::vector<std::string> info_cells(const InfoValue& v) {
  return {fmt(v.value), std::string(to_string(v.resolution)), fmt(v.coverage)};
}

void check_monotone(Report& r, const std::vector<InfoValue>& values, const std::string& what) {
  double last = -INFINITY;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (!values[k].numeric()) continue;
    if (values[k].value < last - 1e-12) {
      r.failures.push_back(what + " decreases at depth " + std::to_string(k + 1));
    }
    last = std::max(last, values[k].value);
  }
}

// ------------------------------------------------------------ subcommands ---

Report machine_enumerate(Context& c) {
  Report r;
  const auto& m = c.machine();
  r.machine = m.name();
  const auto programs = enumerate(m, c.size("max-len"), c.u64("budget"), BitString(c.str("aux")));
  r.columns = {"program", "length", "output", "aux_bits_read"};
  std::vector<BitString> halting;
  for (const auto& h : programs) {
    r.rows.push_back({h.program.str(), std::to_string(h.program.size()), h.output.str(),
                      std::to_string(h.aux_bits_read)});
    halting.push_back(h.program);
  }
  const auto k = kraft_sum(programs, c.size("max-len"));
  r.summary["programs"] = programs.size();
  r.summary["kraft_numerator"] = std::to_string(k.numerator);
  r.summary["kraft_exponent"] = k.exponent;
  r.summary["kraft"] = fmt(k.value());
  try {
    check_prefix_free(halting);
  } catch (const SpecError& e) {
    r.failures.push_back(e.what());
  }
  if (k.value() > 1.0) r.failures.push_back("Kraft sum exceeds 1");
  return r;
}

Report complexity_table(Context& c) {
  Report r;
  const auto cfg = c.oracle();
  r.machine = cfg.machine().name();
  const BitString aux(c.str("aux"));
  std::vector<BitString> strings;
  const std::string& spec = c.str("strings");
  if (spec.rfind("all-up-to ", 0) == 0) {
    strings = strings_up_to(static_cast<std::size_t>(std::stoul(spec.substr(10))));
  } else {
    for (const auto& s : split(spec, ',')) strings.emplace_back(s);
  }
  r.columns = {"x", "K", "m", "log2_m"};
  for (const auto& x : strings) {
    const auto k = complexity(x, aux, cfg);
    const Rational m = alg_prob(x, aux, cfg);
    r.rows.push_back({x.str(), k ? std::to_string(*k) : "none", to_string(m), fmt(log2_rational(m))});
  }
  return r;
}

Report discrete_info_report(Context& c) {
  Report r;
  const auto cfg = c.oracle();
  r.machine = cfg.machine().name();
  const auto p = c.discrete("p", c.str("p"));
  const auto q = c.discrete("q", c.str("q"));
  r.columns = {"p", "q", "info", "resolution", "coverage"};
  auto row = std::vector<std::string>{c.str("p"), c.str("q")};
  for (auto& s : info_cells(discrete_info(p, q, cfg))) row.push_back(s);
  r.rows.push_back(row);
  return r;
}

Report channel_gap(Context& c) {
  Report r;
  const auto cfg = c.oracle();
  r.machine = cfg.machine().name();
  r.columns = {"case", "channel", "p", "q", "before", "after", "gap"};
  const auto inputs = [] {
    std::vector<BitString> v;
    for (std::size_t n = 1; n <= 2; ++n) {
      for (auto& x : strings_of_length(n)) v.push_back(x);
    }
    return v;
  }();
  const std::vector<std::pair<std::string, std::string>> pairs = {
      {"uniform-length:1", "uniform-length:1"}, {"uniform-length:2", "uniform-length:2"},
      {"point:01", "point:01"},                 {"uniform-length:1", "uniform-length:2"},
      {"point:1", "uniform-length:1"},
  };
  auto add = [&](const std::string& id, const std::string& name, const Channel& f, const std::string& ps,
                 const std::string& qs, const SemiMeasure& p, const SemiMeasure& q) {
    const Gap g = conservation_gap(f, p, q, cfg);
    r.rows.push_back({id, name, ps, qs, fmt(g.before.value), fmt(g.after.value), fmt(g.value)});
    return g;
  };
  const std::string fixture = c.str("fixture");
  std::size_t k = 0;
  for (const auto& [ps, qs] : pairs) {
    const auto p = c.discrete("p", ps), q = c.discrete("q", qs);
    const Gap g = add("identity-" + std::to_string(k), "identity", Channel::identity(inputs), ps, qs, p, q);
    if (g.value != 0.0 && !(std::isnan(g.value) && !g.before.numeric() && !g.after.numeric())) {
      r.failures.push_back("identity channel gap " + fmt(g.value) + " on " + ps + " / " + qs);
    }
    ++k;
  }
  double min_gap = INFINITY;
  if (fixture == "random") {
    for (const auto& cc : random_channel_cases(c.u64("seed"), c.size("cases"))) {
      const Gap g = add(cc.id, "random", cc.f, to_json(cc.p), to_json(cc.q), cc.p, cc.q);
      if (!std::isnan(g.value)) min_gap = std::min(min_gap, g.value);
    }
  } else {
    Channel f;
    if (fixture == "identity") {
      f = Channel::identity(inputs);
    } else if (fixture == "uniform-spread") {
      f = Channel::uniform_spread(inputs);
    } else if (fixture == "bit-flip") {
      f = Channel::bit_flip(inputs);
    } else {
      throw ConfigError("field 'fixture': expected identity, uniform-spread, bit-flip or random");
    }
    k = 0;
    for (const auto& [ps, qs] : pairs) {
      const Gap g = add(fixture + "-" + std::to_string(k++), fixture, f, ps, qs, c.discrete("p", ps),
                        c.discrete("q", qs));
      if (!std::isnan(g.value)) min_gap = std::min(min_gap, g.value);
    }
  }
  r.summary["min_gap"] = fmt(min_gap);
  return r;
}

Report cantor_info(Context& c) {
  Report r;
  const auto cfg = c.oracle();
  r.machine = cfg.machine().name();
  const auto p = c.cantor("p", c.str("p"));
  const auto q = c.cantor("q", c.str("q"));
  r.columns = {"depth", "info", "resolution", "coverage"};
  std::vector<InfoValue> values;
  for (std::size_t d = 1; d <= c.size("depth"); ++d) {
    values.push_back(depth_info(p, q, d, cfg));
    auto row = std::vector<std::string>{std::to_string(d)};
    for (auto& s : info_cells(values.back())) row.push_back(s);
    r.rows.push_back(row);
  }
  check_monotone(r, values, "depth information");
  return r;
}

Report transition_gap(Context& c) {
  Report r;
  const auto cfg = c.oracle();
  r.machine = cfg.machine().name();
  const std::size_t depth = c.size("depth");
  r.columns = {"case", "p", "q", "before", "after", "gap"};
  const auto measures = fixture_cantor_measures();
  for (std::size_t k = 0; k < 5 && k < measures.size(); ++k) {
    const Gap g = transition_conservation_gap(Transition::identity(), measures[k], measures[k], depth, cfg);
    r.rows.push_back({"identity-" + std::to_string(k), measures[k].name(), measures[k].name(), fmt(g.before.value),
                      fmt(g.after.value), fmt(g.value)});
    if (g.value != 0.0 && !std::isnan(g.value)) r.failures.push_back("identity transition gap " + fmt(g.value));
  }
  double min_gap = INFINITY;
  for (const auto& tc : random_transition_cases(c.u64("seed"), c.size("cases"))) {
    const Gap g = transition_conservation_gap(tc.t, tc.p, tc.q, depth, cfg);
    r.rows.push_back({tc.id, tc.p.name(), tc.q.name(), fmt(g.before.value), fmt(g.after.value), fmt(g.value)});
    if (!std::isnan(g.value)) min_gap = std::min(min_gap, g.value);
  }
  r.summary["min_gap"] = fmt(min_gap);
  return r;
}

Report space_info_report(Context& c) {
  Report r;
  const auto cfg = c.oracle();
  r.machine = cfg.machine().name();
  const auto space = c.window();
  const auto p = c.space("p", c.str("p"));
  const auto q = c.space("q", c.str("q"));
  r.columns = {"depth", "info", "resolution", "coverage"};
  std::vector<InfoValue> values;
  for (std::size_t d = 1; d <= c.size("depth"); ++d) {
    values.push_back(space_info(p, q, d, space, cfg));
    auto row = std::vector<std::string>{std::to_string(d)};
    for (auto& s : info_cells(values.back())) row.push_back(s);
    r.rows.push_back(row);
  }
  check_monotone(r, values, "space information");
  return r;
}

Report convolve_report(Context& c) {
  Report r;
  r.machine = "none";
  const auto p = c.space("p", c.str("p"));
  const auto k = c.space("kernel", c.str("kernel"));
  ConvolutionGrid grid;
  grid.step = c.real("step");
  grid.closed_form = c.flag("closed-form");
  const SpaceMeasure out = convolve(p, k, grid);

  std::function<double(double)> reference;
  if (p.kind() == SpaceMeasure::Kind::gaussian && k.kind() == SpaceMeasure::Kind::gaussian) {
    const auto [m1, v1] = p.gaussian_parameters();
    const auto [m2, v2] = k.gaussian_parameters();
    const SpaceMeasure g = SpaceMeasure::gaussian(m1 + m2, v1 + v2);
    reference = [g](double x) { return g.density(x); };
  } else if (p.json() == SpaceMeasure::uniform(0, 1).json() && k.json() == SpaceMeasure::uniform(0, 1).json()) {
    reference = triangle_density;
  }

  const auto [lo, hi] = out.support();
  const std::size_t n = std::max<std::size_t>(2, c.size("points"));
  r.columns = {"x", "density", "reference"};
  for (std::size_t i = 0; i < n; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    r.rows.push_back({fmt(x), fmt(out.density(x)), reference ? fmt(reference(x)) : ""});
  }
  r.summary["encoding"] = out.encoding();
  r.summary["total"] = fmt(out.total());
  if (reference) {
    const double l1 = l1_distance([&](double x) { return out.density(x); }, reference, lo, hi);
    r.summary["l1"] = fmt(l1);
    if (l1 > 1e-3) r.failures.push_back("L1 distance " + fmt(l1) + " exceeds 1e-3");
  }
  return r;
}

Report transfer_report(Context& c) {
  Report r;
  const auto cfg = c.oracle();
  r.machine = cfg.machine().name();
  const auto space = c.window();
  const auto p = c.space("p", c.str("p"));
  const auto q = c.space("q", c.str("q"));
  std::vector<DisjointOpenFamily> families;
  const std::string& f = c.str("family");
  if (ends_with(f, ".json")) {
    families.push_back(family_from_json(slurp(resolve_path("family", f)), space));
  } else {
    for (auto& fam : fixture_families(space)) {
      if (f == "all" || fam.name() == f) families.push_back(std::move(fam));
    }
    if (families.empty()) throw ConfigError("field 'family': no fixture family named '" + f + "'");
  }
  const InfoValue upper = space_info(p, q, c.size("depth"), space, cfg);
  r.columns = {"family", "sets", "transfer", "resolution", "coverage", "space_info"};
  for (const auto& fam : families) {
    auto row = std::vector<std::string>{fam.name(), std::to_string(fam.sets().size())};
    for (auto& s : info_cells(transfer_lower_bound(fam, p, q, cfg))) row.push_back(s);
    row.push_back(fmt(upper.value));
    r.rows.push_back(row);
  }
  return r;
}

Report cover_report(Context& c) {
  Report r;
  const std::string& which = c.str("catalog");
  MeasureCatalog catalog;
  std::vector<CoverCase> cases;
  if (which == "space") {
    catalog = fixture_catalog();
    cases = fixture_cover_cases();
  } else if (which == "discrete") {
    catalog = fixture_discrete_catalog();
    cases = fixture_discrete_cover_cases();
  } else if (ends_with(which, ".json")) {
    catalog = measure_catalog_from_json(slurp(resolve_path("catalog", which)));
    for (const auto& e : catalog.entries()) {
      for (const auto& claim : e.covers) cases.push_back({e.name, e.name, claim.covered, claim.covered});
    }
  } else {
    throw ConfigError("field 'catalog': expected space, discrete or a catalog file");
  }
  if (c.str("cases") != "all") {
    cases.clear();
    for (const auto& item : split(c.str("cases"), ';')) {
      const auto a = split(item, ',');
      if (a.size() != 4) throw ConfigError("field 'cases': expected M,R,P,Q entries separated by ';'");
      cases.push_back({a[0], a[1], a[2], a[3]});
    }
  }
  const auto cfg = c.oracle(catalog.machine(c.machine()));
  r.machine = cfg.machine().name();
  const auto space = c.window();
  r.columns = {"m", "r", "p", "q", "encoding_info", "log_mass", "bound", "observed", "resolution", "slack"};
  for (const auto& cc : cases) {
    const CoverBound b = cover_upper_bound(catalog, cc.m, cc.r, cc.p, cc.q, c.size("depth"), space, cfg);
    r.rows.push_back({cc.m, cc.r, cc.p, cc.q, fmt(b.encoding_info.value), fmt(b.log_mass), fmt(b.bound),
                      fmt(b.observed.value), std::string(to_string(b.observed.resolution)),
                      fmt(b.observed.value - b.bound)});
  }
  return r;
}

Report mixture_report(Context& c) {
  Report r;
  const auto cfg = c.oracle();
  r.machine = cfg.machine().name();
  const auto w = c.rationals("weights");
  const auto specs = split(c.str("parts"), ';');
  if (specs.size() != w.size()) throw ConfigError("field 'parts': expected one part per weight");
  MixtureReport m;
  if (c.str("kind") == "discrete") {
    std::vector<SemiMeasure> parts;
    for (const auto& s : specs) parts.push_back(c.discrete("parts", s));
    m = mixture_identity_check(w, parts, cfg);
  } else if (c.str("kind") == "space") {
    std::vector<SpaceMeasure> parts;
    for (const auto& s : specs) parts.push_back(c.space("parts", s));
    m = mixture_identity_check(w, parts, c.size("depth"), c.window(), cfg);
  } else {
    throw ConfigError("field 'kind': expected discrete or space");
  }
  r.columns = {"mixture_info", "resolution", "direct", "expectation", "relative_error", "encoding_complexity"};
  r.rows.push_back({fmt(m.mixture.value), std::string(to_string(m.mixture.resolution)), fmt(m.direct),
                    fmt(m.expectation), fmt(m.relative_error),
                    m.encoding_complexity ? std::to_string(*m.encoding_complexity) : "none"});
  if (!(m.relative_error <= kMixtureTolerance)) {
    r.failures.push_back("relative error " + fmt(m.relative_error) + " exceeds tolerance");
  }
  return r;
}

Report average_report(Context& c) {
  Report r;
  const auto cfg = c.oracle();
  r.machine = cfg.machine().name();
  if (c.str("family") != "gaussian-mean") throw ConfigError("field 'family': only gaussian-mean is available");
  const Rational variance = c.rational("variance", c.str("variance"));
  const ParameterFamily gamma = [variance](const Rational& a) { return SpaceMeasure::gaussian(a, variance); };
  const auto params = c.space("parameters", c.str("parameters"));
  const auto s = averaged_transition_expectation(gamma, params, c.size("samples"), c.u64("seed"), c.size("depth"),
                                                 c.window(), cfg);
  r.columns = {"samples", "seed", "mean", "std_error", "averaged", "averaged_info", "dominated"};
  r.rows.push_back({std::to_string(s.samples), std::to_string(s.seed), fmt(s.mean), fmt(s.std_error),
                    fmt(s.averaged), fmt(s.averaged_info.value), s.dominated ? "true" : "false"});
  if (!s.dominated) r.failures.push_back("averaged measure does not dominate the mean");
  return r;
}

struct QuantumBaseline {
  std::string povm;
  std::string machine;
  std::size_t max_len;
  std::size_t samples;
  double mean;
  double std_error;
};

// Frozen from the first certified run (seed 7).
const std::vector<QuantumBaseline>& quantum_baselines() {
  static const std::vector<QuantumBaseline> b = {
      {"basis2q", "bitreg", 20, 1000, 0.47449453226103133, 0.0029183483651944414},
  };
  return b;
}

Povm load_povm(const std::string& spec) {
  if (ends_with(spec, ".json")) return povm_from_json(slurp(resolve_path("povm", spec)));
  if (spec == "trine") return Povm::trine();
  for (std::size_t n = 1; n <= 6; ++n) {
    if (spec == "basis" + std::to_string(n) + "q") return Povm::basis(n);
    if (spec == "trivial" + std::to_string(n) + "q") return Povm::trivial(n);
  }
  throw ConfigError("field 'povm': unknown POVM '" + spec + "'");
}

Report quantum_report(Context& c) {
  Report r;
  const auto cfg = c.oracle();
  r.machine = cfg.machine().name();
  const Povm e = load_povm(c.str("povm"));
  const auto v = validate_povm(e);
  r.summary["hermitian_residual"] = fmt(v.hermitian_residual);
  r.summary["min_eigenvalue"] = fmt(v.min_eigenvalue);
  r.summary["completeness_residual"] = fmt(v.completeness_residual);
  const std::size_t samples = c.size("samples");
  const auto s = measurement_info_experiment(e, samples, c.u64("seed"), cfg);
  r.columns = {"povm", "context", "samples", "seed", "mean", "std_error", "upper", "adversarial",
               "adversarial_state", "baseline_mean", "baseline_band", "within_band"};
  std::vector<std::string> row = {e.name(),       s.context,          std::to_string(samples), std::to_string(s.seed),
                                  fmt(s.mean),    fmt(s.std_error),   fmt(s.upper),            fmt(s.adversarial),
                                  s.adversarial_state};
  const QuantumBaseline* base = nullptr;
  for (const auto& b : quantum_baselines()) {
    if (b.povm == e.name() && b.machine == r.machine && b.max_len == cfg.max_len() && b.samples == samples) base = &b;
  }
  if (base) {
    const double band = 3.0 * std::sqrt(2.0) * base->std_error;
    const bool within = std::fabs(s.mean - base->mean) <= band;
    row.insert(row.end(), {fmt(base->mean), fmt(band), within ? "true" : "false"});
    if (!within) r.failures.push_back("Haar mean " + fmt(s.mean) + " outside the frozen band");
    if (!(s.adversarial > s.upper)) r.failures.push_back("adversarial value does not exceed the Haar mean");
  } else {
    row.insert(row.end(), {"", "", "n/a"});
  }
  r.rows.push_back(row);
  return r;
}

const std::vector<Command>& commands() {
  static const std::vector<Command> c = {
      {"machine-enumerate", "halting programs with Kraft and prefix checks", {{"aux", "", "auxiliary input"}},
       machine_enumerate},
      {"complexity",
       "K(x) and m(x) per string",
       {{"strings", "all-up-to 6", "'all-up-to N' or a comma list"}, {"aux", "", "auxiliary input"}},
       complexity_table},
      {"discrete-info",
       "information between two discrete semi-measures",
       {{"p", "uniform-length:2", "measure spec or JSON file"}, {"q", "uniform-length:2", "measure spec or JSON file"}},
       discrete_info_report},
      {"channel-gap",
       "conservation gaps of channels",
       {{"fixture", "uniform-spread", "identity | uniform-spread | bit-flip | random"},
        {"cases", "50", "random cases"}},
       channel_gap},
      {"cantor-info",
       "depth information on Cantor space for d = 1..depth",
       {{"p", "bernoulli:1/3", "Cantor measure spec"}, {"q", "bernoulli:1/3", "Cantor measure spec"}},
       cantor_info},
      {"transition-gap", "conservation gaps of random transitions", {{"cases", "20", "random cases"}},
       transition_gap},
      {"space-info",
       "information between measures on the real line for d = 1..depth",
       {{"p", "gaussian:1/2,1/16", "space measure spec"},
        {"q", "gaussian:1/2,1/16", "space measure spec"},
        {"window", "0,1", "dyadic basis window lo,hi"}},
       space_info_report},
      {"convolve",
       "grid convolution against the closed form",
       {{"p", "gaussian:0,1", "space measure spec"},
        {"kernel", "gaussian:0,1", "kernel spec"},
        {"step", "0.01", "grid step"},
        {"points", "41", "evaluation points"},
        {"closed-form", "false", "use the closed form when available"}},
       convolve_report},
      {"transfer",
       "transfer lower bounds from disjoint open families",
       {{"family", "all", "fixture family name, 'all', or JSON file"},
        {"p", "pulse:01101001,8", "space measure spec"},
        {"q", "pulse:01101001,8", "space measure spec"},
        {"window", "0,1", "dyadic basis window lo,hi"}},
       transfer_report},
      {"cover",
       "cover upper bounds on the catalog machine",
       {{"catalog", "space", "space | discrete | catalog JSON file"},
        {"cases", "all", "'all' or M,R,P,Q entries separated by ';'"},
        {"window", "0,1", "dyadic basis window lo,hi"}},
       cover_report},
      {"mixture",
       "mixture identity check",
       {{"kind", "discrete", "discrete | space"},
        {"weights", "1/2,1/2", "comma-separated weights summing to 1"},
        {"parts", "uniform-length:1;uniform-length:2", "measure specs separated by ';'"},
        {"window", "0,1", "dyadic basis window lo,hi"}},
       mixture_report},
      {"average",
       "Monte-Carlo averaged transition expectation",
       {{"family", "gaussian-mean", "parameter family"},
        {"variance", "1/16", "variance of each member"},
        {"parameters", "uniform:0,1", "parameter measure spec"},
        {"samples", "1000", "Monte-Carlo samples"},
        {"window", "0,1", "dyadic basis window lo,hi"}},
       average_report},
      {"quantum",
       "Haar-averaged measurement information with frozen baseline",
       {{"povm", "basis2q", "builtin name or POVM JSON file"}, {"samples", "1000", "Haar samples"}},
       quantum_report},
  };
  return c;
}

const Command* find_command(const std::string& name) {
  for (const auto& c : commands()) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::vector<std::string> param_order(const Command& cmd) {
  std::vector<std::string> names;
  for (const auto& p : common_params()) names.push_back(p.name);
  for (const auto& p : cmd.params) names.push_back(p.name);
  return names;
}

std::string default_machine() {
  if (const char* env = std::getenv(kMachineEnv); env && *env) return env;
  return std::string(PROBINFO_FIXTURE_DIR) + "/bitreg.json";
}

/// Appends the entries of a config file (or report sidecar) as flags so
/// that they override anything given on the command line.
void expand_config(std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty() || args.empty()) return;
  const Command* cmd = find_command(args[0]);
  if (!cmd) return;
  ordered_json j;
  try {
    j = ordered_json::parse(slurp(path));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config file: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold an object");
  if (j.contains("subcommand")) {
    if (j["subcommand"] != cmd->name) {
      throw ConfigError("config file is for subcommand " + j["subcommand"].dump() + ", not " + cmd->name);
    }
    if (!j.contains("config") || !j["config"].is_object()) throw ConfigError("field 'config' must be an object");
    j = j["config"];
  }
  const auto names = param_order(*cmd);
  for (const auto& [key, value] : j.items()) {
    if (std::find(names.begin(), names.end(), key) == names.end()) {
      throw ConfigError("unknown field '" + key + "' for " + cmd->name);
    }
    std::string text;
    if (value.is_string()) {
      text = value.get<std::string>();
    } else if (value.is_number() || value.is_boolean()) {
      text = value.dump();
    } else {
      throw ConfigError("field '" + key + "' must be a string, number or boolean");
    }
    if (text.empty()) {
      args.insert(args.end(), {"--" + key, ""});
    } else {
      args.push_back("--" + key + "=" + text);
    }
  }
}

int execute(const Command& cmd, std::map<std::string, std::string> values, const std::string& out_dir,
            std::ostream& out) {
  if (values["machine"].empty()) values["machine"] = default_machine();
  for (auto& [name, value] : values) {
    if (name == "machine" || ends_with(value, ".json")) value = resolve_path(name, value);
  }
  Context ctx(cmd.name, values);
  set_thread_limit(ctx.size("threads"));

  const auto t0 = std::chrono::steady_clock::now();
  Report r = cmd.handler(ctx);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::ostringstream csv;
  csv << "# probinfo " << PROBINFO_VERSION << ' ' << cmd.name << " machine=" << r.machine
      << " max_len=" << ctx.str("max-len") << " budget=" << ctx.str("budget") << " depth=" << ctx.str("depth")
      << " seed=" << ctx.str("seed") << '\n';
  auto columns = r.columns;
  columns.insert(columns.end(), {"max_len", "budget"});
  for (std::size_t i = 0; i < columns.size(); ++i) csv << (i ? "," : "") << columns[i];
  csv << '\n';
  for (auto row : r.rows) {
    row.insert(row.end(), {ctx.str("max-len"), ctx.str("budget")});
    for (std::size_t i = 0; i < row.size(); ++i) csv << (i ? "," : "") << csv_field(row[i]);
    csv << '\n';
  }

  ordered_json config = ordered_json::object();
  for (const auto& name : param_order(cmd)) config[name] = values.at(name);
  ordered_json sidecar = {
      {"artifact", "probinfo"},
      {"version", PROBINFO_VERSION},
      {"subcommand", cmd.name},
      {"config", config},
      {"machine", r.machine},
      {"report", cmd.name + ".csv"},
      {"columns", columns},
      {"rows", r.rows.size()},
      {"status", r.failures.empty() ? "ok" : "assertion-failure"},
      {"failures", r.failures},
      {"summary", r.summary},
      {"timing", {{"seconds", seconds}}},
  };

  fs::create_directories(out_dir);
  const fs::path csv_path = fs::path(out_dir) / (cmd.name + ".csv");
  const fs::path json_path = fs::path(out_dir) / (cmd.name + ".json");
  std::ofstream(csv_path, std::ios::binary) << csv.str();
  std::ofstream(json_path, std::ios::binary) << sidecar.dump(2) << '\n';
  out << "wrote " << csv_path.string() << " (" << r.rows.size() << " rows)\n";
  for (const auto& f : r.failures) out << "FAIL " << f << '\n';
  return r.failures.empty() ? kOk : kAssertionFailure;
}

}  // namespace

int run(const std::vector<std::string>& raw, std::ostream& out, std::ostream& err) {
  try {
    std::vector<std::string> args = raw;
    if (!args.empty() && args[0] == "replay") {
      if (args.size() < 2) throw ConfigError("replay needs a report sidecar");
      const auto j = ordered_json::parse(slurp(args[1]), nullptr, false);
      if (j.is_discarded() || !j.contains("subcommand")) throw ConfigError("not a report sidecar: " + args[1]);
      std::vector<std::string> rest(args.begin() + 2, args.end());
      args = {j["subcommand"].get<std::string>(), "--config", args[1]};
      args.insert(args.end(), rest.begin(), rest.end());
    }
    expand_config(args);

    CLI::App app{"probinfo experiment runner"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    std::map<std::string, std::map<std::string, std::string>> values;
    std::map<std::string, std::string> out_dirs, configs;
    for (const auto& cmd : commands()) {
      auto* sub = app.add_subcommand(cmd.name, cmd.help);
      auto& v = values[cmd.name];
      auto add = [&](const Param& p) {
        v[p.name] = p.fallback;
        sub->add_option("--" + p.name, v[p.name], p.help)->capture_default_str();
      };
      for (const auto& p : common_params()) add(p);
      for (const auto& p : cmd.params) add(p);
      out_dirs[cmd.name] = ".";
      sub->add_option("--out", out_dirs[cmd.name], "output directory")->capture_default_str();
      sub->add_option("--config", configs[cmd.name], "JSON config or report sidecar; overrides flags");
    }
    app.add_subcommand("replay", "regenerate a report from its JSON sidecar: replay SIDECAR [--out DIR]");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e, out, err);
      return code == 0 ? kOk : kInputError;
    }
    const std::string name = app.get_subcommands().front()->get_name();
    const Command* cmd = find_command(name);
    return execute(*cmd, values[name], out_dirs[name], out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace probinfo::cli
