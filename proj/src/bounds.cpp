#include "probinfo/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <random>

#include "parallel.hpp"
#include "probinfo/errors.hpp"
#include "probinfo/random.hpp"

namespace probinfo {

using nlohmann::ordered_json;

// ------------------------------------------------------------- families ---

DisjointOpenFamily::DisjointOpenFamily(std::string name, std::vector<RegionSet> sets, const RealLineSpace& space,
                                       std::uint64_t first, std::size_t basis_cap)
    : name_(std::move(name)), sets_(std::move(sets)), first_(first), cap_(basis_cap) {
  if (sets_.empty()) throw InputError("family " + name_ + " has no sets");
  for (std::size_t k = 0; k < sets_.size(); ++k) {
    for (const auto& i : sets_[k].intervals()) {
      if (i.lo_closed || i.hi_closed) throw InputError("family " + name_ + ": set " + sets_[k].str() + " is not open");
    }
    for (std::size_t l = 0; l < k; ++l) {
      if (!sets_[k].disjoint(sets_[l])) {
        throw DisjointnessError("family " + name_ + ": sets " + std::to_string(index(l)) + " and " +
                                std::to_string(index(k)) + " overlap on " + sets_[k].intersect(sets_[l]).str());
      }
    }
  }
  for (std::size_t j = 1; j <= cap_; ++j) {
    RegionSet nu = space.basis_set(j);
    if (nu.empty()) continue;
    for (std::size_t k = 0; k < sets_.size(); ++k) {
      if (nu.subset_of(sets_[k])) witness_.emplace_back(index(k), j);
    }
  }
}

DisjointOpenFamily DisjointOpenFamily::partition(std::string name, const std::vector<Rational>& cuts,
                                                 const RealLineSpace& space, std::uint64_t first) {
  if (cuts.size() < 2) throw InputError("partition needs two cut points");
  std::vector<RegionSet> sets;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) sets.emplace_back(Interval::open(cuts[k], cuts[k + 1]));
  return DisjointOpenFamily(std::move(name), std::move(sets), space, first);
}

DisjointOpenFamily DisjointOpenFamily::dyadic(std::size_t m, const RealLineSpace& space) {
  if (m > 16) throw InputError("dyadic family level above 16");
  std::vector<Rational> cuts;
  const Rational width = space.hi() - space.lo();
  for (std::size_t k = 0; k <= (std::size_t{1} << m); ++k) {
    cuts.push_back(space.lo() + width * ratio(static_cast<long>(k), 1L << m));
  }
  return partition("dyadic" + std::to_string(m), cuts, space, 0);
}

DisjointOpenFamily DisjointOpenFamily::unit_intervals(std::uint64_t first, std::uint64_t last,
                                                      const RealLineSpace& space) {
  if (last < first) throw InputError("unit interval family needs first <= last");
  std::vector<Rational> cuts;
  for (std::uint64_t n = first; n <= last + 1; ++n) cuts.emplace_back(static_cast<unsigned long>(n));
  return partition("units" + std::to_string(first) + "-" + std::to_string(last), cuts, space, first);
}

BitString family_code(std::uint64_t i) { return binary_numeral(i); }

BitString Selector::operator()(const BitString& p) const {
  for (const auto& [j, i] : owner_) {
    if (j > p.size()) break;
    if (p.bit(j - 1)) return family_code(i);
  }
  return {};
}

Selector build_selector(const DisjointOpenFamily& family) {
  Selector s;
  for (const auto& [i, j] : family.witness()) {
    auto [it, fresh] = s.owner_.emplace(j, i);
    if (!fresh && it->second != i) {
      throw DisjointnessError("basis set " + std::to_string(j) + " certifies both " + std::to_string(it->second) +
                              " and " + std::to_string(i));
    }
  }
  return s;
}

std::map<BitString, double> family_weights(const DisjointOpenFamily& family, const SpaceMeasure& p) {
  std::map<BitString, double> w;
  double total = 0.0;
  for (std::size_t k = 0; k < family.sets().size(); ++k) {
    const double m = p.probability(family.sets()[k]);
    total += m;
    if (m > 0.0) w[family_code(family.index(k))] = m;
  }
  if (total > 1.0 + 1e-12) {
    throw MeasureError("family " + family.name() + " carries mass " + std::to_string(total) + " under " +
                       p.encoding());
  }
  return w;
}

InfoValue transfer_lower_bound(const DisjointOpenFamily& family, const SpaceMeasure& p, const SpaceMeasure& q,
                               const OracleConfig& cfg) {
  InfoValue v = weighted_info(family_weights(family, p), family_weights(family, q), cfg);
  v.note += (v.note.empty() ? "" : "; ") + std::string("family ") + family.name();
  return v;
}

// -------------------------------------------------------------- catalog ---

std::string canonical_text(const MeasureCatalog::Measure& m) {
  if (const auto* s = std::get_if<SpaceMeasure>(&m)) return s->encoding();
  std::string t = "disc(";
  bool first = true;
  for (const auto& [x, w] : std::get<SemiMeasure>(m).weights()) {
    t += (first ? "" : ",") + x.str() + ":" + to_string(w);
    first = false;
  }
  return t + ")";
}

BitString ascii_bits(std::string_view text) {
  std::string bits;
  bits.reserve(8 * text.size());
  for (unsigned char c : text) {
    for (int b = 7; b >= 0; --b) bits.push_back(((c >> b) & 1) ? '1' : '0');
  }
  return BitString::from_trusted(std::move(bits));
}

void MeasureCatalog::add(std::string name, Measure measure, std::vector<CoverClaim> covers,
                         std::optional<BitString> encoding) {
  if (contains(name)) throw CatalogError("duplicate catalog name " + name);
  std::string text = canonical_text(measure);
  BitString e = encoding ? *encoding : ascii_bits(text);
  for (const auto& x : entries_) {
    if (x.encoding == e) throw CatalogError("entries " + x.name + " and " + name + " share an encoding");
  }
  entries_.push_back({std::move(name), std::move(measure), std::move(text), std::move(e), std::move(covers)});
}

bool MeasureCatalog::contains(const std::string& name) const {
  return std::any_of(entries_.begin(), entries_.end(), [&](const Entry& e) { return e.name == name; });
}

const MeasureCatalog::Entry& MeasureCatalog::at(const std::string& name) const {
  for (const auto& e : entries_) {
    if (e.name == name) return e;
  }
  throw CatalogError("unknown catalog entry " + name);
}

MachineSpec MeasureCatalog::machine(const MachineSpec& base) const {
  std::vector<BitString> lib;
  for (const auto& e : entries_) lib.push_back(e.encoding);
  return base.with_library(base.name() + "+catalog", std::move(lib));
}

namespace {

constexpr double kCoverSlack = 1e-12;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

void verify_space_cover(const std::string& mn, const SpaceMeasure& m, const std::string& pn, const SpaceMeasure& p,
                        bool closed_form) {
  auto [a1, b1] = m.support();
  auto [a2, b2] = p.support();
  if (closed_form && m.has_density() && p.has_density()) {
    const std::size_t n = 1024;
    for (std::size_t k = 0; k <= n; ++k) {
      const double x = a2 + (b2 - a2) * static_cast<double>(k) / static_cast<double>(n);
      const double dm = m.density(x), dp = p.density(x);
      if (dm < dp * (1.0 - 1e-9) - kCoverSlack) {
        throw CoverError(mn + " does not cover " + pn + ": density " + fmt(dm) + " < " + fmt(dp) + " at " + fmt(x));
      }
    }
    return;
  }
  const double a = std::min(a1, a2), b = std::max(b1, b2);
  const std::size_t cells = std::size_t{1} << MeasureCatalog::kGridDepth;
  const double h = b > a ? (b - a) / static_cast<double>(cells) : 1.0;
  for (std::size_t k = 0; k <= cells + 1; ++k) {
    // Cell 0 is the lower tail, cell cells + 1 the upper tail.
    Interval cell;
    if (k == 0) {
      cell = {std::nullopt, rational_from_double(a), false, false};
    } else if (k == cells + 1) {
      cell = {rational_from_double(b), std::nullopt, true, false};
    } else {
      const double lo = a + h * static_cast<double>(k - 1);
      cell = {rational_from_double(lo), rational_from_double(k == cells ? b : lo + h), true, false};
    }
    const double pm = m.probability(cell), pp = p.probability(cell);
    if (pm < pp - kCoverSlack) {
      throw CoverError(mn + " does not cover " + pn + ": cell " + RegionSet(cell).str() + " has " + fmt(pm) + " < " +
                       fmt(pp));
    }
  }
}

}  // namespace

void MeasureCatalog::verify_cover(const std::string& mn, const std::string& pn) const {
  const Entry& m = at(mn);
  const Entry& p = at(pn);
  if (mn == pn) return;
  if (m.measure.index() != p.measure.index()) {
    throw CoverError(mn + " and " + pn + " live on different spaces");
  }
  bool closed_form = false;
  for (const auto& c : m.covers) {
    if (c.covered == pn) closed_form = c.closed_form;
  }
  if (const auto* sm = std::get_if<SpaceMeasure>(&m.measure)) {
    verify_space_cover(mn, *sm, pn, std::get<SpaceMeasure>(p.measure), closed_form);
    return;
  }
  const auto& dm = std::get<SemiMeasure>(m.measure);
  for (const auto& [x, w] : std::get<SemiMeasure>(p.measure).weights()) {
    if (dm.weight(x) < w) {
      throw CoverError(mn + " does not cover " + pn + " at string \"" + x.str() + "\": " + to_string(dm.weight(x)) +
                       " < " + to_string(w));
    }
  }
}

void MeasureCatalog::verify() const {
  for (const auto& e : entries_) {
    for (const auto& c : e.covers) verify_cover(e.name, c.covered);
  }
}

MeasureCatalog measure_catalog_from_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("catalog: ") + e.what());
  }
  if (!j.is_object() || !j.contains("measures") || !j["measures"].is_array()) {
    throw ConfigError("catalog needs a \"measures\" array");
  }
  MeasureCatalog c;
  for (const auto& e : j["measures"]) {
    if (!e.contains("name")) throw ConfigError("catalog entry without a name");
    std::vector<CoverClaim> covers;
    for (const auto& k : e.value("covers", ordered_json::array())) {
      covers.push_back({k.at("name").get<std::string>(), k.value("closed_form", false)});
    }
    std::optional<BitString> enc;
    if (e.contains("encoding")) enc = BitString(e["encoding"].get<std::string>());
    const auto name = e["name"].get<std::string>();
    if (e.contains("space")) {
      c.add(name, space_measure_from_json(e["space"].dump()), std::move(covers), enc);
    } else if (e.contains("discrete")) {
      c.add(name, semimeasure_from_json(e["discrete"].dump()), std::move(covers), enc);
    } else {
      throw ConfigError("catalog entry " + name + " needs \"space\" or \"discrete\"");
    }
  }
  c.verify();
  return c;
}

std::string to_json(const MeasureCatalog& c) {
  ordered_json arr = ordered_json::array();
  for (const auto& e : c.entries()) {
    ordered_json x;
    x["name"] = e.name;
    if (const auto* s = std::get_if<SpaceMeasure>(&e.measure)) {
      x["space"] = ordered_json::parse(s->json());
    } else {
      x["discrete"] = ordered_json::parse(to_json(std::get<SemiMeasure>(e.measure)));
    }
    if (e.encoding != ascii_bits(e.text)) x["encoding"] = e.encoding.str();
    if (!e.covers.empty()) {
      ordered_json cv = ordered_json::array();
      for (const auto& k : e.covers) cv.push_back({{"name", k.covered}, {"closed_form", k.closed_form}});
      x["covers"] = cv;
    }
    arr.push_back(std::move(x));
  }
  return ordered_json{{"measures", arr}}.dump(2) + "\n";
}

// --------------------------------------------------------------- bounds ---

namespace {

double total_of(const MeasureCatalog::Measure& m) {
  if (const auto* s = std::get_if<SpaceMeasure>(&m)) return s->total();
  return std::get<SemiMeasure>(m).total().get_d();
}

InfoValue observed_info(const MeasureCatalog::Measure& p, const MeasureCatalog::Measure& q, std::size_t depth,
                        const RealLineSpace& space, const OracleConfig& cfg) {
  if (p.index() != q.index()) throw InputError("cover bound compares measures on different spaces");
  if (const auto* sp = std::get_if<SpaceMeasure>(&p)) {
    return space_info(*sp, std::get<SpaceMeasure>(q), depth, space, cfg);
  }
  return discrete_info(std::get<SemiMeasure>(p), std::get<SemiMeasure>(q), cfg);
}

double relative_gap(double a, double b) {
  const double s = std::max(std::fabs(a), std::fabs(b));
  return s == 0.0 ? 0.0 : std::fabs(a - b) / s;
}

}  // namespace

CoverBound cover_upper_bound(const MeasureCatalog& catalog, const std::string& m, const std::string& r,
                             const std::string& p, const std::string& q, std::size_t depth,
                             const RealLineSpace& space, const OracleConfig& cfg) {
  catalog.verify_cover(m, p);
  catalog.verify_cover(r, q);
  CoverBound b;
  b.encoding_info = mutual_info(catalog.at(m).encoding, catalog.at(r).encoding, cfg);
  b.log_mass = std::log2(total_of(catalog.at(m).measure) * total_of(catalog.at(r).measure));
  b.bound = b.encoding_info.numeric() ? b.encoding_info.value + b.log_mass : std::nan("");
  b.observed = observed_info(catalog.at(p).measure, catalog.at(q).measure, depth, space, cfg);
  return b;
}

std::pair<InfoValue, std::optional<std::size_t>> computable_self_info_bound(const MeasureCatalog& catalog,
                                                                           const std::string& p,
                                                                           const OracleConfig& cfg) {
  const auto& e = catalog.at(p);
  const auto* d = std::get_if<SemiMeasure>(&e.measure);
  if (d == nullptr) throw CatalogError(p + " is not a discrete measure");
  return {discrete_info(*d, *d, cfg), complexity(e.encoding, cfg)};
}

namespace {

void require_unit_sum(const std::vector<Rational>& w, std::size_t parts) {
  if (w.size() != parts || w.empty()) throw InputError("mixture weight count does not match components");
  Rational s = 0;
  for (const auto& x : w) s += x;
  if (s != 1) throw InputError("mixture weights sum to " + to_string(s) + ", not 1");
}

template <class M, class Info>
MixtureReport mixture_report(const std::vector<Rational>& w, const std::vector<M>& parts, const M& mixture,
                             const std::string& text, Info info, const OracleConfig& cfg) {
  MixtureReport r;
  r.mixture = info(mixture, mixture);
  r.direct = exp2_or_zero(r.mixture);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = 0; j < parts.size(); ++j) {
      r.expectation += w[i].get_d() * w[j].get_d() * exp2_or_zero(info(parts[i], parts[j]));
    }
  }
  r.relative_error = relative_gap(r.direct, r.expectation);
  r.encoding_complexity = complexity(ascii_bits(text), cfg);
  return r;
}

}  // namespace

MixtureReport mixture_identity_check(const std::vector<Rational>& w, const std::vector<SemiMeasure>& parts,
                                     const OracleConfig& cfg) {
  require_unit_sum(w, parts.size());
  SemiMeasure m = mix(w, parts);
  return mixture_report(
      w, parts, m, canonical_text(m),
      [&](const SemiMeasure& a, const SemiMeasure& b) { return discrete_info(a, b, cfg); }, cfg);
}

MixtureReport mixture_identity_check(const std::vector<Rational>& w, const std::vector<SpaceMeasure>& parts,
                                     std::size_t depth, const RealLineSpace& space, const OracleConfig& cfg) {
  require_unit_sum(w, parts.size());
  SpaceMeasure m = SpaceMeasure::mixture(w, parts);
  return mixture_report(
      w, parts, m, m.encoding(),
      [&](const SpaceMeasure& a, const SpaceMeasure& b) { return space_info(a, b, depth, space, cfg); }, cfg);
}

AveragedStats averaged_transition_expectation(const ParameterFamily& gamma, const SpaceMeasure& parameters,
                                              std::size_t samples, std::uint64_t seed, std::size_t depth,
                                              const RealLineSpace& space, const OracleConfig& cfg) {
  if (!parameters.samplable()) throw InputError("parameter measure " + parameters.encoding() + " cannot be sampled");
  if (samples < 2) throw InputError("need at least two samples");
  AveragedStats s;
  s.samples = samples;
  s.seed = seed;

  std::vector<double> values(samples);
  detail::parallel_for(samples, [&](std::size_t k) {
    std::mt19937_64 rng(derive_seed(seed, k));
    Rational a = parameters.sample(rng);
    Rational b = parameters.sample(rng);
    values[k] = exp2_or_zero(space_info(gamma(a), gamma(b), depth, space, cfg));
  });
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(samples);
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.std_error = std::sqrt(ss / static_cast<double>(samples - 1) / static_cast<double>(samples));

  // Averaged measure: its dual is the weighted sum of the node duals.
  std::vector<BitString> cells = strings_of_length(depth);
  std::vector<RegionSet> regions;
  for (const auto& x : cells) regions.push_back(space.sigma(x));
  std::map<BitString, double> table;
  for (const auto& [weight, node] : parameters.quadrature(kQuadratureCells)) {
    SpaceMeasure g = gamma(node);
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (regions[c].empty()) continue;
      table[cells[c]] += weight * g.probability(regions[c]);
    }
  }
  CantorMeasure avg = CantorMeasure::table("averaged", depth, std::move(table));
  s.averaged_info = depth_info(avg, avg, depth, cfg);
  s.averaged = exp2_or_zero(s.averaged_info);
  s.dominated = s.averaged >= s.mean - 3.0 * s.std_error;
  return s;
}

// ---------------------------------------------------------------- files ---

DisjointOpenFamily family_from_json(std::string_view text, const RealLineSpace& space) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("family: ") + e.what());
  }
  if (!j.is_object() || !j.contains("sets")) throw ConfigError("family needs \"sets\"");
  auto end = [](const ordered_json& v) -> std::optional<Rational> {
    if (v.is_null()) return std::nullopt;
    return parse_rational(v.get<std::string>());
  };
  std::vector<RegionSet> sets;
  for (const auto& s : j["sets"]) {
    std::vector<Interval> parts;
    for (const auto& i : s) {
      if (!i.is_array() || i.size() != 2) throw ConfigError("family interval must be [lo, hi]");
      parts.push_back({end(i[0]), end(i[1]), false, false});
    }
    sets.emplace_back(std::move(parts));
  }
  return DisjointOpenFamily(j.value("name", "family"), std::move(sets), space, j.value("first", std::uint64_t{1}));
}

std::string to_json(const DisjointOpenFamily& f) {
  auto end = [](const std::optional<Rational>& r) { return r ? ordered_json(to_string(*r)) : ordered_json(nullptr); };
  ordered_json sets = ordered_json::array();
  for (const auto& s : f.sets()) {
    ordered_json parts = ordered_json::array();
    for (const auto& i : s.intervals()) parts.push_back({end(i.lo), end(i.hi)});
    sets.push_back(parts);
  }
  return ordered_json{{"name", f.name()}, {"first", f.first()}, {"sets", sets}}.dump(2) + "\n";
}

}  // namespace probinfo

// ------------------------------------------------------------- fixtures ---

namespace probinfo {

std::vector<DisjointOpenFamily> fixture_families(const RealLineSpace& space) {
  const Rational lo = space.lo(), w = space.hi() - space.lo();
  auto at = [&](long a, long b) -> Rational { return lo + w * ratio(a, b); };
  std::vector<DisjointOpenFamily> f;
  f.push_back(DisjointOpenFamily::partition("whole", {at(0, 1), at(1, 1)}, space));
  f.push_back(DisjointOpenFamily::partition("halves", {at(0, 1), at(1, 2), at(1, 1)}, space));
  f.push_back(DisjointOpenFamily::dyadic(2, space));
  f.push_back(DisjointOpenFamily::dyadic(3, space));
  f.push_back(DisjointOpenFamily::dyadic(4, space));
  f.push_back(DisjointOpenFamily::partition("thirds", {at(0, 1), at(1, 3), at(2, 3), at(1, 1)}, space));
  f.push_back(DisjointOpenFamily("sparse",
                                 {RegionSet(Interval::open(at(0, 1), at(1, 8))),
                                  RegionSet(Interval::open(at(1, 2), at(5, 8))),
                                  RegionSet(Interval::open(at(3, 4), at(1, 1)))},
                                 space));
  f.push_back(DisjointOpenFamily("unions",
                                 {RegionSet({Interval::open(at(0, 1), at(1, 4)), Interval::open(at(1, 2), at(3, 4))}),
                                  RegionSet({Interval::open(at(1, 4), at(1, 2)), Interval::open(at(3, 4), at(1, 1))})},
                                 space));
  f.push_back(DisjointOpenFamily::unit_intervals(0, 16, space));
  std::vector<Rational> cuts;
  for (long n = 0; n <= 17; ++n) cuts.push_back(ratio(2 * n - 1, 2));
  f.push_back(DisjointOpenFamily::partition("centered", cuts, space, 0));
  return f;
}

std::vector<std::pair<SpaceMeasure, SpaceMeasure>> fixture_space_pairs() {
  const auto u = SpaceMeasure::uniform(0, 1);
  const auto g = SpaceMeasure::gaussian(ratio(1, 2), ratio(1, 16));
  const auto pulse = SpaceMeasure::pulse(BitString("01101001"), 8);
  const auto g3 = SpaceMeasure::gaussian(3, ratio(1, 16));
  return {{u, u}, {g, g}, {pulse, pulse}, {g, u}, {g3, g3}};
}

MeasureCatalog fixture_catalog() {
  MeasureCatalog c;
  for (long n = 1; n <= 8; ++n) c.add("N" + std::to_string(n), SpaceMeasure::gaussian(n, ratio(1, 16)));
  c.add("U01", SpaceMeasure::uniform(0, 1));
  c.add("G", SpaceMeasure::gaussian(ratio(1, 2), ratio(1, 16)));
  const auto u01 = SpaceMeasure::uniform(0, 1);
  c.add("tri", convolve(u01, u01));
  // Density cap 1 a little beyond (0, 2): the grid triangle leaks past both ends.
  c.add("cap", SpaceMeasure::envelope({ratio(9, 4)}, {SpaceMeasure::uniform(ratio(-1, 8), ratio(17, 8))}),
        {{"tri", false}});
  std::vector<Rational> w, ws;
  std::vector<SpaceMeasure> parts, ps;
  for (long n = 1; n <= 16; ++n) {
    w.push_back(ratio(1, n * n));
    parts.push_back(SpaceMeasure::uniform(n, n + 1));
  }
  for (long n : {2, 3, 5, 7, 11, 13}) {
    ws.push_back(ratio(1, n * n));
    ps.push_back(SpaceMeasure::uniform(n, n + 1));
  }
  c.add("sparse", SpaceMeasure::mixture(ws, ps));
  c.add("env", SpaceMeasure::envelope(w, parts), {{"sparse", false}});
  c.verify();
  return c;
}

MeasureCatalog fixture_discrete_catalog() {
  MeasureCatalog c;
  c.add("d_empty", SemiMeasure::point(BitString("")), {}, BitString("0"));
  for (std::size_t n = 1; n <= 4; ++n) c.add("U" + std::to_string(n), SemiMeasure::uniform_length(n));
  std::vector<BitString> xy;
  for (const auto& y : strings_of_length(2)) xy.push_back(BitString("0110") + y);
  c.add("px", SemiMeasure::uniform(xy));
  c.add("d0110", SemiMeasure::point(BitString("0110")));
  c.add("U1q", SemiMeasure(std::map<BitString, Rational>{{BitString("1"), ratio(1, 4)}}));
  c.add("U2h", SemiMeasure(std::map<BitString, Rational>{{BitString("00"), ratio(1, 8)}, {BitString("01"), ratio(1, 8)}}));
  c.add("mixU", mix({ratio(1, 2), ratio(1, 2)}, {SemiMeasure::uniform_length(1), SemiMeasure::uniform_length(2)}),
        {{"U1q", false}, {"U2h", false}});
  c.verify();
  return c;
}

std::vector<CoverCase> fixture_cover_cases() {
  std::vector<CoverCase> out;
  for (long n = 1; n <= 8; ++n) {
    const auto s = "N" + std::to_string(n);
    out.push_back({s, s, s, s});
  }
  out.push_back({"U01", "U01", "U01", "U01"});
  out.push_back({"cap", "cap", "tri", "tri"});
  out.push_back({"env", "env", "sparse", "sparse"});
  return out;
}

std::vector<CoverCase> fixture_discrete_cover_cases() {
  return {{"mixU", "mixU", "U1q", "U1q"}, {"mixU", "mixU", "U2h", "U2h"}, {"U1", "U1", "U1q", "U1q"},
          {"U2", "U2", "U2h", "U2h"}, {"mixU", "mixU", "U1q", "U2h"}};
}

}  // namespace probinfo
