#include "probinfo/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>
#include <random>
#include <unordered_map>

#include "probinfo/errors.hpp"

namespace probinfo {

CantorMeasure::CantorMeasure(std::string name, Evaluator f, std::size_t depth_cap, std::string encoding)
    : name_(std::move(name)),
      f_(std::make_shared<const Evaluator>(std::move(f))),
      depth_cap_(depth_cap),
      encoding_(std::move(encoding)) {}

double CantorMeasure::operator()(const BitString& x) const {
  if (x.size() > depth_cap_) {
    throw InputError("measure " + name_ + " is defined only to depth " + std::to_string(depth_cap_));
  }
  return (*f_)(x);
}

CantorMeasure CantorMeasure::point(const BitString& prefix, const BitString& tail) {
  if (tail.empty()) throw InputError("point measure needs a nonempty periodic tail");
  auto f = [prefix, tail](const BitString& x) {
    for (std::size_t i = 0; i < x.size(); ++i) {
      char a = i < prefix.size() ? prefix[i] : tail[(i - prefix.size()) % tail.size()];
      if (a != x[i]) return 0.0;
    }
    return 1.0;
  };
  std::string enc = "point:" + prefix.str() + "(" + tail.str() + ")";
  return CantorMeasure(enc, f, kUnboundedDepth, enc);
}

CantorMeasure CantorMeasure::cylinder(const BitString& x) {
  auto f = [x](const BitString& w) {
    if (w.is_prefix_of(x)) return 1.0;
    if (x.is_prefix_of(w)) return std::ldexp(1.0, -static_cast<int>(w.size() - x.size()));
    return 0.0;
  };
  std::string enc = "cylinder:" + x.str();
  return CantorMeasure(enc, f, kUnboundedDepth, enc);
}

CantorMeasure CantorMeasure::uniform() {
  return CantorMeasure(
      "uniform", [](const BitString& w) { return std::ldexp(1.0, -static_cast<int>(w.size())); },
      kUnboundedDepth, "uniform");
}

CantorMeasure CantorMeasure::bernoulli(const Rational& p) {
  if (p < 0 || p > 1) throw InputError("bernoulli parameter outside [0,1]");
  const double one = p.get_d();
  auto f = [one](const BitString& w) {
    double v = 1.0;
    for (std::size_t i = 0; i < w.size(); ++i) v *= w.bit(i) ? one : 1.0 - one;
    return v;
  };
  std::string enc = "bernoulli:" + to_string(p);
  return CantorMeasure(enc, f, kUnboundedDepth, enc);
}

CantorMeasure CantorMeasure::table(std::string name, std::size_t depth, std::map<BitString, double> cells) {
  auto sums = std::make_shared<std::unordered_map<BitString, double>>();
  for (const auto& [x, v] : cells) {
    if (x.size() != depth) throw FormatError("cell \"" + x.str() + "\" is not at depth " + std::to_string(depth));
    if (!(v >= 0.0)) throw InputError("negative mass on cell \"" + x.str() + "\"");
    for (std::size_t k = 0; k <= depth; ++k) (*sums)[x.prefix(k)] += v;
  }
  auto f = [sums](const BitString& w) {
    auto it = sums->find(w);
    return it == sums->end() ? 0.0 : it->second;
  };
  return CantorMeasure(std::move(name), f, depth);
}

CantorMeasure CantorMeasure::mixture(const std::vector<Rational>& w, const std::vector<CantorMeasure>& parts) {
  if (w.size() != parts.size() || parts.empty()) throw InputError("mixture weight count does not match components");
  Rational sum = 0;
  std::vector<double> wd;
  std::string enc = "mix(";
  std::size_t cap = kUnboundedDepth;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (sgn(w[i]) < 0) throw InputError("negative mixture weight");
    sum += w[i];
    wd.push_back(w[i].get_d());
    enc += (i ? "," : "") + to_string(w[i]) + "*" + parts[i].encoding();
    cap = std::min(cap, parts[i].depth_cap());
  }
  if (sum > 1) throw InputError("mixture weights sum to " + to_string(sum));
  enc += ")";
  auto f = [wd, parts](const BitString& x) {
    double v = 0.0;
    for (std::size_t i = 0; i < parts.size(); ++i) v += wd[i] * parts[i](x);
    return v;
  };
  return CantorMeasure(enc, f, cap, enc);
}

void check_additivity(const CantorMeasure& p, std::size_t depth) {
  const double root = p(BitString());
  if (root > 1.0 + kAdditivityTolerance) {
    throw MeasureError("measure " + p.name() + " has total " + std::to_string(root) + " above 1");
  }
  std::vector<BitString> level = {BitString()};
  std::vector<double> mass = {root};
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<BitString> next;
    std::vector<double> next_mass;
    for (std::size_t i = 0; i < level.size(); ++i) {
      const BitString x0 = level[i] + BitString::from_trusted("0");
      const BitString x1 = level[i] + BitString::from_trusted("1");
      const double a = p(x0), b = p(x1);
      if (a < 0.0 || b < 0.0 ||
          std::fabs(mass[i] - a - b) > kAdditivityTolerance * std::max(mass[i], a + b) + 1e-15) {
        throw MeasureError("measure " + p.name() + " is not additive at \"" + level[i].str() + "\"");
      }
      if (a > 0.0) {
        next.push_back(x0);
        next_mass.push_back(a);
      }
      if (b > 0.0) {
        next.push_back(x1);
        next_mass.push_back(b);
      }
    }
    level = std::move(next);
    mass = std::move(next_mass);
  }
}

namespace {

// U(a) = sum_{|w| <= depth} F(w) T[w](a): the om-weighted output mass.
std::map<BitString, double> output_weights(const CantorMeasure& p, std::size_t depth,
                                           const RelativeTable& rel) {
  std::map<BitString, double> u;
  const int scale = -static_cast<int>(rel.exponent);
  for (const auto& [w, outputs] : rel.by_prefix) {
    if (w.size() > depth) continue;
    const double fw = p(w);
    if (fw == 0.0) continue;
    for (const auto& [a, mass] : outputs) u[a] += fw * std::ldexp(static_cast<double>(mass), scale);
  }
  return u;
}

}  // namespace

InfoValue depth_info(const CantorMeasure& p, const CantorMeasure& q, std::size_t depth,
                     const OracleConfig& cfg) {
  if (depth > p.depth_cap() || depth > q.depth_cap()) {
    throw InputError("depth " + std::to_string(depth) + " exceeds a measure's depth cap");
  }
  check_additivity(p, depth);
  check_additivity(q, depth);
  auto rel = cfg.relative(depth);
  InfoValue v = weighted_info(output_weights(p, depth, *rel), output_weights(q, depth, *rel), cfg);
  v.note = v.note.empty() ? "depth " + std::to_string(depth) : v.note + "; depth " + std::to_string(depth);
  return v;
}

// ----------------------------------------------------------- transitions ---

namespace {

double point_row(const BitString& x, const std::string& alpha) {
  return alpha.compare(0, x.size(), x.str()) == 0 && alpha.size() >= x.size() ? 1.0 : 0.0;
}

}  // namespace

Transition Transition::identity() {
  return {"identity", "identity", [](const BitString& c, const BitString& x) { return point_row(x, c.str()); },
          [](std::size_t n) { return n; }};
}

Transition Transition::constant(const CantorMeasure& r) {
  return {"constant:" + r.name(), "constant(" + r.encoding() + ")",
          [r](const BitString&, const BitString& x) { return r(x); }, [](std::size_t) { return std::size_t{0}; }};
}

Transition Transition::prepend(const BitString& bits) {
  const std::size_t k = bits.size();
  return {"prepend:" + bits.str(), "prepend:" + bits.str(),
          [bits](const BitString& c, const BitString& x) { return point_row(x, bits.str() + c.str()); },
          [k](std::size_t n) { return n > k ? n - k : 0; }};
}

Transition Transition::drop(std::size_t k) {
  return {"drop:" + std::to_string(k), "drop:" + std::to_string(k),
          [k](const BitString& c, const BitString& x) {
            return c.size() < k ? 0.0 : point_row(x, c.str().substr(k));
          },
          [k](std::size_t n) { return n + k; }};
}

Transition Transition::flip() {
  return {"flip", "flip",
          [](const BitString& c, const BitString& x) {
            std::string f = c.str();
            for (char& b : f) b = b == '0' ? '1' : '0';
            return point_row(x, f);
          },
          [](std::size_t n) { return n; }};
}

Transition Transition::mixture(const std::vector<Rational>& w, const std::vector<Transition>& parts) {
  if (w.size() != parts.size() || parts.empty()) throw InputError("mixture weight count does not match components");
  Rational sum = 0;
  std::vector<double> wd;
  std::string enc = "mix(";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (sgn(w[i]) < 0) throw InputError("negative mixture weight");
    sum += w[i];
    wd.push_back(w[i].get_d());
    enc += (i ? "," : "") + to_string(w[i]) + "*" + parts[i].encoding;
  }
  if (sum > 1) throw InputError("mixture weights sum to " + to_string(sum));
  enc += ")";
  return {enc, enc,
          [wd, parts](const BitString& c, const BitString& x) {
            double v = 0.0;
            for (std::size_t i = 0; i < parts.size(); ++i) v += wd[i] * parts[i].row(c, x);
            return v;
          },
          [parts](std::size_t n) {
            std::size_t m = 0;
            for (const auto& t : parts) m = std::max(m, t.modulus(n));
            return m;
          }};
}

namespace {

// Nonzero-mass cells of P at each conditioning length, built on demand.
class CellCache {
 public:
  explicit CellCache(const CantorMeasure& p) : p_(p) { levels_.push_back({{BitString(), p(BitString())}}); }

  const std::vector<std::pair<BitString, double>>& level(std::size_t m) {
    while (levels_.size() <= m) {
      std::vector<std::pair<BitString, double>> next;
      for (const auto& [c, v] : levels_.back()) {
        for (const char* b : {"0", "1"}) {
          BitString cb = c + BitString::from_trusted(b);
          double mass = p_(cb);
          if (mass > 0.0) next.emplace_back(std::move(cb), mass);
        }
      }
      levels_.push_back(std::move(next));
    }
    return levels_[m];
  }

 private:
  const CantorMeasure& p_;
  std::vector<std::vector<std::pair<BitString, double>>> levels_;
};

}  // namespace

CantorMeasure apply_transition(const Transition& t, const CantorMeasure& p, std::size_t depth) {
  CellCache cells(p);
  auto values = std::make_shared<std::unordered_map<BitString, double>>();
  auto at = [&](const BitString& x, std::size_t m) {
    double v = 0.0;
    for (const auto& [c, mass] : cells.level(m)) v += t.row(c, x) * mass;
    return v;
  };
  for (std::size_t n = 0; n <= depth; ++n) {
    const std::size_t m = t.modulus(n);
    if (m > p.depth_cap()) {
      throw PrecisionError("transition " + t.name + " needs conditioning depth " + std::to_string(m) +
                           " beyond the measure's cap " + std::to_string(p.depth_cap()));
    }
    for (const auto& x : strings_of_length(n)) {
      double v = at(x, m);
      if (m + 1 <= p.depth_cap()) {
        double refined = at(x, m + 1);
        if (std::fabs(refined - v) > kTransitionTolerance) {
          throw PrecisionError("transition " + t.name + " row for \"" + x.str() + "\" did not stabilise");
        }
      }
      (*values)[x] = v;
    }
  }
  auto f = [values](const BitString& x) {
    auto it = values->find(x);
    return it == values->end() ? 0.0 : it->second;
  };
  std::string enc = t.encoding + "(" + p.encoding() + ")";
  return CantorMeasure(t.name + "(" + p.name() + ")", f, depth, enc);
}

Gap transition_conservation_gap(const Transition& t, const CantorMeasure& p, const CantorMeasure& q,
                                std::size_t depth, const OracleConfig& cfg) {
  return make_gap(depth_info(p, q, depth, cfg), depth_info(apply_transition(t, p, depth), q, depth, cfg));
}

// ----------------------------------------------------------------- suites ---

std::vector<CantorMeasure> fixture_cantor_measures() {
  return {
      CantorMeasure::uniform(),
      CantorMeasure::cylinder(BitString("01")),
      CantorMeasure::cylinder(BitString("110")),
      CantorMeasure::point(BitString(""), BitString("0")),
      CantorMeasure::point(BitString("1"), BitString("01")),
      CantorMeasure::point(BitString("0110"), BitString("1")),
      CantorMeasure::bernoulli(Rational(1, 3)),
      CantorMeasure::bernoulli(Rational(3, 4)),
      CantorMeasure::mixture({Rational(1, 2), Rational(1, 2)},
                             {CantorMeasure::cylinder(BitString("0")), CantorMeasure::point(BitString("1"))}),
      CantorMeasure::mixture({Rational(1, 4), Rational(3, 4)},
                             {CantorMeasure::uniform(), CantorMeasure::cylinder(BitString("10"))}),
  };
}

std::vector<TransitionCase> random_transition_cases(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  auto draw = [&](std::uint64_t n) { return rng() % n; };
  const auto measures = fixture_cantor_measures();
  std::vector<TransitionCase> cases;
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t k = 2 + draw(2);
    std::vector<Transition> parts;
    std::vector<unsigned long> raw;
    unsigned long total = 0;
    for (std::size_t j = 0; j < k; ++j) {
      switch (draw(5)) {
        case 0: {
          std::string s(1 + draw(2), '0');
          for (char& c : s) c = draw(2) ? '1' : '0';
          parts.push_back(Transition::prepend(BitString(s)));
          break;
        }
        case 1: parts.push_back(Transition::drop(1 + draw(2))); break;
        case 2: parts.push_back(Transition::flip()); break;
        case 3: parts.push_back(Transition::identity()); break;
        default: parts.push_back(Transition::constant(measures[draw(measures.size())])); break;
      }
      raw.push_back(1 + draw(4));
      total += raw.back();
    }
    std::vector<Rational> w;
    for (auto r : raw) w.push_back(ratio(static_cast<long>(r), static_cast<long>(total)));
    cases.push_back({"transition-" + std::to_string(i), Transition::mixture(w, parts),
                     measures[draw(measures.size())], measures[draw(measures.size())]});
  }
  return cases;
}

// ------------------------------------------------------------------ json ---

std::string depth_table_json(const CantorMeasure& p, std::size_t depth) {
  nlohmann::ordered_json cells = nlohmann::ordered_json::object();
  for (const auto& x : strings_of_length(depth)) cells[x.str()] = p(x);
  nlohmann::ordered_json j;
  j["depth"] = depth;
  j["cells"] = cells;
  return j.dump(2) + "\n";
}

CantorMeasure cantor_from_depth_table(std::string_view text, std::string name) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid depth table: ") + e.what());
  }
  if (!j.is_object() || !j.contains("depth") || !j.contains("cells") || !j["depth"].is_number_unsigned() ||
      !j["cells"].is_object()) {
    throw FormatError("depth table needs \"depth\" and \"cells\"");
  }
  std::map<BitString, double> cells;
  for (const auto& [x, v] : j["cells"].items()) {
    if (!v.is_number()) throw FormatError("cell \"" + x + "\" is not a number");
    cells[BitString(x)] = v.get<double>();
  }
  return CantorMeasure::table(std::move(name), j["depth"].get<std::size_t>(), std::move(cells));
}

}  // namespace probinfo
