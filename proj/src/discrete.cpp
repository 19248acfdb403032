#include "probinfo/discrete.hpp"

#include <algorithm>
#include <json.hpp>
#include <limits>
#include <random>

#include "probinfo/errors.hpp"

namespace probinfo {

using nlohmann::ordered_json;

SemiMeasure::SemiMeasure(std::map<BitString, Rational> weights) {
  for (auto it = weights.begin(); it != weights.end();) {
    it->second.canonicalize();
    if (sgn(it->second) < 0) throw InputError("negative weight on \"" + it->first.str() + "\"");
    if (sgn(it->second) == 0) {
      it = weights.erase(it);
      continue;
    }
    total_ += it->second;
    ++it;
  }
  if (total_ > 1) throw InputError("semi-measure total " + to_string(total_) + " exceeds 1");
  weights_ = std::move(weights);
}

SemiMeasure SemiMeasure::point(const BitString& x) { return SemiMeasure({{x, Rational(1)}}); }

SemiMeasure SemiMeasure::uniform(const std::vector<BitString>& support) {
  if (support.empty()) return {};
  std::map<BitString, Rational> w;
  Rational each(1, static_cast<unsigned long>(support.size()));
  for (const auto& x : support) w[x] += each;
  return SemiMeasure(std::move(w));
}

SemiMeasure SemiMeasure::uniform_length(std::size_t n) { return uniform(strings_of_length(n)); }

Rational SemiMeasure::weight(const BitString& x) const {
  auto it = weights_.find(x);
  return it == weights_.end() ? Rational(0) : it->second;
}

SemiMeasure SemiMeasure::restricted(const std::vector<BitString>& keep) const {
  std::map<BitString, Rational> w;
  for (const auto& x : keep) {
    if (auto it = weights_.find(x); it != weights_.end()) w[x] = it->second;
  }
  return SemiMeasure(std::move(w));
}

SemiMeasure mix(const std::vector<Rational>& w, const std::vector<SemiMeasure>& parts) {
  if (w.size() != parts.size()) throw InputError("mixture weight count does not match components");
  std::map<BitString, Rational> acc;
  Rational sum = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (sgn(w[i]) < 0) throw InputError("negative mixture weight");
    sum += w[i];
    for (const auto& [x, p] : parts[i].weights()) acc[x] += w[i] * p;
  }
  if (sum > 1) throw InputError("mixture weights sum to " + to_string(sum));
  return SemiMeasure(std::move(acc));
}

// -------------------------------------------------------------- channels ---

Channel::Channel(std::map<BitString, SemiMeasure> rows) : rows_(std::move(rows)) {
  for (const auto& [z, row] : rows_) {
    if (!row.is_probability()) {
      throw InputError("channel row \"" + z.str() + "\" has total " + to_string(row.total()));
    }
  }
}

Channel Channel::identity(const std::vector<BitString>& inputs) {
  std::map<BitString, SemiMeasure> rows;
  for (const auto& z : inputs) rows.emplace(z, SemiMeasure::point(z));
  return Channel(std::move(rows));
}

Channel Channel::uniform_spread(const std::vector<BitString>& inputs) {
  std::map<BitString, SemiMeasure> rows;
  for (const auto& z : inputs) rows.emplace(z, SemiMeasure::uniform_length(z.size()));
  return Channel(std::move(rows));
}

Channel Channel::bit_flip(const std::vector<BitString>& inputs) {
  std::map<BitString, SemiMeasure> rows;
  for (const auto& z : inputs) {
    std::string f = z.str();
    for (char& c : f) c = c == '0' ? '1' : '0';
    rows.emplace(z, SemiMeasure::point(BitString::from_trusted(f)));
  }
  return Channel(std::move(rows));
}

const SemiMeasure& Channel::row(const BitString& z) const {
  auto it = rows_.find(z);
  if (it == rows_.end()) throw DomainError("channel has no row for \"" + z.str() + "\"");
  return it->second;
}

SemiMeasure apply_channel(const Channel& f, const SemiMeasure& p) {
  std::map<BitString, Rational> out;
  for (const auto& [z, pz] : p.weights()) {
    for (const auto& [x, fxz] : f.row(z).weights()) out[x] += fxz * pz;
  }
  return SemiMeasure(std::move(out));
}

Channel compose(const Channel& g, const Channel& f) {
  std::map<BitString, SemiMeasure> rows;
  for (const auto& [z, row] : f.rows()) rows.emplace(z, apply_channel(g, row));
  return Channel(std::move(rows));
}

// ----------------------------------------------------------- information ---

InfoValue discrete_info(const SemiMeasure& p, const SemiMeasure& q, const OracleConfig& cfg) {
  return weighted_info(p.weights(), q.weights(), cfg);
}

Gap conservation_gap(const Channel& f, const SemiMeasure& p, const SemiMeasure& q,
                     const OracleConfig& cfg) {
  return make_gap(discrete_info(p, q, cfg), discrete_info(apply_channel(f, p), q, cfg));
}

namespace {

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

std::vector<BitString> pick_support(std::mt19937_64& rng, const std::vector<BitString>& pool,
                                    std::size_t k) {
  std::vector<BitString> chosen;
  while (chosen.size() < k) {
    const auto& s = pool[draw(rng, pool.size())];
    if (std::find(chosen.begin(), chosen.end(), s) == chosen.end()) chosen.push_back(s);
  }
  return chosen;
}

SemiMeasure random_measure(std::mt19937_64& rng, const std::vector<BitString>& support,
                           const Rational& total) {
  std::vector<unsigned long> raw;
  unsigned long sum = 0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    raw.push_back(1 + draw(rng, 8));
    sum += raw.back();
  }
  std::map<BitString, Rational> w;
  for (std::size_t i = 0; i < support.size(); ++i) w[support[i]] = total * ratio(static_cast<long>(raw[i]), static_cast<long>(sum));
  return SemiMeasure(std::move(w));
}

}  // namespace

std::vector<ChannelCase> random_channel_cases(std::uint64_t seed, std::size_t count,
                                              std::size_t max_len) {
  std::mt19937_64 rng(seed);
  const auto pool = strings_up_to(max_len);
  std::vector<ChannelCase> cases;
  for (std::size_t i = 0; i < count; ++i) {
    ChannelCase c;
    c.id = "channel-" + std::to_string(i);
    auto sp = pick_support(rng, pool, 1 + draw(rng, 4));
    auto sq = pick_support(rng, pool, 1 + draw(rng, 4));
    c.p = random_measure(rng, sp, ratio(static_cast<long>(4 + draw(rng, 5)), 8));
    c.q = random_measure(rng, sq, ratio(static_cast<long>(4 + draw(rng, 5)), 8));
    switch (i % 5) {
      case 1:
        c.f = Channel::uniform_spread(sp);
        c.id += "-spread";
        break;
      case 2:
        c.f = Channel::bit_flip(sp);
        c.id += "-flip";
        break;
      case 4: {
        std::map<BitString, SemiMeasure> rows;
        for (const auto& z : sp) rows.emplace(z, SemiMeasure::point(pool[draw(rng, pool.size())]));
        c.f = Channel(std::move(rows));
        c.id += "-function";
        break;
      }
      default: {
        std::map<BitString, SemiMeasure> rows;
        for (const auto& z : sp) rows.emplace(z, random_measure(rng, pick_support(rng, pool, 1 + draw(rng, 3)), 1));
        c.f = Channel(std::move(rows));
        c.id += "-random";
        break;
      }
    }
    cases.push_back(std::move(c));
  }
  return cases;
}

// ------------------------------------------------------------------ json ---

namespace {

ordered_json weights_json(const SemiMeasure& p) {
  ordered_json w = ordered_json::object();
  for (const auto& [x, v] : p.weights()) w[x.str()] = to_string(v);
  return w;
}

SemiMeasure weights_from(const ordered_json& w) {
  if (!w.is_object()) throw FormatError("weights must be an object");
  std::map<BitString, Rational> m;
  for (const auto& [k, v] : w.items()) {
    if (v.is_string()) {
      m[BitString(k)] = parse_rational(v.get<std::string>());
    } else if (v.is_number_integer()) {
      m[BitString(k)] = Rational(v.get<long>());
    } else {
      throw FormatError("weight for \"" + k + "\" must be a \"p/q\" string");
    }
  }
  return SemiMeasure(std::move(m));
}

ordered_json parse(std::string_view text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace

std::string to_json(const SemiMeasure& p) {
  ordered_json j;
  j["weights"] = weights_json(p);
  return j.dump(2) + "\n";
}

SemiMeasure semimeasure_from_json(std::string_view text) {
  auto j = parse(text);
  if (!j.is_object() || !j.contains("weights")) throw FormatError("missing \"weights\"");
  return weights_from(j["weights"]);
}

std::string to_json(const Channel& f) {
  ordered_json rows = ordered_json::object();
  for (const auto& [z, row] : f.rows()) rows[z.str()] = weights_json(row);
  ordered_json j;
  j["rows"] = rows;
  return j.dump(2) + "\n";
}

Channel channel_from_json(std::string_view text) {
  auto j = parse(text);
  if (!j.is_object() || !j.contains("rows") || !j["rows"].is_object()) throw FormatError("missing \"rows\"");
  std::map<BitString, SemiMeasure> rows;
  for (const auto& [z, w] : j["rows"].items()) rows.emplace(BitString(z), weights_from(w));
  return Channel(std::move(rows));
}

}  // namespace probinfo
