#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "probinfo/bitstring.hpp"
#include "probinfo/oracle.hpp"
#include "probinfo/rational.hpp"

namespace probinfo {

/// Finite-support semi-measure over strings with exact weights.
class SemiMeasure {
 public:
  SemiMeasure() = default;
  /// Zero weights are dropped. Throws InputError on a negative weight or a
  /// total above one.
  explicit SemiMeasure(std::map<BitString, Rational> weights);

  static SemiMeasure point(const BitString& x);
  static SemiMeasure uniform(const std::vector<BitString>& support);
  /// Uniform over all strings of length n.
  static SemiMeasure uniform_length(std::size_t n);

  const std::map<BitString, Rational>& weights() const noexcept { return weights_; }
  const Rational& total() const noexcept { return total_; }
  bool is_probability() const { return total_ == 1; }
  bool empty() const noexcept { return weights_.empty(); }
  Rational weight(const BitString& x) const;
  /// Keeps only the listed strings.
  SemiMeasure restricted(const std::vector<BitString>& keep) const;

  friend bool operator==(const SemiMeasure& a, const SemiMeasure& b) { return a.weights_ == b.weights_; }

 private:
  std::map<BitString, Rational> weights_;
  Rational total_ = 0;
};

/// sum_i w_i p_i; the weights must be nonnegative with sum at most one.
SemiMeasure mix(const std::vector<Rational>& w, const std::vector<SemiMeasure>& parts);

/// f(x|z): one probability distribution per input string.
class Channel {
 public:
  Channel() = default;
  /// Throws InputError unless every row has total exactly one.
  explicit Channel(std::map<BitString, SemiMeasure> rows);

  static Channel identity(const std::vector<BitString>& inputs);
  /// Row for z is uniform over strings of length |z|.
  static Channel uniform_spread(const std::vector<BitString>& inputs);
  /// Row for z is the point mass on z with every bit complemented.
  static Channel bit_flip(const std::vector<BitString>& inputs);

  const std::map<BitString, SemiMeasure>& rows() const noexcept { return rows_; }
  /// Throws DomainError naming z when there is no row.
  const SemiMeasure& row(const BitString& z) const;

 private:
  std::map<BitString, SemiMeasure> rows_;
};

/// fp(x) = sum_z f(x|z) p(z), exactly.
SemiMeasure apply_channel(const Channel& f, const SemiMeasure& p);
/// (g o f)(x|z) = sum_y g(x|y) f(y|z).
Channel compose(const Channel& g, const Channel& f);

/// ii(p:q) = log2 sum_{x,y} 2^{i(x:y)} p(x) q(y).
InfoValue discrete_info(const SemiMeasure& p, const SemiMeasure& q, const OracleConfig& cfg);

/// ii(p:q) - ii(fp:q).
Gap conservation_gap(const Channel& f, const SemiMeasure& p, const SemiMeasure& q,
                     const OracleConfig& cfg);

/// One randomly drawn (f, p, q) case for the channel gap suite.
struct ChannelCase {
  std::string id;
  Channel f;
  SemiMeasure p;
  SemiMeasure q;
};

/// Deterministic cases with supports among strings of length <= max_len.
std::vector<ChannelCase> random_channel_cases(std::uint64_t seed, std::size_t count,
                                              std::size_t max_len = 4);

// {"weights": {"01": "1/2", ...}}
std::string to_json(const SemiMeasure& p);
SemiMeasure semimeasure_from_json(std::string_view text);
// {"rows": {"z": {"x": "p/q", ...}, ...}}
std::string to_json(const Channel& f);
Channel channel_from_json(std::string_view text);

}  // namespace probinfo
