#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "probinfo/bitstring.hpp"
#include "probinfo/machine.hpp"
#include "probinfo/rational.hpp"

namespace probinfo {

struct Bounds {
  std::size_t max_len = 20;
  std::uint64_t budget = kDefaultBudget;
  friend bool operator==(const Bounds&, const Bounds&) = default;
};

enum class Resolution { resolved, partial, unresolved };
std::string_view to_string(Resolution r);

/// A log2-domain information value together with the resource bounds and
/// machine it was computed under. Unresolved values carry NaN.
struct InfoValue {
  double value = 0.0;
  Resolution resolution = Resolution::unresolved;
  /// Fraction of the weight mass whose terms the oracle resolved.
  double coverage = 0.0;
  Bounds bounds;
  std::string machine;
  std::string note;

  bool numeric() const { return resolution != Resolution::unresolved; }
};

/// before - after for a processing step. NaN when either side is
/// unresolved; exactly 0 when both sides are equal (including -inf).
struct Gap {
  double value = 0.0;
  InfoValue before;
  InfoValue after;
};
Gap make_gap(InfoValue before, InfoValue after);

/// 2^value, with unresolved values and -infinity counted as 0.
double exp2_or_zero(const InfoValue& v);

/// Sum of 2^-|p| over programs, as numerator / 2^max_len.
struct OutputStats {
  std::uint64_t mass = 0;
  std::size_t min_len = 0;
};

/// Outputs of every halting program under one auxiliary string.
struct OutputTable {
  std::size_t exponent = 0;
  std::unordered_map<BitString, OutputStats> outputs;
};

/// Output masses grouped by the auxiliary prefix the program read.
struct RelativeTable {
  std::size_t max_aux = 0;
  std::size_t exponent = 0;
  std::map<BitString, std::unordered_map<BitString, std::uint64_t>> by_prefix;
};

/// Sparse index of every pair (a, b) for which K(a), K(b) and K(<a><b>)
/// are all resolved, with the exponent i(a:b) = K(a) + K(b) - K(<a><b>).
class InfoKernel {
 public:
  using Row = std::vector<std::pair<BitString, long>>;

  explicit InfoKernel(std::shared_ptr<const OutputTable> table);

  std::optional<std::size_t> complexity(const BitString& x) const;
  std::optional<long> exponent(const BitString& a, const BitString& b) const;
  const Row* row(const BitString& a) const;
  std::size_t term_count() const noexcept { return terms_; }
  const std::map<BitString, Row>& rows() const noexcept { return rows_; }

 private:
  std::shared_ptr<const OutputTable> table_;
  std::map<BitString, Row> rows_;
  std::size_t terms_ = 0;
};

namespace detail {
class OracleMemo;
}

/// Machine, resource bounds and a shared memo of enumeration results.
/// Copies share the memo; all queries are safe from concurrent callers.
/// `context` is the auxiliary string under which "unconditional"
/// quantities (K(x), K(x,y), i(x:y)) are evaluated; it is empty unless the
/// reference machine is relativized (e.g. to a POVM encoding).
class OracleConfig {
 public:
  OracleConfig(MachineSpec machine, std::size_t max_len, std::uint64_t budget = kDefaultBudget,
               BitString context = {});

  const MachineSpec& machine() const noexcept { return machine_; }
  std::size_t max_len() const noexcept { return bounds_.max_len; }
  std::uint64_t budget() const noexcept { return bounds_.budget; }
  const Bounds& bounds() const noexcept { return bounds_; }
  const BitString& context() const noexcept { return context_; }

  /// Same machine and bounds, relativized to `context`; fresh memo.
  OracleConfig with_context(BitString context) const;

  std::shared_ptr<const OutputTable> table(const BitString& aux) const;
  std::shared_ptr<const RelativeTable> relative(std::size_t max_aux) const;
  std::shared_ptr<const InfoKernel> kernel() const;

  /// Value skeleton carrying this config's provenance.
  InfoValue stamp() const;

 private:
  MachineSpec machine_;
  Bounds bounds_;
  BitString context_;
  std::shared_ptr<detail::OracleMemo> memo_;
};

/// Auxiliary strings up to this length are served from one shared
/// relative table instead of a fresh enumeration per string.
inline constexpr std::size_t kRelativeAuxCap = 8;

/// m(x|aux) restricted to the bounds: exact dyadic rational.
Rational alg_prob(const BitString& x, const BitString& aux, const OracleConfig& cfg);
/// K(x|aux) restricted to the bounds; nullopt when no program was found.
std::optional<std::size_t> complexity(const BitString& x, const BitString& aux,
                                      const OracleConfig& cfg);
/// K(x) relative to cfg.context().
std::optional<std::size_t> complexity(const BitString& x, const OracleConfig& cfg);

/// i(x:y) = K(x) + K(y) - K(<x><y>); unresolved if any term is missing.
InfoValue mutual_info(const BitString& x, const BitString& y, const OracleConfig& cfg);

/// om(.|x): outputs of programs that read at most |x| auxiliary bits of x,
/// as numerators over 2^max_len.
std::unordered_map<BitString, std::uint64_t> bounded_prob(const BitString& x,
                                                          const OracleConfig& cfg);

/// log2 sum_{a,b} om(a|x) om(b|y) 2^{i(a:b)}, computed exactly before the
/// final logarithm. Unresolved when no term resolves.
InfoValue bounded_info(const BitString& x, const BitString& y, const OracleConfig& cfg);

/// log2 sum_{a,b} u(a) v(b) 2^{i(a:b)} over resolved terms, summed exactly.
/// Coverage is the resolved share of total(u) * total(v). An empty support
/// gives -infinity with an "empty support" note.
InfoValue weighted_info(const std::map<BitString, Rational>& u,
                        const std::map<BitString, Rational>& v, const OracleConfig& cfg);
/// Same sum for real weights, accumulated in the log domain.
InfoValue weighted_info(const std::map<BitString, double>& u, const std::map<BitString, double>& v,
                        const OracleConfig& cfg);

/// Visits every resolved term of sum_{a,b} u(a) v(b) 2^{i(a:b)}. U and V are
/// associative containers keyed by BitString. The visiting order depends
/// only on the inputs, never on timing.
template <class U, class V, class F>
void for_each_resolved_term(const InfoKernel& kernel, const U& u, const V& v, F&& visit) {
  if (u.size() * v.size() <= kernel.term_count()) {
    for (const auto& [a, wa] : u) {
      for (const auto& [b, wb] : v) {
        if (auto e = kernel.exponent(a, b)) visit(wa, wb, *e);
      }
    }
    return;
  }
  for (const auto& [a, wa] : u) {
    const InfoKernel::Row* row = kernel.row(a);
    if (row == nullptr) continue;
    for (const auto& [b, e] : *row) {
      if (auto it = v.find(b); it != v.end()) visit(wa, it->second, e);
    }
  }
}

}  // namespace probinfo
