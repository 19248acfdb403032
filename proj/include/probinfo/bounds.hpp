#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "probinfo/discrete.hpp"
#include "probinfo/oracle.hpp"
#include "probinfo/random.hpp"
#include "probinfo/region.hpp"
#include "probinfo/space.hpp"

namespace probinfo {

// ------------------------------------------------------------- families ---

/// Finitely many pairwise disjoint open regions phi_i, indexed from
/// `first`, with the witness list of basis indices j <= `basis_cap` whose
/// nu(j) lies inside some phi_i.
class DisjointOpenFamily {
 public:
  /// Throws DisjointnessError naming the first overlapping pair.
  DisjointOpenFamily(std::string name, std::vector<RegionSet> sets, const RealLineSpace& space,
                     std::uint64_t first = 1, std::size_t basis_cap = 256);

  /// {(a, b), (b, c), ...} for the given cut points.
  static DisjointOpenFamily partition(std::string name, const std::vector<Rational>& cuts,
                                      const RealLineSpace& space, std::uint64_t first = 1);
  /// The 2^m open dyadic intervals of level m inside the window.
  static DisjointOpenFamily dyadic(std::size_t m, const RealLineSpace& space);
  /// (n, n + 1) for n = first .. last.
  static DisjointOpenFamily unit_intervals(std::uint64_t first, std::uint64_t last, const RealLineSpace& space);

  const std::string& name() const noexcept { return name_; }
  const std::vector<RegionSet>& sets() const noexcept { return sets_; }
  std::uint64_t index(std::size_t k) const { return first_ + k; }
  std::uint64_t first() const noexcept { return first_; }
  /// (i, j) with nu(j) inside phi_i, ordered by j.
  const std::vector<std::pair<std::uint64_t, std::size_t>>& witness() const noexcept { return witness_; }
  std::size_t basis_cap() const noexcept { return cap_; }

 private:
  std::string name_;
  std::vector<RegionSet> sets_;
  std::uint64_t first_;
  std::size_t cap_;
  std::vector<std::pair<std::uint64_t, std::size_t>> witness_;
};

/// Code of family index i: its binary numeral.
BitString family_code(std::uint64_t i);

/// A(p) = <i> for the first 1-bit of p at a witnessed basis index of phi_i,
/// else the empty string. Prefix monotone by construction.
class Selector {
 public:
  BitString operator()(const BitString& p) const;
  const std::map<std::size_t, std::uint64_t>& table() const noexcept { return owner_; }

 private:
  friend Selector build_selector(const DisjointOpenFamily&);
  std::map<std::size_t, std::uint64_t> owner_;
};

/// Throws DisjointnessError when one basis index is witnessed for two sets.
Selector build_selector(const DisjointOpenFamily& family);

/// The index semi-measure i -> P(phi_i) on family codes.
std::map<BitString, double> family_weights(const DisjointOpenFamily& family, const SpaceMeasure& p);

/// discrete information of the index semi-measures of P and Q. Throws
/// MeasureError when a family mass exceeds 1.
InfoValue transfer_lower_bound(const DisjointOpenFamily& family, const SpaceMeasure& p, const SpaceMeasure& q,
                               const OracleConfig& cfg);

// -------------------------------------------------------------- catalog ---

/// Declares that the entry covers `covered`. A closed-form claim asserts
/// density domination and is spot-checked instead of checked cell by cell.
struct CoverClaim {
  std::string covered;
  bool closed_form = false;
};

class MeasureCatalog {
 public:
  using Measure = std::variant<SpaceMeasure, SemiMeasure>;
  struct Entry {
    std::string name;
    Measure measure;
    std::string text;
    BitString encoding;
    std::vector<CoverClaim> covers;
  };

  /// Cells of the cover grid: 2^depth equal cells over the joint support.
  static constexpr std::size_t kGridDepth = 8;

  /// Throws CatalogError on a duplicate name or encoding. Without an
  /// explicit encoding the entry is encoded as ascii_bits(canonical_text).
  void add(std::string name, Measure measure, std::vector<CoverClaim> covers = {},
           std::optional<BitString> encoding = std::nullopt);

  bool contains(const std::string& name) const;
  /// Throws CatalogError for unknown names.
  const Entry& at(const std::string& name) const;
  const std::vector<Entry>& entries() const noexcept { return entries_; }

  /// `base` with the catalog encodings as its library, in catalog order,
  /// so that early entries get short programs.
  MachineSpec machine(const MachineSpec& base) const;

  /// Throws CoverError with a witness cell (or string) when m fails to
  /// dominate p. Every measure covers itself.
  void verify_cover(const std::string& m, const std::string& p) const;
  /// Verifies every declared claim.
  void verify() const;

 private:
  std::vector<Entry> entries_;
};

/// Canonical text of a measure: its encoding string.
std::string canonical_text(const MeasureCatalog::Measure& m);
/// ASCII bits of the text, eight per character, most significant first.
BitString ascii_bits(std::string_view text);

/// {"measures": [{"name", "space" | "discrete", "encoding"?, "covers": [{"name", "closed_form"}]}]}
MeasureCatalog measure_catalog_from_json(std::string_view text);
std::string to_json(const MeasureCatalog& c);

// --------------------------------------------------------------- bounds ---

struct CoverBound {
  double bound = 0.0;
  /// i(e(M):e(R)).
  InfoValue encoding_info;
  /// log2 M(X) R(X).
  double log_mass = 0.0;
  InfoValue observed;
};

/// bound = i(e(M):e(R)) + log2 M(X)R(X) against the observed information of
/// P and Q (space_info at `depth` for space measures, discrete_info for
/// discrete ones). `cfg` should run the catalog machine.
CoverBound cover_upper_bound(const MeasureCatalog& catalog, const std::string& m, const std::string& r,
                             const std::string& p, const std::string& q, std::size_t depth,
                             const RealLineSpace& space, const OracleConfig& cfg);

/// (discrete_info(p,p), K(e(p))) for a catalogued discrete measure.
std::pair<InfoValue, std::optional<std::size_t>> computable_self_info_bound(const MeasureCatalog& catalog,
                                                                           const std::string& p,
                                                                           const OracleConfig& cfg);

struct MixtureReport {
  InfoValue mixture;
  /// 2^info(mixture).
  double direct = 0.0;
  /// sum_{i,j} w_i w_j 2^info(mu_i:mu_j), i.e. the expectation over i,j ~ w.
  double expectation = 0.0;
  double relative_error = 0.0;
  /// K of the mixture's canonical encoding, when resolved.
  std::optional<std::size_t> encoding_complexity;
};

inline constexpr double kMixtureTolerance = 1e-9;

/// Throws InputError unless the weights sum to exactly 1.
MixtureReport mixture_identity_check(const std::vector<Rational>& w, const std::vector<SemiMeasure>& parts,
                                     const OracleConfig& cfg);
MixtureReport mixture_identity_check(const std::vector<Rational>& w, const std::vector<SpaceMeasure>& parts,
                                     std::size_t depth, const RealLineSpace& space, const OracleConfig& cfg);

using ParameterFamily = std::function<SpaceMeasure(const Rational&)>;

struct AveragedStats {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double mean = 0.0;
  double std_error = 0.0;
  /// 2^info of the averaged measure, by quadrature over the parameters.
  double averaged = 0.0;
  InfoValue averaged_info;
  /// averaged >= mean - 3 std_error.
  bool dominated = false;
};

inline constexpr std::size_t kDefaultSamples = 1000;
inline constexpr std::size_t kQuadratureCells = 256;

/// Monte-Carlo E_{a,b ~ M}[2^{I(G_a:G_b)}] against the averaged measure.
/// Throws InputError when M cannot be sampled.
AveragedStats averaged_transition_expectation(const ParameterFamily& gamma, const SpaceMeasure& parameters,
                                              std::size_t samples, std::uint64_t seed, std::size_t depth,
                                              const RealLineSpace& space, const OracleConfig& cfg);

// ------------------------------------------------------------- fixtures ---

/// Ten families on the window of `space`.
std::vector<DisjointOpenFamily> fixture_families(const RealLineSpace& space);
/// Five (P, Q) pairs of space measures.
std::vector<std::pair<SpaceMeasure, SpaceMeasure>> fixture_space_pairs();
/// Gaussians N(n, 1/16) for n = 1..8 as "N1".."N8" first, then the cover
/// examples on the line.
MeasureCatalog fixture_catalog();
/// Ten discrete measures.
MeasureCatalog fixture_discrete_catalog();
/// (M, R, P, Q): M covers P and R covers Q.
struct CoverCase {
  std::string m, r, p, q;
};
std::vector<CoverCase> fixture_cover_cases();
std::vector<CoverCase> fixture_discrete_cover_cases();

// ---------------------------------------------------------------- files ---

/// {"name", "first", "sets": [[["lo","hi"], ...], ...]} with open intervals
/// and null for an infinite endpoint.
DisjointOpenFamily family_from_json(std::string_view text, const RealLineSpace& space);
std::string to_json(const DisjointOpenFamily& f);

}  // namespace probinfo
