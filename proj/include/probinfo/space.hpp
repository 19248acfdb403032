#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "probinfo/bitstring.hpp"
#include "probinfo/cantor.hpp"
#include "probinfo/oracle.hpp"
#include "probinfo/rational.hpp"
#include "probinfo/region.hpp"

namespace probinfo {

/// A space presented through an enumerated basis. Indices start at 1.
struct BasisSpace {
  std::string name;
  std::function<bool(const Rational& point, std::size_t index)> membership;
  /// Optional: true when nu(j) is known to lie inside nu(i).
  std::function<std::optional<bool>(std::size_t j, std::size_t i)> subset_hint;
};

/// pi(point) restricted to the first n basis sets.
BitString pi_encode(const Rational& point, std::size_t n, const BasisSpace& space);
/// Smallest index whose membership separates a and b, if any up to cap.
std::optional<std::size_t> separating_index(const Rational& a, const Rational& b, std::size_t cap,
                                            const BasisSpace& space);

/// The real line with the dyadic basis of a window (lo, hi): nu(1) is the
/// window and nu(2^j + r) is its r-th open sub-interval of level j.
class RealLineSpace {
 public:
  explicit RealLineSpace(Rational lo = 0, Rational hi = 1);

  const Rational& lo() const noexcept { return lo_; }
  const Rational& hi() const noexcept { return hi_; }
  std::string name() const;

  RegionSet basis_set(std::size_t i) const;
  /// Throws BoundaryError when the point is an endpoint of nu(i).
  bool member(const Rational& point, std::size_t i) const;
  /// sigma(x): points whose first |x| membership bits equal x.
  RegionSet sigma(const BitString& x) const;
  BasisSpace basis_space() const;

 private:
  struct SigmaMemo;
  /// sigma regions up to this length are memoized and shared by copies.
  static constexpr std::size_t kSigmaMemoDepth = 16;
  Rational lo_;
  Rational hi_;
  std::shared_ptr<SigmaMemo> memo_;
};

RegionSet sigma_region(const BitString& x, const RealLineSpace& space);

/// A measure on the real line.
class SpaceMeasure {
 public:
  enum class Kind { gaussian, uniform, pulse, point, mixture, grid };

  static SpaceMeasure gaussian(const Rational& mean, const Rational& variance);
  static SpaceMeasure uniform(const Rational& a, const Rational& b);
  /// Gaussian with mean 0.alpha (binary fraction) and variance n^-2.
  static SpaceMeasure pulse(const BitString& alpha, unsigned n);
  static SpaceMeasure point(const Rational& x);
  static SpaceMeasure mixture(const std::vector<Rational>& w, const std::vector<SpaceMeasure>& parts);
  /// Like mixture but the weights may sum past 1; for cover measures.
  static SpaceMeasure envelope(const std::vector<Rational>& w, const std::vector<SpaceMeasure>& parts);
  /// Piecewise-linear density through (k h, values[k - first]).
  static SpaceMeasure grid(double step, long first, std::vector<double> values, std::string encoding);

  Kind kind() const;
  const std::string& encoding() const;
  /// Mean and variance for gaussian and pulse kinds.
  std::pair<Rational, Rational> gaussian_parameters() const;

  double probability(const RegionSet& r) const;
  double probability(const Interval& i) const;
  double total() const;
  bool has_density() const;
  /// Throws DomainError when the measure has atoms.
  double density(double x) const;
  /// An interval outside which the mass is below 1e-15.
  std::pair<double, double> support() const;
  /// {"kind": ..., "parameters": {...}}
  std::string json() const;

  /// Point, uniform, gaussian, pulse and mixtures of these can be sampled.
  bool samplable() const;
  /// Throws InputError when the measure is not samplable.
  Rational sample(std::mt19937_64& rng) const;
  /// (weight, node) pairs: atoms as themselves, densities as midpoints of
  /// `cells` equal cells over the support weighted by cell mass.
  std::vector<std::pair<double, Rational>> quadrature(std::size_t cells) const;

  class Model;

 private:
  explicit SpaceMeasure(std::shared_ptr<const Model> m) : model_(std::move(m)) {}
  std::shared_ptr<const Model> model_;
};

/// F(x) = P(sigma(x)).
CantorMeasure dual_measure(const SpaceMeasure& p, const RealLineSpace& space);

InfoValue space_info(const SpaceMeasure& p, const SpaceMeasure& q, std::size_t depth,
                     const RealLineSpace& space, const OracleConfig& cfg);

struct ConvolutionGrid {
  double step = 1e-2;
  /// Half-width of the kernel window; nonpositive means 8 standard deviations.
  double half_width = 0.0;
  bool closed_form = true;
};

/// P * K with K used as a density. Throws GridError when more than 1e-3 of
/// the kernel mass falls outside the window.
SpaceMeasure convolve(const SpaceMeasure& p, const SpaceMeasure& kernel, const ConvolutionGrid& grid = {});

/// Integral of |f - g| over [lo, hi] by composite Simpson with n panels.
double l1_distance(const std::function<double(double)>& f, const std::function<double(double)>& g, double lo,
                   double hi, std::size_t n = 20000);
double l1_distance(const SpaceMeasure& f, const SpaceMeasure& g, double lo, double hi, std::size_t n = 20000);
/// Triangle density of uniform(0,1) * uniform(0,1).
double triangle_density(double x);

/// {"basis": ..., "window": ["lo","hi"], "measures": [{"name", "kind", "parameters", "encoding"}]}
struct SpaceCatalog {
  RealLineSpace space;
  std::vector<std::pair<std::string, SpaceMeasure>> measures;
  const SpaceMeasure& at(const std::string& name) const;
};
SpaceCatalog space_catalog_from_json(std::string_view text);
std::string to_json(const SpaceCatalog& c);
SpaceMeasure space_measure_from_json(std::string_view text);

}  // namespace probinfo
