#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "probinfo/bitstring.hpp"
#include "probinfo/oracle.hpp"
#include "probinfo/rational.hpp"

namespace probinfo {

/// Measure on infinite binary sequences given by F(x) = P(x{0,1}^N).
class CantorMeasure {
 public:
  using Evaluator = std::function<double(const BitString&)>;

  CantorMeasure(std::string name, Evaluator f, std::size_t depth_cap, std::string encoding = {});

  /// Point mass on prefix tail^inf (tail must be nonempty).
  static CantorMeasure point(const BitString& prefix, const BitString& tail = BitString("0"));
  /// Uniform over sequences starting with x.
  static CantorMeasure cylinder(const BitString& x);
  static CantorMeasure uniform();
  /// Independent bits with P(1) = p.
  static CantorMeasure bernoulli(const Rational& p);
  /// Masses of the depth-d cells; shallower F values are sums of cells.
  static CantorMeasure table(std::string name, std::size_t depth, std::map<BitString, double> cells);
  static CantorMeasure mixture(const std::vector<Rational>& w, const std::vector<CantorMeasure>& parts);

  double operator()(const BitString& x) const;
  const std::string& name() const noexcept { return name_; }
  const std::string& encoding() const noexcept { return encoding_; }
  std::size_t depth_cap() const noexcept { return depth_cap_; }

 private:
  std::string name_;
  std::shared_ptr<const Evaluator> f_;
  std::size_t depth_cap_;
  std::string encoding_;
};

inline constexpr std::size_t kUnboundedDepth = 64;
inline constexpr double kAdditivityTolerance = 1e-9;

/// Throws MeasureError naming the first x with |x| < depth where
/// F(x) != F(x0) + F(x1), or when F("") exceeds one.
void check_additivity(const CantorMeasure& p, std::size_t depth);

/// log2 sum_{x,y in {0,1}^depth} P(x) Q(y) 2^{oI(x:y)}.
InfoValue depth_info(const CantorMeasure& p, const CantorMeasure& q, std::size_t depth,
                     const OracleConfig& cfg);

/// Lambda(target cylinder | conditioning prefix). `modulus(n)` is a
/// conditioning length at which every row value for targets of length n is
/// already determined.
struct Transition {
  std::string name;
  std::string encoding;
  std::function<double(const BitString& cond, const BitString& target)> row;
  std::function<std::size_t(std::size_t)> modulus;

  static Transition identity();
  /// Every row is r.
  static Transition constant(const CantorMeasure& r);
  /// Row for beta is the point mass on bits + beta.
  static Transition prepend(const BitString& bits);
  /// Row for beta is the point mass on beta with the first k bits removed.
  static Transition drop(std::size_t k);
  /// Row for beta is the point mass on the complement of beta.
  static Transition flip();
  /// sum_k w_k Lambda_k with nonnegative weights summing to at most one.
  static Transition mixture(const std::vector<Rational>& w, const std::vector<Transition>& parts);
};

inline constexpr double kTransitionTolerance = 1e-6;

/// (Lambda P)(x) for every |x| <= depth, refining the conditioning cells
/// from modulus(|x|) until the value is stable within 1e-6. Throws
/// PrecisionError when the refinement would exceed P's depth cap.
CantorMeasure apply_transition(const Transition& t, const CantorMeasure& p, std::size_t depth);

/// depth_info(P, Q) - depth_info(Lambda P, Q).
Gap transition_conservation_gap(const Transition& t, const CantorMeasure& p, const CantorMeasure& q,
                                std::size_t depth, const OracleConfig& cfg);

struct TransitionCase {
  std::string id;
  Transition t;
  CantorMeasure p;
  CantorMeasure q;
};

/// Deterministic random mixtures of prepend/drop/flip/identity/constant
/// rows, each paired with a random measure pair.
std::vector<TransitionCase> random_transition_cases(std::uint64_t seed, std::size_t count);
/// Fixture measures used by the transition and depth suites.
std::vector<CantorMeasure> fixture_cantor_measures();

// {"depth": d, "cells": {"x": value}}
std::string depth_table_json(const CantorMeasure& p, std::size_t depth);
CantorMeasure cantor_from_depth_table(std::string_view text, std::string name = "table");

}  // namespace probinfo
