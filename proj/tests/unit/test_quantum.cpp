#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "probinfo/errors.hpp"
#include "probinfo/quantum.hpp"
#include "probinfo/random.hpp"

using namespace probinfo;
using probinfo::testing::bits;
using probinfo::testing::fixture_path;
using probinfo::testing::load_fixture;

namespace {

const OracleConfig& cfg20() {
  static const OracleConfig c(load_fixture("bitreg.json"), 20);
  return c;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double total(const SemiMeasure& m) {
  double s = 0.0;
  for (const auto& [x, w] : m.weights()) s += w.get_d();
  return s;
}

// Frozen from the first certified run: 2-qubit basis, bitreg L20, seed 7, 1000 samples.
constexpr double kBasis2qHaarMean = 0.47449453226103133;
constexpr double kBasis2qHaarSE = 0.0029183483651944414;

}  // namespace

TEST_CASE("Hermitian eigenvalues") {
  auto d = CMatrix::diagonal({3.0, -1.0, 2.0}).eigenvalues();
  REQUIRE(d.size() == 3);
  CHECK(d[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(d[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(d[2] == doctest::Approx(3.0).epsilon(1e-12));

  CMatrix y(2);
  y(0, 1) = Complex(0, -1);
  y(1, 0) = Complex(0, 1);
  auto e = y.eigenvalues();
  CHECK(e[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(e[1] == doctest::Approx(1.0).epsilon(1e-12));

  // Spectrum is invariant under conjugation by a unitary.
  const CMatrix u = haar_unitary(4, 3);
  const CMatrix h = u * CMatrix::diagonal({0.1, 0.2, 0.3, 0.4}) * u.adjoint();
  CHECK(h.hermitian_residual() < 1e-12);
  auto ev = h.eigenvalues();
  for (std::size_t k = 0; k < 4; ++k) CHECK(ev[k] == doctest::Approx(0.1 * (k + 1)).epsilon(1e-10));
}

TEST_CASE("Haar unitaries are unitary") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const CMatrix u = haar_unitary(8, s);
    const CMatrix p = u.adjoint() * u;
    for (std::size_t i = 0; i < 8; ++i) {
      for (std::size_t j = 0; j < 8; ++j) CHECK(std::abs(p(i, j) - Complex(i == j ? 1.0 : 0.0)) < 1e-12);
    }
  }
}

TEST_CASE("POVM validation") {
  CHECK(validate_povm(Povm::basis(1)).completeness_residual < 1e-12);
  CHECK(validate_povm(Povm::trivial(1)).min_eigenvalue == doctest::Approx(0.5));
  CHECK(validate_povm(Povm::trine()).completeness_residual < 1e-12);
  CHECK(validate_povm(Povm::basis(3)).min_eigenvalue == doctest::Approx(0.0));

  const Povm doubled("doubled", {CMatrix::diagonal({1, 0}), CMatrix::diagonal({1, 0})});
  CHECK_THROWS_WITH_AS(validate_povm(doubled), doctest::Contains("residual 1"), PovmError);

  const Povm negative("negative", {CMatrix::diagonal({1, 0}), CMatrix::diagonal({1.5, 1}),
                                   CMatrix::diagonal({-1.5, 0})});
  CHECK_THROWS_WITH_AS(validate_povm(negative), doctest::Contains("operator 2"), PovmError);

  CMatrix skew(2);
  skew(0, 0) = skew(1, 1) = 0.5;
  skew(0, 1) = 0.25;
  const Povm tilted("tilted", {skew, CMatrix::identity(2).scaled(0.5)});
  CHECK_THROWS_WITH_AS(validate_povm(tilted), doctest::Contains("operator 0"), PovmError);

  CHECK_THROWS_AS(Povm("odd", {CMatrix::identity(3)}), InputError);
  CHECK_THROWS_AS(Povm("mixed", {CMatrix::identity(2), CMatrix::identity(4)}), InputError);
  CHECK_THROWS_AS(Povm("dup", {CMatrix::identity(2), CMatrix(2)}, {bits("1"), bits("1")}), InputError);
}

TEST_CASE("default labels") {
  CHECK(default_labels(1) == std::vector<BitString>{bits("")});
  CHECK(default_labels(3) == std::vector<BitString>{bits("00"), bits("01"), bits("10")});
  CHECK(Povm::basis(2).labels().back() == bits("11"));
}

TEST_CASE("measurement distributions") {
  const Povm b1 = Povm::basis(1);
  auto d0 = measure_state(b1, basis_state(1, 0));
  CHECK(d0.weights().size() == 1);
  CHECK(d0.weight(bits("0")) == 1);

  auto plus = measure_state(b1, superposition(1, {0, 1}));
  CHECK(std::fabs(plus.weight(bits("0")).get_d() - 0.5) < 1e-12);
  CHECK(std::fabs(plus.weight(bits("1")).get_d() - 0.5) < 1e-12);

  for (std::uint64_t s = 0; s < 20; ++s) {
    auto t = measure_state(Povm::trivial(1), haar_sample(1, s));
    CHECK(t.weight(bits("0")) == ratio(1, 2));
    CHECK(t.weight(bits("1")) == ratio(1, 2));
  }

  CHECK_THROWS_AS(measure_state(Povm::basis(2), basis_state(1, 0)), InputError);
}

TEST_CASE("measured distributions normalize") {
  const std::vector<Povm> povms = {Povm::basis(1), Povm::basis(2), Povm::basis(4), Povm::trine(),
                                   Povm::basis(3).conjugated(haar_unitary(8, 5), "rotated3q")};
  for (const auto& e : povms) {
    for (std::uint64_t s = 0; s < 50; ++s) {
      CHECK(std::fabs(total(measure_state(e, haar_sample(e.qubits(), s))) - 1.0) < 1e-9);
    }
  }
}

TEST_CASE("pure states") {
  CHECK_THROWS_AS(make_state({1.0, 1.0}), InputError);
  CHECK(make_state({Complex(0.6, 0), Complex(0, 0.8)}).dim() == 2);
  CHECK_THROWS_AS(haar_sample(7, 1), InputError);
  for (std::size_t n = 0; n <= 6; ++n) {
    for (std::uint64_t s = 0; s < 100; ++s) CHECK(std::fabs(haar_sample(n, s).norm() - 1.0) < 1e-12);
  }
  CHECK(haar_sample(3, 9).amplitudes == haar_sample(3, 9).amplitudes);
  CHECK(haar_sample(3, 9).amplitudes != haar_sample(3, 10).amplitudes);
  CHECK(haar_sample(3, 9).seed == 9U);
}

TEST_CASE("Haar moment of basis overlaps") {
  constexpr std::size_t kSamples = 10000;
  for (std::size_t n : {1U, 2U, 3U}) {
    const std::size_t d = std::size_t{1} << n;
    for (std::size_t i = 0; i < d; ++i) {
      double sum = 0.0, sq = 0.0;
      for (std::uint64_t s = 0; s < kSamples; ++s) {
        const double v = std::norm(haar_sample(n, derive_seed(1000 + n, s)).amplitudes[i]);
        sum += v;
        sq += v * v;
      }
      const double mean = sum / kSamples;
      const double se = std::sqrt((sq / kSamples - mean * mean) / (kSamples - 1));
      CHECK(std::fabs(mean - 1.0 / static_cast<double>(d)) < 3 * se);
    }
  }
}

TEST_CASE("trivial POVM statistic is constant") {
  auto s = measurement_info_experiment(Povm::trivial(1), 200, 3, cfg20());
  CHECK(s.std_error < 1e-12);
  CHECK(std::fabs(s.adversarial - s.mean) < 1e-12);
  CHECK(s.context == "trivial1q2");
}

TEST_CASE("2-qubit basis Haar mean against frozen baseline") {
  auto s = measurement_info_experiment(Povm::basis(2), 1000, 7, cfg20());
  CHECK(s.mean == doctest::Approx(kBasis2qHaarMean).epsilon(1e-12));
  CHECK(s.std_error == doctest::Approx(kBasis2qHaarSE).epsilon(1e-9));
  CHECK(s.upper == doctest::Approx(s.mean + 3 * s.std_error));
  CHECK(s.adversarial > s.upper);
  CHECK(s.adversarial_state == "e0");

  auto again = measurement_info_experiment(Povm::basis(2), 1000, 7, cfg20());
  CHECK(again.mean == s.mean);

  auto other = measurement_info_experiment(Povm::basis(2), 1000, 8, cfg20());
  CHECK(std::fabs(other.mean - kBasis2qHaarMean) < 3 * std::sqrt(2.0) * kBasis2qHaarSE);
}

TEST_CASE("basis state beats the Haar mean") {
  // |0> yields the point mass at label 0; its value is the oracle's i(0:0).
  const Povm b1 = Povm::basis(1);
  const OracleConfig ctx = cfg20().with_context(b1.encoding());
  const double point = exp2_or_zero(mutual_info(bits("0"), bits("0"), ctx));
  auto s = measurement_info_experiment(b1, 1000, 7, cfg20());
  CHECK(s.adversarial == doctest::Approx(point).epsilon(1e-12));
  CHECK(point > s.mean);
}

TEST_CASE("unitary invariance") {
  for (std::size_t n : {1U, 2U}) {
    const Povm e = Povm::basis(n);
    const Povm r = e.conjugated(haar_unitary(e.dim(), 11), e.name() + "U");
    validate_povm(r);
    // Same relativizing context so only the rotation differs.
    auto a = measurement_info_experiment(e, 1000, 21, cfg20());
    auto b = measurement_info_experiment(Povm(e.name(), r.operators(), r.labels()), 1000, 22, cfg20());
    CHECK(std::fabs(a.mean - b.mean) < 3 * std::hypot(a.std_error, b.std_error));
  }
}

TEST_CASE("POVM files") {
  const Povm b2 = povm_from_json(slurp(fixture_path("basis2q.json")));
  CHECK(b2.name() == "basis2q");
  CHECK(b2.dim() == 4);
  CHECK(b2.labels() == Povm::basis(2).labels());
  validate_povm(b2);
  validate_povm(povm_from_json(slurp(fixture_path("basis1q.json"))));
  validate_povm(povm_from_json(slurp(fixture_path("trivial1q.json"))));

  const Povm t = Povm::trine();
  const Povm back = povm_from_json(to_json(t));
  CHECK(to_json(back) == to_json(t));

  CHECK_THROWS_AS(povm_from_json("{"), FormatError);
  CHECK_THROWS_AS(povm_from_json(R"({"operators": [[[[1,0]],[[0,0]]]]})"), InputError);
  CHECK(povm_from_json(R"({"name": "one", "operators": [[[[1,0]]]]})").qubits() == 0);
}
