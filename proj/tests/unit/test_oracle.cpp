#include <doctest.h>

#include <cmath>
#include <thread>

#include "fixtures.hpp"
#include "probinfo/oracle.hpp"
#include "table_oracle.hpp"

using namespace probinfo;
using probinfo::testing::bits;
using probinfo::testing::load_fixture;
using probinfo::testing::TableScanOracle;

namespace {

// Frozen from the table-scan oracle: max |K(<x><y>) - K(<y><x>)| over
// resolved pairs with |x|,|y| <= 4 on M0 at the hard cap.
constexpr long kM0SymmetryDefect = 4;
constexpr int kM0SymmetryPairs = 3;

bool close(double a, double b) { return std::fabs(a - b) <= 1e-12 * std::max(1.0, std::fabs(b)); }

}  // namespace

TEST_CASE("M0 probabilities and complexities") {
  OracleConfig cfg(load_fixture("m0.json"), 20);
  CHECK(alg_prob(bits(""), bits(""), cfg) == Rational(1, 2));
  CHECK(alg_prob(bits("0"), bits(""), cfg) == Rational(1, 4));
  CHECK(alg_prob(bits("11111"), bits(""), cfg) == 0);
  CHECK(complexity(bits(""), bits(""), cfg) == 1u);
  CHECK(complexity(bits("1"), bits(""), cfg) == 3u);
  OracleConfig none(load_fixture("m0.json"), 0);
  CHECK_FALSE(complexity(bits(""), bits(""), none).has_value());
  CHECK_FALSE(complexity(bits("1"), bits("0"), none).has_value());
}

TEST_CASE("M0 mutual information") {
  OracleConfig cfg(load_fixture("m0.json"), 20);
  auto v = mutual_info(bits(""), bits(""), cfg);
  REQUIRE(v.numeric());
  CHECK(v.value == -2.0);
  CHECK(v.bounds.max_len == 20);
  CHECK(v.machine == "M0");
  for (const auto& x : strings_up_to(3)) {
    auto kx = complexity(x, cfg);
    auto kxx = complexity(pair_encode(x, x), cfg);
    auto ii = mutual_info(x, x, cfg);
    if (kx && kxx) {
      REQUIRE(ii.numeric());
      CHECK(ii.value == 2.0 * static_cast<double>(*kx) - static_cast<double>(*kxx));
    } else {
      CHECK_FALSE(ii.numeric());
      CHECK(std::isnan(ii.value));
    }
  }
}

TEST_CASE("M0 symmetry defect stays at the frozen baseline") {
  auto m0 = load_fixture("m0.json");
  OracleConfig cfg(m0, kHardCap);
  TableScanOracle brute(m0, kHardCap);
  long worst = 0;
  int resolved = 0;
  for (const auto& x : strings_up_to(4)) {
    for (const auto& y : strings_up_to(4)) {
      auto a = mutual_info(x, y, cfg), b = mutual_info(y, x, cfg);
      auto ba = brute.i(x.str(), y.str());
      CHECK(a.numeric() == ba.has_value());
      if (!a.numeric() || !b.numeric()) continue;
      CHECK(a.value == static_cast<double>(*ba));
      ++resolved;
      worst = std::max(worst, static_cast<long>(std::fabs(a.value - b.value)));
    }
  }
  CHECK(resolved == kM0SymmetryPairs);
  CHECK(worst == kM0SymmetryDefect);
}

TEST_CASE("table machines agree with the table-scan oracle") {
  for (const char* f : {"m0.json", "m1.json"}) {
    auto m = load_fixture(f);
    OracleConfig cfg(m, 20);
    TableScanOracle brute(m, 20);
    for (const auto& aux : strings_up_to(2)) {
      for (const auto& x : strings_up_to(4)) {
        CHECK(alg_prob(x, aux, cfg) == brute.m(x.str(), aux.str()));
        CHECK(complexity(x, aux, cfg) == brute.K(x.str(), aux.str()));
      }
    }
    for (const auto& x : strings_up_to(3)) {
      auto om = bounded_prob(x, cfg);
      auto expect = brute.om(x.str());
      CHECK(om.size() == expect.size());
      for (const auto& [a, w] : expect) CHECK(Rational(om[BitString(a)]) / pow2(20) == w);
      for (const auto& y : strings_up_to(3)) {
        auto v = bounded_info(x, y, cfg);
        auto s = brute.bounded_sum(x.str(), y.str());
        REQUIRE(v.numeric() == s.has_value());
        if (s) CHECK(close(v.value, log2_rational(*s)));
      }
    }
  }
}

TEST_CASE("M1 bounded information at 11:11") {
  auto m1 = load_fixture("m1.json");
  OracleConfig cfg(m1, 20);
  auto v = bounded_info(bits("11"), bits("11"), cfg);
  REQUIRE(v.resolution != Resolution::unresolved);
  auto s = TableScanOracle(m1, 20).bounded_sum("11", "11");
  REQUIRE(s);
  CHECK(close(v.value, log2_rational(*s)));
  CHECK(v.coverage > 0.0);
  CHECK(v.coverage <= 1.0);
}

TEST_CASE("aux-free machine gives constant bounded information") {
  OracleConfig cfg(load_fixture("m0.json"), 20);
  auto base = bounded_info(bits(""), bits(""), cfg);
  REQUIRE(base.numeric());
  for (const auto& x : strings_up_to(3))
    for (const auto& y : strings_up_to(3)) CHECK(bounded_info(x, y, cfg).value == base.value);
}

TEST_CASE("bounded information is prefix monotone") {
  for (const char* f : {"m1.json", "bitreg.json"}) {
    OracleConfig cfg(load_fixture(f), 16);
    std::vector<BitString> ys = {bits(""), bits("1"), bits("011"), bits("11010010")};
    for (const auto& y : ys) {
      for (const auto& x : strings_up_to(8)) {
        if (x.empty()) continue;
        auto parent = bounded_info(x.prefix(x.size() - 1), y, cfg);
        auto child = bounded_info(x, y, cfg);
        if (!parent.numeric()) continue;
        REQUIRE(child.numeric());
        CHECK(child.value >= parent.value - 1e-12 * std::fabs(parent.value));
        auto swapped_parent = bounded_info(y, x.prefix(x.size() - 1), cfg);
        auto swapped_child = bounded_info(y, x, cfg);
        CHECK(swapped_child.value >= swapped_parent.value - 1e-12 * std::fabs(swapped_parent.value));
      }
    }
  }
}

TEST_CASE("resource monotonicity") {
  auto m = load_fixture("bitreg.json");
  std::vector<Bounds> grid = {{8, 16}, {10, 32}, {12, 64}, {14, 256}, {16, kDefaultBudget}};
  std::vector<OracleConfig> cfgs;
  for (const auto& b : grid) cfgs.emplace_back(m, b.max_len, b.budget);
  for (const auto& x : strings_up_to(4)) {
    for (const auto& aux : {bits(""), bits("10")}) {
      for (std::size_t i = 0; i + 1 < cfgs.size(); ++i) {
        CHECK(alg_prob(x, aux, cfgs[i]) <= alg_prob(x, aux, cfgs[i + 1]));
        auto k0 = complexity(x, aux, cfgs[i]), k1 = complexity(x, aux, cfgs[i + 1]);
        if (k0) {
          REQUIRE(k1);
          CHECK(*k1 <= *k0);
        }
      }
      for (const auto& cfg : cfgs) {
        if (auto k = complexity(x, aux, cfg)) CHECK(pow2(-static_cast<long>(*k)) <= alg_prob(x, aux, cfg));
      }
    }
  }
}

TEST_CASE("concurrent queries match serial answers") {
  OracleConfig cfg(load_fixture("bitreg.json"), 16);
  auto xs = strings_up_to(4);
  std::vector<double> serial;
  {
    OracleConfig fresh(load_fixture("bitreg.json"), 16);
    for (const auto& x : xs) serial.push_back(bounded_info(x, bits("01"), fresh).value);
  }
  std::vector<std::vector<double>> par(4, std::vector<double>(xs.size()));
  std::vector<std::thread> pool;
  for (int t = 0; t < 4; ++t) {
    pool.emplace_back([&, t] {
      for (std::size_t k = 0; k < xs.size(); ++k) {
        std::size_t j = (k + t * 7) % xs.size();
        par[t][j] = bounded_info(xs[j], bits("01"), cfg).value;
      }
    });
  }
  for (auto& th : pool) th.join();
  for (const auto& row : par)
    for (std::size_t k = 0; k < xs.size(); ++k) CHECK(row[k] == serial[k]);
}
