#include <doctest.h>

#include <cmath>
#include <random>

#include "fixtures.hpp"
#include "probinfo/errors.hpp"
#include "probinfo/space.hpp"

using namespace probinfo;
using probinfo::testing::bits;
using probinfo::testing::load_fixture;

namespace {

const OracleConfig& cfg() {
  static const OracleConfig c(load_fixture("bitreg.json"), 16);
  return c;
}

Rational q(long a, long b) { return ratio(a, b); }

RegionSet random_region(std::mt19937_64& rng) {
  std::vector<Interval> parts;
  for (std::size_t k = 0; k < 1 + rng() % 3; ++k) {
    long a = static_cast<long>(rng() % 17) - 8, b = a + static_cast<long>(rng() % 6);
    Interval i{q(a, 4), q(b, 4), static_cast<bool>(rng() & 1U), static_cast<bool>(rng() & 1U)};
    if (rng() % 7 == 0) i.lo.reset();
    if (rng() % 7 == 0) i.hi.reset();
    parts.push_back(i);
  }
  return RegionSet(parts);
}

std::vector<Rational> probe_points() {
  std::vector<Rational> pts;
  for (long k = -40; k <= 40; ++k) pts.push_back(q(k, 8));
  for (long k = -40; k <= 40; ++k) pts.push_back(q(k, 8) + q(1, 19));
  return pts;
}

}  // namespace

TEST_CASE("basis encoding on the unit window") {
  RealLineSpace r;
  auto b = r.basis_space();
  CHECK(pi_encode(q(1, 4), 3, b).str() == "110");
  CHECK(pi_encode(q(3, 4), 3, b).str() == "101");
  CHECK(pi_encode(q(1, 4), 3, b) != pi_encode(q(3, 4), 3, b));
  CHECK(separating_index(q(1, 4), q(3, 4), 8, b) == 2u);
  CHECK(pi_encode(q(3, 2), 5, b).str() == "00000");
  CHECK_THROWS_AS(pi_encode(q(1, 2), 3, b), BoundaryError);
  CHECK_THROWS_AS(pi_encode(q(1, 4), 4, b), BoundaryError);
  CHECK(b.subset_hint(5, 2) == true);
  CHECK(b.subset_hint(6, 2) == false);
}

TEST_CASE("distinct rationals are separated") {
  RealLineSpace r;
  auto b = r.basis_space();
  std::vector<Rational> pts = {q(1, 3), q(2, 5), q(5, 7), q(7, 9), q(1, 10), q(9, 10)};
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) CHECK(separating_index(pts[i], pts[j], 64, b).has_value());
}

TEST_CASE("sigma regions") {
  RealLineSpace r;
  CHECK(r.sigma(bits("1")).str() == "(0, 1)");
  CHECK(r.sigma(bits("10")).str() == "[1/2, 1)");
  CHECK(r.sigma(bits("01")).empty());
  CHECK(r.sigma(bits("0")).str() == "(-inf, 0] U [1, inf)");
  CHECK(r.sigma(bits("")) == RegionSet::line());
}

TEST_CASE("sigma regions agree with pointwise membership") {
  for (const auto& space : {RealLineSpace(), RealLineSpace(-4, 4)}) {
    auto b = space.basis_space();
    for (const auto& x : strings_up_to(6)) {
      auto region = space.sigma(x);
      for (const auto& t : probe_points()) {
        BitString code;
        try {
          code = pi_encode(t, x.size(), b);
        } catch (const BoundaryError&) {
          continue;
        }
        CHECK(region.contains(t) == (code == x));
      }
    }
  }
}

TEST_CASE("region algebra laws") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 200; ++t) {
    auto a = random_region(rng), b = random_region(rng);
    CHECK(a.complement().complement() == a);
    CHECK(a.unite(b).complement() == a.complement().intersect(b.complement()));
    CHECK(a.intersect(a.complement()).empty());
    CHECK(a.unite(a.complement()) == RegionSet::line());
    for (const auto& p : probe_points()) {
      CHECK(a.intersect(b).contains(p) == (a.contains(p) && b.contains(p)));
      CHECK(a.unite(b).contains(p) == (a.contains(p) || b.contains(p)));
    }
  }
  RegionSet touching({Interval::open(0, q(1, 2)), Interval{q(1, 2), Rational(1), true, false}});
  CHECK(touching.str() == "(0, 1)");
  RegionSet gap({Interval::open(0, q(1, 2)), Interval::open(q(1, 2), 1)});
  CHECK(gap.intervals().size() == 2);
}

TEST_CASE("dual of the uniform measure") {
  RealLineSpace r;
  auto f = dual_measure(SpaceMeasure::uniform(0, 1), r);
  CHECK(f(bits("1")) == 1.0);
  CHECK(f(bits("10")) == 0.5);
  CHECK(f(bits("11")) == 0.5);
  CHECK(f(bits("0")) == 0.0);
  CHECK(f(bits("1101")) == 0.25);
}

TEST_CASE("gaussian dual against numerical integration") {
  RealLineSpace r;
  auto g = SpaceMeasure::gaussian(q(1, 2), q(1, 16));
  auto f = dual_measure(g, r);
  // Simpson on the density over [1/2, 1].
  const int n = 2000;
  const double h = 0.5 / n;
  double s = 0.0;
  for (int k = 0; k <= n; ++k) {
    double c = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    s += c * g.density(0.5 + h * k);
  }
  s *= h / 3.0;
  CHECK(std::fabs(f(bits("10")) - s) < 1e-9);
  CHECK(std::fabs(f(bits("10")) - (0.5 - 0.5 * std::erfc(2.0 / std::sqrt(2.0)))) < 1e-12);
}

TEST_CASE("dual additivity on catalogued measures") {
  RealLineSpace r;
  std::vector<SpaceMeasure> ms = {
      SpaceMeasure::uniform(0, 1), SpaceMeasure::uniform(q(1, 3), q(5, 7)),
      SpaceMeasure::gaussian(q(1, 2), q(1, 16)), SpaceMeasure::gaussian(3, 1),
      SpaceMeasure::pulse(bits("0110"), 16), SpaceMeasure::point(q(1, 3)),
      SpaceMeasure::mixture({q(1, 2), q(1, 4)}, {SpaceMeasure::uniform(0, 1), SpaceMeasure::point(q(2, 3))}),
  };
  for (const auto& m : ms) {
    auto d = dual_measure(m, r);
    CHECK_NOTHROW(check_additivity(d, 8));
    CHECK(std::fabs(d(BitString()) - m.total()) < 1e-12);
  }
}

TEST_CASE("dual of a mixture is the mixture of duals") {
  RealLineSpace r;
  auto a = SpaceMeasure::uniform(0, q(1, 2)), b = SpaceMeasure::uniform(q(1, 4), 1);
  auto m = SpaceMeasure::mixture({q(1, 3), q(2, 3)}, {a, b});
  auto dm = dual_measure(m, r);
  auto da = dual_measure(a, r), db = dual_measure(b, r);
  for (const auto& x : strings_up_to(6)) CHECK(std::fabs(dm(x) - (da(x) / 3 + 2 * db(x) / 3)) < 1e-15);
}

TEST_CASE("space information is monotone in depth") {
  RealLineSpace r;
  auto p = SpaceMeasure::gaussian(q(1, 2), q(1, 64));
  auto u = SpaceMeasure::uniform(0, 1);
  for (const auto& [a, b] : std::vector<std::pair<SpaceMeasure, SpaceMeasure>>{{p, p}, {p, u}, {u, u}}) {
    double prev = -INFINITY;
    for (std::size_t d = 1; d <= 8; ++d) {
      auto v = space_info(a, b, d, r, cfg());
      REQUIRE(v.numeric());
      CHECK(v.value >= prev - 1e-9 * std::fabs(prev));
      prev = v.value;
    }
  }
}

TEST_CASE("pulse self-information curve") {
  // Frozen from the first certified run on this machine and bounds.
  const std::vector<std::pair<unsigned, double>> frozen = {
      {1, -5.1884646777667047}, {4, -5.2372497233815771}, {16, -5.2453158718991624}, {64, -5.2467336966660634}};
  RealLineSpace r;
  auto alpha = bits("01101001");
  for (const auto& [n, expect] : frozen) {
    auto p = SpaceMeasure::pulse(alpha, n);
    auto v = space_info(p, p, 8, r, cfg());
    REQUIRE(v.numeric());
    CHECK(v.value == doctest::Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("closed-form and grid convolution") {
  auto g = convolve(SpaceMeasure::gaussian(0, 1), SpaceMeasure::gaussian(0, 1));
  CHECK(g.kind() == SpaceMeasure::Kind::gaussian);
  CHECK(g.encoding() == "gaussian(0,2)");

  ConvolutionGrid grid{1e-2, 0.0, false};
  auto gg = convolve(SpaceMeasure::gaussian(0, 1), SpaceMeasure::gaussian(0, 1), grid);
  CHECK(gg.kind() == SpaceMeasure::Kind::grid);
  CHECK(l1_distance(gg, g, -12, 12) < 1e-3);
  CHECK(std::fabs(gg.total() - 1.0) < 1e-6);

  auto tri = convolve(SpaceMeasure::uniform(0, 1), SpaceMeasure::uniform(0, 1), grid);
  double l1 = l1_distance([&](double x) { return tri.density(x); }, triangle_density, -1, 3);
  CHECK(l1 < 1e-3);
  CHECK(std::fabs(tri.total() - 1.0) < 1e-6);
  CHECK(std::fabs(tri.probability(Interval::open(0, 1)) - 0.5) < 1e-4);

  auto half = SpaceMeasure::mixture({q(1, 2)}, {SpaceMeasure::uniform(0, 1)});
  CHECK(std::fabs(convolve(half, SpaceMeasure::gaussian(0, q(1, 100)), grid).total() - 0.5) < 1e-6);

  CHECK_THROWS_AS(convolve(SpaceMeasure::uniform(0, 1), SpaceMeasure::gaussian(0, 1), {1e-2, 1.0, false}), GridError);
  CHECK_THROWS_AS(convolve(SpaceMeasure::point(0), SpaceMeasure::gaussian(0, 1), grid), DomainError);
}

TEST_CASE("space catalog json") {
  const char* text = R"({"basis":"dyadic","window":["-4","4"],"measures":[
    {"name":"g","kind":"gaussian","parameters":{"mean":"1/2","variance":"1/16"}},
    {"name":"u","kind":"uniform","parameters":{"a":"0","b":"1"}},
    {"name":"p","kind":"pulse","parameters":{"alpha":"011","n":8}},
    {"name":"m","kind":"mixture","parameters":{"weights":["1/2","1/2"],"components":[
      {"kind":"point","parameters":{"x":"1/3"}},{"kind":"uniform","parameters":{"a":"0","b":"2"}}]}}]})";
  auto c = space_catalog_from_json(text);
  CHECK(c.space.lo() == -4);
  CHECK(c.at("g").encoding() == "gaussian(1/2,1/16)");
  CHECK(c.at("m").encoding() == "mix(1/2*point(1/3),1/2*uniform(0,2))");
  auto again = space_catalog_from_json(to_json(c));
  CHECK(to_json(again) == to_json(c));
  CHECK_THROWS_AS(c.at("nope"), CatalogError);
  CHECK_THROWS_AS(space_catalog_from_json(R"({"measures":[{"name":"x","kind":"cauchy"}]})"), ConfigError);
}
