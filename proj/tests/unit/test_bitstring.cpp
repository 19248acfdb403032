#include <doctest.h>

#include <random>

#include "probinfo/bitstring.hpp"
#include "probinfo/errors.hpp"
#include "probinfo/logsum.hpp"
#include "probinfo/rational.hpp"

using namespace probinfo;

TEST_CASE("self-delimiting encoding") {
  CHECK(encode_self_delimiting(BitString("01")).str() == "11001");
  CHECK(encode_self_delimiting(BitString("")).str() == "0");
  CHECK(decode_self_delimiting(BitString("11001")).str() == "01");
  CHECK_THROWS_AS(decode_self_delimiting(BitString("110")), FormatError);
  CHECK_THROWS_AS(decode_self_delimiting(BitString("1100111")), FormatError);
  CHECK_THROWS_AS(decode_self_delimiting(BitString("111")), FormatError);
  CHECK_THROWS_AS(BitString("012"), FormatError);
}

TEST_CASE("pair encoding round-trips on random pairs") {
  std::mt19937_64 rng(20261015);
  for (int trial = 0; trial < 1000; ++trial) {
    auto random_bits = [&] {
      std::string s(rng() % 12, '0');
      for (char& c : s) c = (rng() & 1U) ? '1' : '0';
      return BitString(s);
    };
    BitString x = random_bits();
    BitString y = random_bits();
    auto [dx, dy] = pair_decode(pair_encode(x, y));
    REQUIRE(dx == x);
    REQUIRE(dy == y);
  }
  CHECK_FALSE(try_pair_decode(BitString("0")).has_value());
  CHECK_FALSE(try_pair_decode(BitString("000")).has_value());
  CHECK(try_pair_decode(BitString("00")).has_value());
}

TEST_CASE("length-lex order") {
  CHECK(length_lex_string(0).str() == "");
  CHECK(length_lex_string(1).str() == "0");
  CHECK(length_lex_string(2).str() == "1");
  CHECK(length_lex_string(3).str() == "00");
  for (std::uint64_t k = 0; k < 500; ++k) CHECK(length_lex_index(length_lex_string(k)) == k);
  auto all = strings_up_to(3);
  REQUIRE(all.size() == 15);
  for (std::size_t i = 0; i + 1 < all.size(); ++i) CHECK(length_lex_less(all[i], all[i + 1]));
}

TEST_CASE("index codes and numerals") {
  CHECK(binary_numeral(0).str() == "0");
  CHECK(binary_numeral(6).str() == "110");
  CHECK(parse_binary_numeral(BitString("110")) == 6);
  CHECK(index_code(1).str() == "101");
}

TEST_CASE("rationals") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("0.125") == Rational(1, 8));
  CHECK(parse_rational("-2") == Rational(-2));
  CHECK(to_string(Rational(2, 4)) == "1/2");
  CHECK(to_string(Rational(3)) == "3");
  CHECK_THROWS_AS(parse_rational("x/2"), FormatError);
  CHECK(rational_from_double(0.1).get_d() == 0.1);
  CHECK(log2_rational(Rational(1, 1024)) == doctest::Approx(-10.0).epsilon(1e-15));
  CHECK(log2_rational(pow2(-3000)) == doctest::Approx(-3000.0).epsilon(1e-15));
  CHECK(std::isinf(log2_rational(Rational(0))));
}

TEST_CASE("log2 accumulator matches direct summation and survives extremes") {
  Log2SumAccumulator acc;
  double direct = 0;
  for (int i = 0; i < 50; ++i) {
    acc.add_log2(-i * 0.7);
    direct += std::exp2(-i * 0.7);
  }
  CHECK(acc.log2_sum() == doctest::Approx(std::log2(direct)).epsilon(1e-12));
  Log2SumAccumulator huge;
  huge.add_log2(-5000);
  huge.add_log2(-5000);
  CHECK(huge.log2_sum() == doctest::Approx(-4999.0).epsilon(1e-14));
  Log2SumAccumulator a, b;
  a.add_log2(3);
  b.add_log2(3);
  a.merge(b);
  CHECK(a.log2_sum() == doctest::Approx(4.0));
  CHECK(std::isinf(Log2SumAccumulator{}.log2_sum()));
}
