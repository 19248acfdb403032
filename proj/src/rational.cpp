#include "probinfo/rational.hpp"

#include <cmath>
#include <limits>

#include "probinfo/errors.hpp"

namespace probinfo {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw FormatError("empty rational");
  try {
    if (auto dot = s.find('.'); dot != std::string::npos) {
      if (s.find('/') != std::string::npos) throw FormatError("mixed decimal/fraction: " + s);
      bool negative = s[0] == '-';
      std::string digits = s.substr(negative ? 1 : 0);
      dot = digits.find('.');
      std::string whole = digits.substr(0, dot);
      std::string frac = digits.substr(dot + 1);
      if (whole.empty()) whole = "0";
      if (frac.find_first_not_of("0123456789") != std::string::npos ||
          whole.find_first_not_of("0123456789") != std::string::npos) {
        throw FormatError("bad decimal: " + s);
      }
      mpz_class num(whole + frac, 10);
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
      Rational q(num, den);
      q.canonicalize();
      return negative ? Rational(-q) : q;
    }
    if (s.find_first_not_of("-0123456789/") != std::string::npos) {
      throw FormatError("cannot parse rational \"" + s + "\"");
    }
    Rational q(s, 10);
    if (q.get_den() == 0) throw FormatError("zero denominator: " + s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw FormatError("cannot parse rational \"" + s + "\"");
  }
}

std::string to_string(const Rational& value) {
  Rational q = value;
  q.canonicalize();
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite value has no rational form");
  Rational q;
  mpq_set_d(q.get_mpq_t(), x);  // exact
  return q;
}

namespace {

double log2_mpz(const mpz_class& z) {
  long exp = 0;
  double mant = mpz_get_d_2exp(&exp, z.get_mpz_t());
  return std::log2(mant) + static_cast<double>(exp);
}

}  // namespace

double log2_rational(const Rational& q) {
  if (sgn(q) < 0) throw DomainError("log2 of a negative rational");
  if (sgn(q) == 0) return -std::numeric_limits<double>::infinity();
  return log2_mpz(q.get_num()) - log2_mpz(q.get_den());
}

Rational ratio(long num, long den) {
  if (den == 0) throw DomainError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational pow2(long e) {
  mpz_class p = 1;
  if (e >= 0) {
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    return Rational(p);
  }
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  return Rational(mpz_class(1), p);
}

}  // namespace probinfo
