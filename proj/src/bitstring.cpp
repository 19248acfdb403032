#include "probinfo/bitstring.hpp"

#include <algorithm>
#include <bit>

#include "probinfo/errors.hpp"

namespace probinfo {

BitString::BitString(std::string_view bits) : bits_(bits) {
  for (char c : bits_) {
    if (c != '0' && c != '1') {
      throw FormatError("bitstring contains non-binary character: \"" + bits_ + "\"");
    }
  }
}

BitString BitString::repeat(char bit, std::size_t count) {
  return from_trusted(std::string(count, bit));
}

bool length_lex_less(const BitString& a, const BitString& b) noexcept {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.str() < b.str();
}

BitString length_lex_string(std::uint64_t k) {
  // k+1 in binary with the leading 1 dropped.
  const std::uint64_t v = k + 1;
  const int width = std::bit_width(v);
  std::string out;
  out.reserve(width - 1);
  for (int i = width - 2; i >= 0; --i) out.push_back(((v >> i) & 1U) ? '1' : '0');
  return BitString::from_trusted(std::move(out));
}

std::uint64_t length_lex_index(const BitString& s) {
  if (s.size() >= 63) throw InputError("string too long for a length-lex index");
  std::uint64_t v = 1;
  for (std::size_t i = 0; i < s.size(); ++i) v = (v << 1) | (s.bit(i) ? 1U : 0U);
  return v - 1;
}

BitString binary_numeral(std::uint64_t n) {
  if (n == 0) return BitString::from_trusted("0");
  std::string out;
  for (int i = std::bit_width(n) - 1; i >= 0; --i) out.push_back(((n >> i) & 1U) ? '1' : '0');
  return BitString::from_trusted(std::move(out));
}

std::uint64_t parse_binary_numeral(const BitString& s) {
  if (s.empty() || s.size() > 64) throw FormatError("invalid binary numeral \"" + s.str() + "\"");
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < s.size(); ++i) v = (v << 1) | (s.bit(i) ? 1U : 0U);
  return v;
}

BitString encode_self_delimiting(const BitString& x) {
  std::string out(x.size(), '1');
  out.push_back('0');
  out += x.str();
  return BitString::from_trusted(std::move(out));
}

std::optional<BitString> read_self_delimiting(const BitString& code, std::size_t& pos) {
  std::size_t p = pos;
  std::size_t n = 0;
  while (p < code.size() && code[p] == '1') {
    ++n;
    ++p;
  }
  if (p >= code.size()) return std::nullopt;  // no terminating 0
  ++p;
  if (code.size() - p < n) return std::nullopt;
  BitString body = BitString::from_trusted(code.str().substr(p, n));
  pos = p + n;
  return body;
}

BitString decode_self_delimiting(const BitString& code) {
  std::size_t pos = 0;
  auto body = read_self_delimiting(code, pos);
  if (!body || pos != code.size()) {
    throw FormatError("not a self-delimiting code: \"" + code.str() + "\"");
  }
  return *body;
}

BitString pair_encode(const BitString& x, const BitString& y) {
  return encode_self_delimiting(x) + encode_self_delimiting(y);
}

std::optional<std::pair<BitString, BitString>> try_pair_decode(const BitString& code) {
  std::size_t pos = 0;
  auto x = read_self_delimiting(code, pos);
  if (!x) return std::nullopt;
  auto y = read_self_delimiting(code, pos);
  if (!y || pos != code.size()) return std::nullopt;
  return std::pair{std::move(*x), std::move(*y)};
}

std::pair<BitString, BitString> pair_decode(const BitString& code) {
  auto r = try_pair_decode(code);
  if (!r) throw FormatError("not a pair encoding: \"" + code.str() + "\"");
  return *std::move(r);
}

BitString index_code(std::uint64_t i) { return encode_self_delimiting(binary_numeral(i)); }

std::vector<BitString> strings_of_length(std::size_t n) {
  if (n >= 31) throw InputError("refusing to list 2^n strings for n >= 31");
  std::vector<BitString> out;
  out.reserve(std::size_t{1} << n);
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v) {
    std::string s(n, '0');
    for (std::size_t i = 0; i < n; ++i) {
      if ((v >> (n - 1 - i)) & 1U) s[i] = '1';
    }
    out.push_back(BitString::from_trusted(std::move(s)));
  }
  return out;
}

std::vector<BitString> strings_up_to(std::size_t n) {
  std::vector<BitString> out;
  for (std::size_t len = 0; len <= n; ++len) {
    auto level = strings_of_length(len);
    out.insert(out.end(), std::make_move_iterator(level.begin()), std::make_move_iterator(level.end()));
  }
  return out;
}

}  // namespace probinfo
