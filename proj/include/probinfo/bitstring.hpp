#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace probinfo {

/// A finite binary string stored as ASCII '0'/'1'.
///
/// Ordering is plain lexicographic (so std::map iterates in the order the
/// JSON files list keys); use length_lex_less for the (length, lex) order
/// that enumeration reports.
class BitString {
 public:
  BitString() = default;
  /// Throws FormatError unless every character is '0' or '1'.
  explicit BitString(std::string_view bits);

  static BitString repeat(char bit, std::size_t count);

  std::size_t size() const noexcept { return bits_.size(); }
  bool empty() const noexcept { return bits_.empty(); }
  char operator[](std::size_t i) const noexcept { return bits_[i]; }
  bool bit(std::size_t i) const noexcept { return bits_[i] == '1'; }

  const std::string& str() const noexcept { return bits_; }

  void push_back(char bit) { bits_.push_back(bit); }
  void append(const BitString& other) { bits_ += other.bits_; }

  BitString prefix(std::size_t n) const { return from_trusted(bits_.substr(0, n)); }
  BitString suffix_from(std::size_t pos) const { return from_trusted(bits_.substr(pos)); }

  /// True when *this is a (not necessarily proper) prefix of other.
  bool is_prefix_of(const BitString& other) const noexcept {
    return bits_.size() <= other.bits_.size() &&
           other.bits_.compare(0, bits_.size(), bits_) == 0;
  }

  friend BitString operator+(BitString a, const BitString& b) {
    a.bits_ += b.bits_;
    return a;
  }
  friend bool operator==(const BitString&, const BitString&) = default;
  friend std::strong_ordering operator<=>(const BitString& a, const BitString& b) {
    return a.bits_ <=> b.bits_;
  }

  // Skips validation; used on hot paths where the content is known good.
  static BitString from_trusted(std::string bits) {
    BitString b;
    b.bits_ = std::move(bits);
    return b;
  }

 private:
  std::string bits_;
};

/// (length, lexicographic) order: "", 0, 1, 00, 01, ...
bool length_lex_less(const BitString& a, const BitString& b) noexcept;

/// The k-th string (0-based) in length-lexicographic order.
BitString length_lex_string(std::uint64_t k);
/// Inverse of length_lex_string.
std::uint64_t length_lex_index(const BitString& s);

/// Binary numeral of n without leading zeros; "0" for zero.
BitString binary_numeral(std::uint64_t n);
std::uint64_t parse_binary_numeral(const BitString& s);

/// <x> = 1^|x| 0 x
BitString encode_self_delimiting(const BitString& x);
/// Inverse of encode_self_delimiting; the whole input must be consumed.
BitString decode_self_delimiting(const BitString& code);
/// Reads one self-delimiting block starting at pos; nullopt if truncated.
/// On success pos is advanced past the block.
std::optional<BitString> read_self_delimiting(const BitString& code, std::size_t& pos);

/// <x><y>
BitString pair_encode(const BitString& x, const BitString& y);
std::pair<BitString, BitString> pair_decode(const BitString& code);
/// Non-throwing variant used when scanning machine outputs for pairs.
std::optional<std::pair<BitString, BitString>> try_pair_decode(const BitString& code);

/// <binary(i)>: the string naming natural number i in index families.
BitString index_code(std::uint64_t i);

/// All 2^n strings of length n in lexicographic order.
std::vector<BitString> strings_of_length(std::size_t n);
/// All strings with length <= n in length-lex order.
std::vector<BitString> strings_up_to(std::size_t n);

}  // namespace probinfo

template <>
struct std::hash<probinfo::BitString> {
  std::size_t operator()(const probinfo::BitString& b) const noexcept {
    return std::hash<std::string>{}(b.str());
  }
};
