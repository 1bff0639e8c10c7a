#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qsec {

// Fixed-width bit string. Index 0 is the most significant bit.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t width, bool value = false);

  static BitString zeros(std::size_t width) { return BitString(width, false); }
  static BitString ones(std::size_t width) { return BitString(width, true); }
  // Low `width` bits of v, MSB first.
  static BitString from_uint(std::uint64_t v, std::size_t width);
  // Accepts "0110" style strings.
  static BitString from_binary(std::string_view s);
  // Hex digits encode the integer value; width picks how many low bits are kept.
  static BitString from_hex(std::string_view hex, std::size_t width);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  bool at(std::size_t i) const;
  void set(std::size_t i, bool v);

  std::uint64_t to_uint() const;
  std::string to_hex() const;
  std::string to_binary() const;

  BitString operator^(const BitString& o) const;
  BitString& operator^=(const BitString& o);
  BitString concat(const BitString& o) const;
  BitString slice(std::size_t pos, std::size_t len) const;
  std::size_t popcount() const;
  bool all_zero() const;

  bool operator==(const BitString&) const = default;
  std::strong_ordering operator<=>(const BitString&) const = default;

 private:
  std::vector<std::uint8_t> bits_;
};

struct BitStringHash {
  std::size_t operator()(const BitString& b) const;
};

// Inner product mod 2; widths must match.
bool inner_product_mod2(const BitString& a, const BitString& b);

}  // namespace qsec
