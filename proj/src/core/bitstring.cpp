#include "qsec/core/bitstring.hpp"

#include <stdexcept>

namespace qsec {

BitString::BitString(std::size_t width, bool value) : bits_(width, value ? 1 : 0) {}

BitString BitString::from_uint(std::uint64_t v, std::size_t width) {
  BitString b(width);
  for (std::size_t i = 0; i < width; ++i) {
    std::size_t shift = width - 1 - i;
    b.bits_[i] = shift < 64 ? static_cast<std::uint8_t>((v >> shift) & 1U) : 0;
  }
  return b;
}

BitString BitString::from_binary(std::string_view s) {
  BitString b(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') {
      b.bits_[i] = 1;
    } else if (s[i] != '0') {
      throw std::invalid_argument("from_binary: non-binary character");
    }
  }
  return b;
}

BitString BitString::from_hex(std::string_view hex, std::size_t width) {
  std::vector<std::uint8_t> raw;
  raw.reserve(hex.size() * 4);
  for (char c : hex) {
    int v;
    if (c >= '0' && c <= '9') {
      v = c - '0';
    } else if (c >= 'a' && c <= 'f') {
      v = c - 'a' + 10;
    } else if (c >= 'A' && c <= 'F') {
      v = c - 'A' + 10;
    } else {
      throw std::invalid_argument("from_hex: bad digit");
    }
    for (int k = 3; k >= 0; --k) raw.push_back(static_cast<std::uint8_t>((v >> k) & 1));
  }
  BitString b(width);
  // right-align raw bits into width
  for (std::size_t i = 0; i < raw.size(); ++i) {
    std::size_t from_right = raw.size() - 1 - i;
    if (from_right >= width) {
      if (raw[i]) throw std::invalid_argument("from_hex: value exceeds width");
      continue;
    }
    b.bits_[width - 1 - from_right] = raw[i];
  }
  return b;
}

bool BitString::at(std::size_t i) const {
  if (i >= bits_.size()) throw std::out_of_range("BitString::at");
  return bits_[i] != 0;
}

void BitString::set(std::size_t i, bool v) {
  if (i >= bits_.size()) throw std::out_of_range("BitString::set");
  bits_[i] = v ? 1 : 0;
}

std::uint64_t BitString::to_uint() const {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] && bits_.size() - 1 - i >= 64) throw std::overflow_error("to_uint: value exceeds 64 bits");
    v = (v << 1) | bits_[i];
  }
  return v;
}

std::string BitString::to_hex() const {
  static const char* digits = "0123456789abcdef";
  std::size_t n = bits_.size();
  std::size_t nd = (n + 3) / 4;
  std::string out(nd, '0');
  for (std::size_t d = 0; d < nd; ++d) {
    int v = 0;
    for (int k = 0; k < 4; ++k) {
      // bit position counted from the right
      std::size_t pos = (nd - 1 - d) * 4 + static_cast<std::size_t>(3 - k);
      v <<= 1;
      if (pos < n) v |= bits_[n - 1 - pos];
    }
    out[d] = digits[v];
  }
  return out;
}

std::string BitString::to_binary() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i) s[i] = bits_[i] ? '1' : '0';
  return s;
}

BitString BitString::operator^(const BitString& o) const {
  BitString r = *this;
  r ^= o;
  return r;
}

BitString& BitString::operator^=(const BitString& o) {
  if (o.size() != size()) throw std::invalid_argument("BitString xor: length mismatch");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] ^= o.bits_[i];
  return *this;
}

BitString BitString::concat(const BitString& o) const {
  BitString r = *this;
  r.bits_.insert(r.bits_.end(), o.bits_.begin(), o.bits_.end());
  return r;
}

BitString BitString::slice(std::size_t pos, std::size_t len) const {
  if (pos + len > bits_.size()) throw std::out_of_range("BitString::slice");
  BitString r;
  r.bits_.assign(bits_.begin() + static_cast<std::ptrdiff_t>(pos),
                 bits_.begin() + static_cast<std::ptrdiff_t>(pos + len));
  return r;
}

std::size_t BitString::popcount() const {
  std::size_t c = 0;
  for (auto b : bits_) c += b;
  return c;
}

bool BitString::all_zero() const { return popcount() == 0; }

std::size_t BitStringHash::operator()(const BitString& b) const {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::size_t i = 0; i < b.size(); ++i) {
    h ^= static_cast<std::uint64_t>(b[i]) + 0x9e;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h ^ b.size());
}

bool inner_product_mod2(const BitString& a, const BitString& b) {
  if (a.size() != b.size()) throw std::invalid_argument("inner_product_mod2: length mismatch");
  bool acc = false;
  for (std::size_t i = 0; i < a.size(); ++i) acc ^= (a[i] && b[i]);
  return acc;
}

}  // namespace qsec
