#include "qsec/core/rng.hpp"

#include <stdexcept>

namespace qsec {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a) ^ (b * 0xd6e8feb86659fd93ULL + 0x632be59bd9b4e019ULL));
}

Rng::Rng(std::uint64_t seed) : seed_(seed), eng_(splitmix64(seed)) {}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw std::invalid_argument("Rng::below: empty range");
  if ((n & (n - 1)) == 0) return eng_() & (n - 1);
  std::uint64_t limit = ~0ULL - (~0ULL % n);
  for (;;) {
    std::uint64_t v = eng_();
    if (v < limit) return v % n;
  }
}

double Rng::uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

BitString Rng::bits(std::size_t n) {
  BitString b(n);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 64 == 0) word = eng_();
    b.set(i, (word >> (i % 64)) & 1U);
  }
  return b;
}

}  // namespace qsec
