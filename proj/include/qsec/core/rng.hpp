#pragma once

#include <cstdint>
#include <random>

#include "qsec/core/bitstring.hpp"

namespace qsec {

std::uint64_t splitmix64(std::uint64_t x);
// Mixes two words into one; used to derive per-stream and per-trial seeds.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

// Seedable generator. `split` derives an independent child stream from the
// construction seed only, so children do not depend on how much the parent consumed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0);

  std::uint64_t seed() const { return seed_; }
  Rng split(std::uint64_t stream) const { return Rng(mix_seed(seed_, stream)); }

  std::uint64_t next_u64() { return eng_(); }
  // Uniform in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n);
  // Uniform in [lo, hi].
  std::uint64_t range(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  bool bit() { return (eng_() >> 63) != 0; }
  double uniform01();
  BitString bits(std::size_t n);

 private:
  std::uint64_t seed_;
  std::mt19937_64 eng_;
};

}  // namespace qsec
