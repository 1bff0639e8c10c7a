#pragma once

#include <cstdint>
#include <vector>

#include "qsec/core/prf.hpp"

namespace qsec {

inline constexpr std::size_t kDefaultPermutationCap = 14;

// Tabulated bijection on {0, ..., 2^domain_bits - 1}.
class Permutation {
 public:
  Permutation() = default;
  // Throws std::invalid_argument unless `forward` is a bijection of size 2^domain_bits.
  Permutation(std::size_t domain_bits, std::vector<std::uint64_t> forward);

  static Permutation identity(std::size_t domain_bits);

  std::size_t domain_bits() const { return bits_; }
  std::size_t size() const { return fwd_.size(); }
  std::uint64_t apply(std::uint64_t x) const { return fwd_.at(x); }
  std::uint64_t invert(std::uint64_t y) const { return inv_.at(y); }
  const std::vector<std::uint64_t>& forward() const { return fwd_; }
  const std::vector<std::uint64_t>& inverse() const { return inv_; }
  Permutation inversed() const;
  // Exhaustive forward/inverse composition check.
  bool is_consistent() const;

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> fwd_;
  std::vector<std::uint64_t> inv_;
};

// Uniform Fisher-Yates permutation determined by the key.
Permutation sample_ideal_qprp(const SecretKey& key, std::size_t domain_bits,
                              std::size_t cap = kDefaultPermutationCap);

}  // namespace qsec
