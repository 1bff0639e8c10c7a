#include "qsec/core/permutation.hpp"

#include <numeric>
#include <stdexcept>

#include "qsec/core/rng.hpp"

namespace qsec {

Permutation::Permutation(std::size_t domain_bits, std::vector<std::uint64_t> forward)
    : bits_(domain_bits), fwd_(std::move(forward)) {
  if (domain_bits >= 63) throw std::invalid_argument("Permutation: domain too large");
  std::size_t n = std::size_t{1} << domain_bits;
  if (fwd_.size() != n) throw std::invalid_argument("Permutation: table size mismatch");
  constexpr std::uint64_t unset = ~0ULL;
  inv_.assign(n, unset);
  for (std::size_t x = 0; x < n; ++x) {
    std::uint64_t y = fwd_[x];
    if (y >= n || inv_[y] != unset) throw std::invalid_argument("Permutation: table is not a bijection");
    inv_[y] = x;
  }
}

Permutation Permutation::identity(std::size_t domain_bits) {
  std::vector<std::uint64_t> t(std::size_t{1} << domain_bits);
  std::iota(t.begin(), t.end(), 0);
  return Permutation(domain_bits, std::move(t));
}

Permutation Permutation::inversed() const { return Permutation(bits_, inv_); }

bool Permutation::is_consistent() const {
  for (std::size_t z = 0; z < fwd_.size(); ++z) {
    if (fwd_[inv_[z]] != z || inv_[fwd_[z]] != z) return false;
  }
  return true;
}

Permutation sample_ideal_qprp(const SecretKey& key, std::size_t domain_bits, std::size_t cap) {
  if (domain_bits > cap) throw std::invalid_argument("sample_ideal_qprp: domain exceeds cap");
  std::size_t n = std::size_t{1} << domain_bits;
  std::vector<std::uint64_t> t(n);
  std::iota(t.begin(), t.end(), 0);
  Rng rng(mix_seed(key_seed(key), 0x7072705fULL));
  for (std::size_t i = n; i > 1; --i) {
    std::size_t j = rng.below(i);
    std::swap(t[i - 1], t[j]);
  }
  return Permutation(domain_bits, std::move(t));
}

}  // namespace qsec
