#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <unordered_map>

#include "qsec/core/bitstring.hpp"

namespace qsec {

struct SecretKey {
  BitString bits;
  bool operator==(const SecretKey&) const = default;
};

// Folds the key bits into a 64-bit seed for keyed samplers.
std::uint64_t key_seed(const SecretKey& key);

// Round function: (round index, right half) -> value whose low half-width bits are used.
using FeistelRound = std::function<std::uint64_t(std::size_t round, std::uint64_t half)>;

FeistelRound seeded_round_function(std::uint64_t seed);
FeistelRound zero_round_function();

// Balanced Feistel network on an even width <= 64.
class Feistel {
 public:
  Feistel(std::size_t width, FeistelRound round, std::size_t rounds = 4);
  std::uint64_t forward(std::uint64_t x) const;
  std::uint64_t inverse(std::uint64_t y) const;
  std::size_t width() const { return width_; }

 private:
  std::size_t width_;
  std::size_t half_;
  std::uint64_t mask_;
  FeistelRound round_;
  std::size_t rounds_;
};

BitString feistel_prp(const SecretKey& key, const BitString& x);
BitString feistel_prp_inv(const SecretKey& key, const BitString& y);

enum class PrfBackend { Ideal, Concrete };

// Keyed function {0,1}^in -> {0,1}^out. The Ideal backend is a lazily tabulated
// random function; the Concrete backend is a 4-round Feistel (requires in == out, even).
class Prf {
 public:
  Prf() = default;
  Prf(SecretKey key, std::size_t in_bits, std::size_t out_bits, PrfBackend backend = PrfBackend::Ideal);

  BitString eval(const BitString& x) const;
  std::uint64_t eval_uint(std::uint64_t x) const;

  std::size_t in_bits() const { return in_bits_; }
  std::size_t out_bits() const { return out_bits_; }
  PrfBackend backend() const { return backend_; }
  const SecretKey& key() const { return key_; }
  std::size_t table_size() const;

 private:
  SecretKey key_;
  std::size_t in_bits_ = 0;
  std::size_t out_bits_ = 0;
  PrfBackend backend_ = PrfBackend::Ideal;
  std::uint64_t seed_ = 0;
  std::shared_ptr<const Feistel> feistel_;
  mutable std::unordered_map<std::uint64_t, std::uint64_t> table_;
};

BitString prf_eval(const Prf& prf, const BitString& x);

}  // namespace qsec
