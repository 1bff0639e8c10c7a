#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <variant>

#include "qsec/core/bitstring.hpp"

namespace qsec {

struct BlumMicaliState {
  std::uint64_t p = 0;
  std::uint64_t g = 0;
  std::uint64_t s = 0;
};

// Counter-mode generator over an ideal keyed mixing function. Stands in for a
// secure PRNG.
struct CounterPrfState {
  std::uint64_t key = 0;
  std::uint64_t counter = 0;
};

struct PrngState {
  std::variant<BlumMicaliState, CounterPrfState> kind;
  std::uint64_t emitted = 0;
};

// Throws std::invalid_argument unless p is prime (< 2^32), g generates Z_p^*, and 1 <= s < p.
void validate_blum_micali(std::uint64_t p, std::uint64_t g, std::uint64_t s);
PrngState make_blum_micali(std::uint64_t p, std::uint64_t g, std::uint64_t s);
PrngState make_counter_prng(std::uint64_t key);

// Half-interval predicate on the new state.
inline bool blum_micali_predicate(std::uint64_t s, std::uint64_t p) { return s < (p - 1) / 2; }

// s' = g^s mod p, bit = predicate(s').
std::pair<bool, PrngState> blum_micali_next(const PrngState& state);
std::pair<bool, PrngState> prng_next_bit(const PrngState& state);
std::pair<BitString, PrngState> prng_next_bits(const PrngState& state, std::size_t n);

// One-way permutation handle on width-bit strings, with the public string z
// defining the hardcore predicate <x, z> mod 2.
struct OneWayPermutation {
  std::size_t width = 0;
  std::function<BitString(const BitString&)> eval;
  BitString z;
};

OneWayPermutation identity_owp(std::size_t width, BitString z);
// x -> g^x mod p on the integers 1..p-1, encoded in bit_length(p) bits.
OneWayPermutation modexp_owp(std::uint64_t p, std::uint64_t g, BitString z);

// Output bit j (1-based) is <owp^j(seed), z> mod 2. out_bits = 0 means the seed width.
BitString goldreich_levin_prng(const BitString& seed, const OneWayPermutation& owp,
                               std::size_t out_bits = 0);

}  // namespace qsec
