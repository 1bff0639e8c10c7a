#pragma once

#include <cstdint>
#include <stdexcept>

#include "qsec/core/prng.hpp"
#include "qsec/core/rng.hpp"

namespace qsec {

// Toy RSA permutation on Z_n^*, n < 2^32.
struct TrapdoorIndex {
  std::uint64_t n = 0;
  std::uint64_t e = 0;
  bool operator==(const TrapdoorIndex&) const = default;
};

struct Trapdoor {
  std::uint64_t p = 0;
  std::uint64_t q = 0;
  std::uint64_t d = 0;
  bool operator==(const Trapdoor&) const = default;
};

struct TrapdoorKeyPair {
  TrapdoorIndex index;
  Trapdoor trapdoor;
};

class InversionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Modulus of exactly `bits` bits (8 <= bits <= 32).
TrapdoorKeyPair owtp_gen(unsigned bits, Rng& rng);
// Builds a key pair from explicit primes and public exponent.
TrapdoorKeyPair owtp_from_primes(std::uint64_t p, std::uint64_t q, std::uint64_t e);

bool owtp_in_domain(const TrapdoorIndex& index, std::uint64_t x);
std::uint64_t owtp_eval(const TrapdoorIndex& index, std::uint64_t x);
// Throws InversionError when the trapdoor does not invert y.
std::uint64_t owtp_invert(const TrapdoorIndex& index, const Trapdoor& trapdoor, std::uint64_t y);
// Uniform domain element by rejection sampling.
std::uint64_t owtp_sample_domain(const TrapdoorIndex& index, Rng& rng);
std::size_t owtp_width(const TrapdoorIndex& index);

// The RSA permutation as a one-way permutation handle for the GL generator.
OneWayPermutation owtp_as_owp(const TrapdoorIndex& index, BitString z);

}  // namespace qsec
