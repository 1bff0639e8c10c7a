#pragma once

#include <cstdint>
#include <vector>

namespace qsec::nt {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
std::uint64_t gcd(std::uint64_t a, std::uint64_t b);
// Inverse of a mod m; throws std::domain_error when gcd(a, m) != 1.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);
// Deterministic Miller-Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n);
// Distinct prime factors by trial division.
std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n);
// True iff g has multiplicative order p-1 modulo the prime p.
bool is_primitive_root(std::uint64_t g, std::uint64_t p);
std::uint64_t smallest_primitive_root(std::uint64_t p);
// Largest prime <= bound.
std::uint64_t prev_prime(std::uint64_t bound);
unsigned bit_length(std::uint64_t v);

}  // namespace qsec::nt
