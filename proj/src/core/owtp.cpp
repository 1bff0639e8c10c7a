#include "qsec/core/owtp.hpp"

#include "qsec/core/numtheory.hpp"

namespace qsec {

TrapdoorKeyPair owtp_from_primes(std::uint64_t p, std::uint64_t q, std::uint64_t e) {
  if (!nt::is_prime(p) || !nt::is_prime(q) || p == q) throw std::invalid_argument("owtp: need two distinct primes");
  std::uint64_t n = p * q;
  if (n >= (1ULL << 32)) throw std::invalid_argument("owtp: modulus exceeds 2^32");
  std::uint64_t phi = (p - 1) * (q - 1);
  if (nt::gcd(e, phi) != 1) throw std::invalid_argument("owtp: e not coprime to phi(n)");
  return TrapdoorKeyPair{TrapdoorIndex{n, e}, Trapdoor{p, q, nt::invmod(e, phi)}};
}

TrapdoorKeyPair owtp_gen(unsigned bits, Rng& rng) {
  if (bits < 8 || bits > 32) throw std::invalid_argument("owtp_gen: bits must be in [8, 32]");
  unsigned pb = bits / 2;
  unsigned qb = bits - pb;
  for (;;) {
    auto rand_prime = [&](unsigned b) {
      for (;;) {
        std::uint64_t c = rng.range(1ULL << (b - 1), (1ULL << b) - 1) | 1ULL;
        if (nt::is_prime(c)) return c;
      }
    };
    std::uint64_t p = rand_prime(pb);
    std::uint64_t q = rand_prime(qb);
    if (p == q) continue;
    std::uint64_t n = p * q;
    if (nt::bit_length(n) != bits) continue;
    std::uint64_t phi = (p - 1) * (q - 1);
    for (std::uint64_t e : {65537ULL, 17ULL, 5ULL, 3ULL, 7ULL, 11ULL, 13ULL}) {
      if (e < phi && nt::gcd(e, phi) == 1) return owtp_from_primes(p, q, e);
    }
  }
}

bool owtp_in_domain(const TrapdoorIndex& index, std::uint64_t x) {
  return x >= 1 && x < index.n && nt::gcd(x, index.n) == 1;
}

std::uint64_t owtp_eval(const TrapdoorIndex& index, std::uint64_t x) {
  if (!owtp_in_domain(index, x)) throw std::invalid_argument("owtp_eval: input outside Z_n^*");
  return nt::powmod(x, index.e, index.n);
}

std::uint64_t owtp_invert(const TrapdoorIndex& index, const Trapdoor& trapdoor, std::uint64_t y) {
  if (!owtp_in_domain(index, y)) throw std::invalid_argument("owtp_invert: input outside Z_n^*");
  std::uint64_t x = nt::powmod(y, trapdoor.d, index.n);
  if (!owtp_in_domain(index, x) || nt::powmod(x, index.e, index.n) != y) {
    throw InversionError("owtp_invert: trapdoor does not invert this index");
  }
  return x;
}

std::uint64_t owtp_sample_domain(const TrapdoorIndex& index, Rng& rng) {
  for (;;) {
    std::uint64_t x = rng.range(1, index.n - 1);
    if (nt::gcd(x, index.n) == 1) return x;
  }
}

std::size_t owtp_width(const TrapdoorIndex& index) { return nt::bit_length(index.n); }

OneWayPermutation owtp_as_owp(const TrapdoorIndex& index, BitString z) {
  std::size_t w = owtp_width(index);
  if (z.size() != w) throw std::invalid_argument("owtp_as_owp: z width mismatch");
  auto eval = [index, w](const BitString& x) { return BitString::from_uint(owtp_eval(index, x.to_uint()), w); };
  return OneWayPermutation{w, eval, std::move(z)};
}

}  // namespace qsec
