#include "qsec/core/prng.hpp"

#include <stdexcept>

#include "qsec/core/numtheory.hpp"
#include "qsec/core/rng.hpp"

namespace qsec {

void validate_blum_micali(std::uint64_t p, std::uint64_t g, std::uint64_t s) {
  if (p >= (1ULL << 32) || !nt::is_prime(p)) throw std::invalid_argument("blum_micali: p must be a prime below 2^32");
  if (g <= 1 || g >= p || !nt::is_primitive_root(g, p)) {
    throw std::invalid_argument("blum_micali: g does not generate Z_p^*");
  }
  if (s < 1 || s >= p) throw std::invalid_argument("blum_micali: state outside [1, p)");
}

PrngState make_blum_micali(std::uint64_t p, std::uint64_t g, std::uint64_t s) {
  validate_blum_micali(p, g, s);
  return PrngState{BlumMicaliState{p, g, s}, 0};
}

PrngState make_counter_prng(std::uint64_t key) { return PrngState{CounterPrfState{key, 0}, 0}; }

std::pair<bool, PrngState> blum_micali_next(const PrngState& state) {
  const auto* bm = std::get_if<BlumMicaliState>(&state.kind);
  if (bm == nullptr) throw std::invalid_argument("blum_micali_next: not a Blum-Micali state");
  validate_blum_micali(bm->p, bm->g, bm->s);
  std::uint64_t next = nt::powmod(bm->g, bm->s, bm->p);
  PrngState out{BlumMicaliState{bm->p, bm->g, next}, state.emitted + 1};
  return {blum_micali_predicate(next, bm->p), out};
}

std::pair<bool, PrngState> prng_next_bit(const PrngState& state) {
  if (std::holds_alternative<BlumMicaliState>(state.kind)) return blum_micali_next(state);
  const auto& c = std::get<CounterPrfState>(state.kind);
  bool b = (mix_seed(c.key, c.counter) & 1U) != 0;
  return {b, PrngState{CounterPrfState{c.key, c.counter + 1}, state.emitted + 1}};
}

std::pair<BitString, PrngState> prng_next_bits(const PrngState& state, std::size_t n) {
  BitString out(n);
  PrngState cur = state;
  for (std::size_t i = 0; i < n; ++i) {
    auto [b, next] = prng_next_bit(cur);
    out.set(i, b);
    cur = next;
  }
  return {out, cur};
}

OneWayPermutation identity_owp(std::size_t width, BitString z) {
  if (z.size() != width) throw std::invalid_argument("identity_owp: z width mismatch");
  return OneWayPermutation{width, [](const BitString& x) { return x; }, std::move(z)};
}

OneWayPermutation modexp_owp(std::uint64_t p, std::uint64_t g, BitString z) {
  validate_blum_micali(p, g, 1);
  std::size_t w = nt::bit_length(p);
  if (z.size() != w) throw std::invalid_argument("modexp_owp: z width mismatch");
  auto eval = [p, g, w](const BitString& x) {
    std::uint64_t v = x.to_uint();
    if (v < 1 || v >= p) throw std::invalid_argument("modexp_owp: input outside domain");
    return BitString::from_uint(nt::powmod(g, v, p), w);
  };
  return OneWayPermutation{w, eval, std::move(z)};
}

BitString goldreich_levin_prng(const BitString& seed, const OneWayPermutation& owp, std::size_t out_bits) {
  if (seed.size() != owp.width) throw std::invalid_argument("goldreich_levin_prng: seed width mismatch");
  if (out_bits == 0) out_bits = owp.width;
  BitString out(out_bits);
  BitString x = seed;
  for (std::size_t j = 0; j < out_bits; ++j) {
    x = owp.eval(x);
    out.set(j, inner_product_mod2(x, owp.z));
  }
  return out;
}

}  // namespace qsec
