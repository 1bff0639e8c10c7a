#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "qsec/core/bitstring.hpp"
#include "qsec/core/numtheory.hpp"
#include "qsec/core/owtp.hpp"
#include "qsec/core/permutation.hpp"
#include "qsec/core/prf.hpp"
#include "qsec/core/prng.hpp"
#include "qsec/core/rng.hpp"
#include "qsec/core/schemes.hpp"
#include "qsec/core/serialize.hpp"

using namespace qsec;

TEST_CASE("bitstring basics") {
  BitString b = BitString::from_binary("0110");
  CHECK(b.to_uint() == 6);
  CHECK(b.to_hex() == "6");
  CHECK(BitString::from_hex("6", 4) == b);
  CHECK(BitString::from_uint(0x1f, 9).to_hex() == "01f");
  CHECK((BitString::from_binary("1010") ^ BitString::from_binary("0110")) == BitString::from_binary("1100"));
  CHECK_THROWS_AS(BitString::zeros(3) ^ BitString::zeros(4), std::invalid_argument);
  CHECK(b.concat(BitString::ones(2)).to_binary() == "011011");
  CHECK(b.slice(1, 2).to_binary() == "11");
  CHECK_FALSE(inner_product_mod2(BitString::from_binary("1101"), BitString::from_binary("1011")));
  CHECK(inner_product_mod2(BitString::from_binary("1101"), BitString::from_binary("0100")));
}

TEST_CASE("rng determinism and splitting") {
  Rng a(42), b(42);
  for (int i = 0; i < 10; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng p(9);
  Rng s1 = p.split(3);
  p.next_u64();
  Rng s2 = p.split(3);
  CHECK(s1.next_u64() == s2.next_u64());
  Rng r(1);
  for (int i = 0; i < 1000; ++i) CHECK(r.below(7) < 7);
}

TEST_CASE("number theory") {
  CHECK(nt::powmod(5, 3, 23) == 10);
  CHECK(nt::invmod(3, 11) == 4);
  CHECK(nt::is_prime(1048573));
  CHECK_FALSE(nt::is_prime(1048575));
  CHECK(nt::prev_prime(1u << 20) == 1048573);
  CHECK(nt::is_primitive_root(5, 23));
  CHECK_FALSE(nt::is_primitive_root(2, 23));
  CHECK(nt::smallest_primitive_root(23) == 5);
}

TEST_CASE("blum-micali steps") {
  auto [b1, s1] = blum_micali_next(make_blum_micali(23, 5, 3));
  CHECK(std::get<BlumMicaliState>(s1.kind).s == 10);
  CHECK(b1 == (10 < 11));
  auto [b2, s2] = blum_micali_next(make_blum_micali(23, 5, 10));
  CHECK(std::get<BlumMicaliState>(s2.kind).s == 9);
  CHECK(b2);
  CHECK_THROWS(make_blum_micali(23, 1, 1));
  CHECK_THROWS(make_blum_micali(21, 5, 3));
  CHECK_THROWS(make_blum_micali(23, 5, 0));
}

TEST_CASE("blum-micali sequence matches an independent modexp loop") {
  std::uint64_t p = 1019, g = nt::smallest_primitive_root(1019), s = 77;
  auto [bits, st] = prng_next_bits(make_blum_micali(p, g, s), 40);
  std::uint64_t x = s;
  for (std::size_t i = 0; i < 40; ++i) {
    std::uint64_t y = 1;
    for (std::uint64_t k = 0; k < x; ++k) y = y * g % p;
    x = y;
    CHECK(bits[i] == (x < (p - 1) / 2));
  }
  CHECK(st.emitted == 40);
}

TEST_CASE("goldreich-levin generator") {
  BitString ones = BitString::ones(6);
  CHECK(goldreich_levin_prng(ones, identity_owp(6, BitString::from_binary("100000"))) == ones);

  std::uint64_t p = 251, g = nt::smallest_primitive_root(251);
  BitString z = BitString::from_uint(0xb5, 8);
  OneWayPermutation owp = modexp_owp(p, g, z);
  BitString seed = BitString::from_uint(17, 8);
  BitString out = goldreich_levin_prng(seed, owp);
  std::uint64_t x = 17;
  for (std::size_t j = 0; j < 8; ++j) {
    x = nt::powmod(g, x, p);
    CHECK(out[j] == (std::popcount(x & 0xb5) % 2 == 1));
  }
  int differ = 0;
  Rng rng(5);
  for (int i = 0; i < 10; ++i) {
    std::uint64_t a = rng.range(1, p - 1), b = rng.range(1, p - 1);
    if (a == b) continue;
    if (goldreich_levin_prng(BitString::from_uint(a, 8), owp) != goldreich_levin_prng(BitString::from_uint(b, 8), owp)) ++differ;
  }
  CHECK(differ >= 1);
}

TEST_CASE("prf backends") {
  SecretKey k{BitString::from_uint(0xabcd, 16)};
  Prf ideal(k, 12, 12);
  BitString x = BitString::from_uint(77, 12);
  CHECK(ideal.eval(x) == ideal.eval(x));
  CHECK_THROWS(ideal.eval(BitString::zeros(5)));

  std::size_t ones = 0;
  for (std::uint64_t i = 0; i < 4096; ++i) ones += ideal.eval_uint(i) & 1U;
  double sigma = std::sqrt(4096 * 0.25);
  CHECK(std::abs(static_cast<double>(ones) - 2048.0) <= 3 * sigma);

  Prf concrete(k, 8, 8, PrfBackend::Concrete);
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 256; ++i) seen.insert(concrete.eval_uint(i));
  CHECK(seen.size() == 256);
}

TEST_CASE("feistel network") {
  Feistel zero(8, zero_round_function());
  for (std::uint64_t x = 0; x < 256; ++x) CHECK(zero.forward(x) == x);
  Feistel f(8, seeded_round_function(99));
  std::set<std::uint64_t> img;
  for (std::uint64_t x = 0; x < 256; ++x) {
    img.insert(f.forward(x));
    CHECK(f.inverse(f.forward(x)) == x);
  }
  CHECK(img.size() == 256);
  SecretKey k{BitString::from_uint(7, 16)};
  for (std::uint64_t x = 0; x < 65536; x += 97) {
    BitString v = BitString::from_uint(x, 16);
    CHECK(feistel_prp_inv(k, feistel_prp(k, v)) == v);
  }
  CHECK_THROWS(feistel_prp(k, BitString::zeros(7)));
}

TEST_CASE("ideal permutation sampling") {
  SecretKey k{BitString::from_uint(3, 16)};
  Permutation a = sample_ideal_qprp(k, 6), b = sample_ideal_qprp(k, 6);
  CHECK(a.forward() == b.forward());
  for (std::uint64_t z = 0; z < 64; ++z) CHECK(a.apply(a.invert(z)) == z);
  CHECK(a.is_consistent());
  CHECK_THROWS(sample_ideal_qprp(k, 15));

  double total = 0;
  for (std::uint64_t key = 0; key < 100; ++key) {
    Permutation p = sample_ideal_qprp(SecretKey{BitString::from_uint(key, 16)}, 6);
    for (std::uint64_t z = 0; z < 64; ++z) total += p.apply(z) == z;
  }
  CHECK(std::abs(total / 100 - 1.0) <= 3 * std::sqrt(1.0 / 100));
}

TEST_CASE("one-time pad") {
  BitString k = BitString::from_binary("1010");
  CHECK(otp_enc(k, BitString::from_binary("0110")) == BitString::from_binary("1100"));
  CHECK(otp_enc(BitString::zeros(4), k) == k);
  CHECK(otp_enc(k, k).all_zero());
  CHECK_THROWS(otp_enc(k, BitString::zeros(3)));
}

TEST_CASE("goldreich scheme") {
  Rng rng(11);
  for (int i = 0; i < 100; ++i) {
    Prf prf(SecretKey{rng.bits(16)}, 8, 8);
    BitString x = rng.bits(8);
    Ciphertext c = skes_goldreich_enc(prf, x, rng);
    CHECK(skes_goldreich_dec(prf, c) == x);
    CHECK((c.payload ^ x) == prf.eval(*c.r));
    Ciphertext flipped = c;
    flipped.payload ^= BitString::ones(8);
    CHECK(skes_goldreich_dec(prf, flipped) == (x ^ BitString::ones(8)));
  }
}

TEST_CASE("encrypt-then-mac scheme") {
  Rng rng(12);
  for (int i = 0; i < 50; ++i) {
    auto scheme = etm_factory(8)(rng);
    CHECK(scheme->msg_bits() == 8);
    CHECK(scheme->ct_bits() == 8 + 8 + 32);
    BitString x = rng.bits(8);
    Ciphertext c = scheme->enc(x, rng);
    CHECK(scheme->dec(c) == x);
    CHECK(scheme->parse(c.flatten()) == c);
    for (std::size_t bit : {std::size_t{0}, std::size_t{7}, std::size_t{20}}) {
      Ciphertext tampered = c;
      tampered.payload.set(bit, !tampered.payload[bit]);
      CHECK_THROWS_AS(scheme->dec(tampered), DecryptionError);
    }
    Ciphertext moved = c;
    moved.r->set(0, !(*moved.r)[0]);
    CHECK_THROWS_AS(scheme->dec(moved), DecryptionError);
  }
}

TEST_CASE("permutation scheme") {
  for (std::uint64_t key = 0; key < 5; ++key) {
    Permutation p = sample_ideal_qprp(SecretKey{BitString::from_uint(key, 16)}, 6);
    for (std::uint64_t x = 0; x < 8; ++x) {
      for (std::uint64_t r = 0; r < 8; ++r) {
        Ciphertext c = skes_prp_enc(p, 3, BitString::from_uint(x, 3), BitString::from_uint(r, 3));
        CHECK(skes_prp_dec(p, 3, c).to_uint() == x);
      }
    }
  }
  Ciphertext c = skes_prp_enc(Permutation::identity(5), 3, BitString::from_binary("101"), BitString::zeros(2));
  CHECK(c.payload == BitString::from_binary("10100"));
  Rng rng(2);
  Permutation p = sample_ideal_qprp(SecretKey{BitString::from_uint(9, 16)}, 5);
  BitString msg = BitString::from_binary("110010111");
  auto blocks = skes_prp_mode_enc(p, 3, msg, rng);
  CHECK(blocks.size() == 3);
  CHECK(skes_prp_mode_dec(p, 3, blocks) == msg);
}

TEST_CASE("toy trapdoor permutation") {
  TrapdoorKeyPair kp = owtp_from_primes(3, 11, 3);
  CHECK(kp.index.n == 33);
  CHECK(kp.trapdoor.d == 7);
  CHECK(owtp_eval(kp.index, 2) == 8);
  CHECK(owtp_invert(kp.index, kp.trapdoor, 8) == 2);
  for (std::uint64_t x = 1; x < 33; ++x) {
    if (!owtp_in_domain(kp.index, x)) continue;
    CHECK(owtp_invert(kp.index, kp.trapdoor, owtp_eval(kp.index, x)) == x);
  }
  CHECK_THROWS(owtp_eval(kp.index, 3));

  Rng rng(4);
  TrapdoorKeyPair big = owtp_gen(20, rng);
  Trapdoor wrong = big.trapdoor;
  wrong.d += 2;
  int flagged = 0;
  for (int i = 0; i < 20; ++i) {
    std::uint64_t y = owtp_eval(big.index, owtp_sample_domain(big.index, rng));
    try {
      owtp_invert(big.index, wrong, y);
    } catch (const InversionError&) {
      ++flagged;
    }
  }
  CHECK(flagged >= 1);
}

TEST_CASE("public-key scheme") {
  Rng rng(8);
  for (int i = 0; i < 50; ++i) {
    PkesKeyPair kp = pkes_keygen(20, 8, rng);
    BitString x = rng.bits(8);
    std::uint64_t r = owtp_sample_domain(kp.pk.index, rng);
    Ciphertext c = pkes_owtp_enc(kp.pk, x, r);
    CHECK(pkes_owtp_dec(kp.sk, c) == x);
    CHECK((c.payload ^ x) == pkes_pad(kp.pk, r, 8));
    CHECK(c.r->to_uint() == owtp_eval(kp.pk.index, r));
  }
}

TEST_CASE("cca1 counterexample scheme") {
  Rng rng(12);
  Cca1SepKey key = cca1_sep_keygen(8, rng);
  BitString m = key.hidden ^ BitString::from_uint(1, 8);
  Ciphertext c = cca1_sep_enc(key, m, rng);
  CHECK(cca1_sep_dec(key, c) == m);
  CHECK(cca1_sep_dec(key, cca1_swap_halves(c)) == key.hidden);
  Ciphertext h = cca1_sep_enc(key, key.hidden, rng);
  REQUIRE(h.aux.size() == 1);
  CHECK(h.aux[0].payload == key.key.bits);
}

TEST_CASE("cca2 restricted decryption") {
  Rng rng(3);
  auto scheme = goldreich_factory(8)(rng);
  Ciphertext c = scheme->enc(BitString::from_uint(5, 8), rng);
  CHECK_FALSE(cca2_restricted_dec(*scheme, c, c).has_value());
  Ciphertext d = c;
  d.payload.set(0, !d.payload[0]);
  CHECK(cca2_restricted_dec(*scheme, c, d).has_value());
}

TEST_CASE("scheme interface round trips and flat parsing") {
  Rng rng(21);
  std::vector<SkesFactory> factories{otp_factory(4), goldreich_factory(4), prp_factory(2, 2)};
  for (auto& f : factories) {
    auto s = f(rng);
    for (std::uint64_t x = 0; x < (1u << s->msg_bits()); ++x) {
      BitString m = BitString::from_uint(x, s->msg_bits());
      Ciphertext c = s->enc(m, rng);
      CHECK(s->dec(c) == m);
      CHECK(c.flatten().size() == s->ct_bits());
      CHECK(s->parse(c.flatten()) == c);
    }
  }
}

TEST_CASE("type-2 permutation of a scheme") {
  Rng rng(6);
  auto s = goldreich_factory(3)(rng);
  BitString r = BitString::from_uint(5, 3);
  Permutation p = type2_permutation(*s, r);
  CHECK(p.domain_bits() == 6);
  for (std::uint64_t x = 0; x < 8; ++x) CHECK(p.apply(x << 3) == s->enc_with(BitString::from_uint(x, 3), r).flatten().to_uint());
}

TEST_CASE("json round trips") {
  BitString b = BitString::from_uint(0x2a, 7);
  CHECK(bits_from_json(bits_to_json(b)) == b);
  Rng rng(1);
  Cca1SepKey key = cca1_sep_keygen(6, rng);
  Ciphertext c = cca1_sep_enc(key, key.hidden ^ BitString::ones(6), rng);
  CHECK(ciphertext_from_json(ciphertext_to_json(c)) == c);
  TrapdoorKeyPair kp = owtp_from_primes(3, 11, 3);
  TrapdoorKeyPair back = trapdoor_from_json(trapdoor_to_json(kp));
  CHECK(back.index == kp.index);
  CHECK(back.trapdoor == kp.trapdoor);
}
