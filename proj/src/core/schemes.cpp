#include "qsec/core/schemes.hpp"

#include <algorithm>
#include <stdexcept>

namespace qsec {

BitString Ciphertext::flatten() const {
  BitString out = r ? *r : BitString();
  out = out.concat(payload);
  for (const auto& a : aux) out = out.concat(a.flatten());
  return out;
}

// ---- one-time pad ----

BitString otp_enc(const BitString& key, const BitString& x) {
  if (key.size() != x.size()) throw std::invalid_argument("otp_enc: length mismatch");
  return key ^ x;
}

BitString otp_dec(const BitString& key, const BitString& y) {
  if (key.size() != y.size()) throw std::invalid_argument("otp_dec: length mismatch");
  return key ^ y;
}

// ---- Goldreich ----

Ciphertext skes_goldreich_enc(const Prf& prf, const BitString& x, const BitString& r) {
  if (x.size() != prf.out_bits()) throw std::invalid_argument("skes_goldreich_enc: message width mismatch");
  if (r.size() != prf.in_bits()) throw std::invalid_argument("skes_goldreich_enc: randomness width mismatch");
  return Ciphertext{"goldreich", x ^ prf.eval(r), r, {}};
}

Ciphertext skes_goldreich_enc(const Prf& prf, const BitString& x, Rng& rng) {
  return skes_goldreich_enc(prf, x, rng.bits(prf.in_bits()));
}

BitString skes_goldreich_dec(const Prf& prf, const Ciphertext& c) {
  if (!c.r || c.r->size() != prf.in_bits() || c.payload.size() != prf.out_bits()) {
    throw DecryptionError("skes_goldreich_dec: malformed ciphertext");
  }
  return c.payload ^ prf.eval(*c.r);
}

// ---- permutation scheme ----

Ciphertext skes_prp_enc(const Permutation& perm, std::size_t m_bits, const BitString& x, const BitString& r) {
  if (x.size() != m_bits || m_bits + r.size() != perm.domain_bits()) {
    throw std::invalid_argument("skes_prp_enc: domain mismatch");
  }
  std::uint64_t y = perm.apply(x.concat(r).to_uint());
  return Ciphertext{"prp", BitString::from_uint(y, perm.domain_bits()), std::nullopt, {}};
}

BitString skes_prp_dec(const Permutation& perm, std::size_t m_bits, const Ciphertext& c) {
  if (c.payload.size() != perm.domain_bits() || m_bits > perm.domain_bits()) {
    throw DecryptionError("skes_prp_dec: malformed ciphertext");
  }
  BitString full = BitString::from_uint(perm.invert(c.payload.to_uint()), perm.domain_bits());
  return full.slice(0, m_bits);
}

std::vector<Ciphertext> skes_prp_mode_enc(const Permutation& perm, std::size_t m_bits, const BitString& msg,
                                          const std::vector<BitString>& rs) {
  if (m_bits == 0 || msg.size() % m_bits != 0) throw std::invalid_argument("skes_prp_mode_enc: length not a multiple of m");
  std::size_t blocks = msg.size() / m_bits;
  if (rs.size() != blocks) throw std::invalid_argument("skes_prp_mode_enc: need one r per block");
  std::vector<Ciphertext> out;
  out.reserve(blocks);
  for (std::size_t i = 0; i < blocks; ++i) out.push_back(skes_prp_enc(perm, m_bits, msg.slice(i * m_bits, m_bits), rs[i]));
  return out;
}

std::vector<Ciphertext> skes_prp_mode_enc(const Permutation& perm, std::size_t m_bits, const BitString& msg, Rng& rng) {
  if (m_bits == 0 || msg.size() % m_bits != 0) throw std::invalid_argument("skes_prp_mode_enc: length not a multiple of m");
  std::vector<BitString> rs;
  for (std::size_t i = 0; i < msg.size() / m_bits; ++i) rs.push_back(rng.bits(perm.domain_bits() - m_bits));
  return skes_prp_mode_enc(perm, m_bits, msg, rs);
}

BitString skes_prp_mode_dec(const Permutation& perm, std::size_t m_bits, const std::vector<Ciphertext>& blocks) {
  BitString out;
  for (const auto& b : blocks) out = out.concat(skes_prp_dec(perm, m_bits, b));
  return out;
}

// ---- PKES from OWTP ----

PkesKeyPair pkes_keygen(unsigned modulus_bits, std::size_t msg_bits, Rng& rng) {
  TrapdoorKeyPair kp = owtp_gen(modulus_bits, rng);
  BitString z = rng.bits(owtp_width(kp.index));
  PkesPublicKey pk{kp.index, z, msg_bits};
  return PkesKeyPair{pk, PkesSecretKey{pk, kp.trapdoor}};
}

BitString pkes_pad(const PkesPublicKey& pk, std::uint64_t r, std::size_t out_bits) {
  std::size_t w = owtp_width(pk.index);
  return goldreich_levin_prng(BitString::from_uint(r, w), owtp_as_owp(pk.index, pk.gl_z), out_bits);
}

Ciphertext pkes_owtp_enc(const PkesPublicKey& pk, const BitString& x, std::uint64_t r) {
  if (x.size() != pk.msg_bits) throw std::invalid_argument("pkes_owtp_enc: message width mismatch");
  if (!owtp_in_domain(pk.index, r)) throw std::invalid_argument("pkes_owtp_enc: r outside the OWTP domain");
  BitString y = x ^ pkes_pad(pk, r, pk.msg_bits);
  BitString z = BitString::from_uint(owtp_eval(pk.index, r), owtp_width(pk.index));
  return Ciphertext{"pkes-owtp", y, z, {}};
}

Ciphertext pkes_owtp_enc(const PkesPublicKey& pk, const BitString& x, Rng& rng) {
  return pkes_owtp_enc(pk, x, owtp_sample_domain(pk.index, rng));
}

BitString pkes_owtp_dec(const PkesSecretKey& sk, const Ciphertext& c) {
  if (!c.r || c.payload.size() != sk.pk.msg_bits) throw DecryptionError("pkes_owtp_dec: malformed ciphertext");
  std::uint64_t z = c.r->to_uint();
  if (!owtp_in_domain(sk.pk.index, z)) throw DecryptionError("pkes_owtp_dec: z outside the range");
  std::uint64_t r = owtp_invert(sk.pk.index, sk.trapdoor, z);
  return c.payload ^ pkes_pad(sk.pk, r, sk.pk.msg_bits);
}

// ---- CCA1 counterexample ----

Cca1SepKey cca1_sep_keygen(std::size_t n, Rng& rng, PrfBackend backend) {
  SecretKey key{rng.bits(n)};
  Prf prf(key, n, n, backend);
  BitString hidden = rng.bits(n);
  return Cca1SepKey{key, std::move(prf), hidden};
}

Ciphertext cca1_sep_enc(const Cca1SepKey& key, const BitString& m, const BitString& r1, const BitString& r2) {
  Ciphertext first;
  Ciphertext second;
  if (m != key.hidden) {
    first = skes_goldreich_enc(key.prf, m, r1);
    second = skes_goldreich_enc(key.prf, key.hidden, r2);
  } else {
    first = skes_goldreich_enc(key.prf, key.hidden, r1);
    second = Ciphertext{"raw-key", key.key.bits, std::nullopt, {}};
  }
  first.scheme = "cca1-sep";
  first.aux.push_back(second);
  return first;
}

Ciphertext cca1_sep_enc(const Cca1SepKey& key, const BitString& m, Rng& rng) {
  BitString r1 = rng.bits(key.prf.in_bits());
  BitString r2 = rng.bits(key.prf.in_bits());
  return cca1_sep_enc(key, m, r1, r2);
}

BitString cca1_sep_dec(const Cca1SepKey& key, const Ciphertext& c) {
  Ciphertext first{"goldreich", c.payload, c.r, {}};
  return skes_goldreich_dec(key.prf, first);
}

Ciphertext cca1_swap_halves(const Ciphertext& c) {
  if (c.aux.size() != 1 || !c.aux[0].r) throw std::invalid_argument("cca1_swap_halves: second half is not a ciphertext");
  Ciphertext swapped = c.aux[0];
  swapped.scheme = c.scheme;
  swapped.aux.clear();
  swapped.aux.push_back(Ciphertext{"goldreich", c.payload, c.r, {}});
  return swapped;
}

// ---- scheme classes ----

Ciphertext OtpScheme::enc_with(const BitString& x, const BitString& r) const {
  if (!r.empty()) throw std::invalid_argument("otp: takes no randomness");
  return Ciphertext{"otp", otp_enc(key_, x), std::nullopt, {}};
}

BitString OtpScheme::dec(const Ciphertext& c) const {
  if (c.payload.size() != key_.size()) throw DecryptionError("otp: malformed ciphertext");
  return otp_dec(key_, c.payload);
}

Ciphertext OtpScheme::parse(const BitString& flat) const {
  if (flat.size() != key_.size()) throw DecryptionError("otp: flat width mismatch");
  return Ciphertext{"otp", flat, std::nullopt, {}};
}

Ciphertext GoldreichScheme::enc_with(const BitString& x, const BitString& r) const { return skes_goldreich_enc(prf_, x, r); }

BitString GoldreichScheme::dec(const Ciphertext& c) const { return skes_goldreich_dec(prf_, c); }

Ciphertext GoldreichScheme::parse(const BitString& flat) const {
  if (flat.size() != ct_bits()) throw DecryptionError("goldreich: flat width mismatch");
  return Ciphertext{"goldreich", flat.slice(prf_.in_bits(), prf_.out_bits()), flat.slice(0, prf_.in_bits()), {}};
}

PrpScheme::PrpScheme(Permutation perm, std::size_t m_bits) : perm_(std::move(perm)), m_(m_bits) {
  if (m_bits == 0 || m_bits > perm_.domain_bits()) throw std::invalid_argument("PrpScheme: bad message width");
}

Ciphertext PrpScheme::enc_with(const BitString& x, const BitString& r) const { return skes_prp_enc(perm_, m_, x, r); }

BitString PrpScheme::dec(const Ciphertext& c) const { return skes_prp_dec(perm_, m_, c); }

Ciphertext PrpScheme::parse(const BitString& flat) const {
  if (flat.size() != perm_.domain_bits()) throw DecryptionError("prp: flat width mismatch");
  return Ciphertext{"prp", flat, std::nullopt, {}};
}

std::size_t Cca1SepScheme::ct_bits() const { return 2 * (key_.prf.in_bits() + key_.prf.out_bits()); }

Ciphertext Cca1SepScheme::enc_with(const BitString& x, const BitString& r) const {
  std::size_t h = key_.prf.in_bits();
  if (r.size() != 2 * h) throw std::invalid_argument("cca1-sep: randomness width mismatch");
  return cca1_sep_enc(key_, x, r.slice(0, h), r.slice(h, h));
}

BitString Cca1SepScheme::dec(const Ciphertext& c) const { return cca1_sep_dec(key_, c); }

Ciphertext Cca1SepScheme::parse(const BitString&) const {
  throw std::logic_error("cca1-sep: ciphertexts have no fixed flat layout");
}

EtmScheme::EtmScheme(Prf enc_prf, Prf mac_prf) : enc_(std::move(enc_prf)), mac_(std::move(mac_prf)) {
  if (mac_.in_bits() != enc_.in_bits() + enc_.out_bits()) throw std::invalid_argument("etm: MAC input width mismatch");
}

Ciphertext EtmScheme::enc_with(const BitString& x, const BitString& r) const {
  Ciphertext c = skes_goldreich_enc(enc_, x, r);
  c.scheme = "etm";
  c.payload = c.payload.concat(mac_.eval(r.concat(c.payload)));
  return c;
}

BitString EtmScheme::dec(const Ciphertext& c) const {
  std::size_t m = enc_.out_bits();
  if (!c.r || c.r->size() != enc_.in_bits() || c.payload.size() != m + mac_.out_bits()) {
    throw DecryptionError("etm: malformed ciphertext");
  }
  BitString y = c.payload.slice(0, m);
  if (mac_.eval(c.r->concat(y)) != c.payload.slice(m, mac_.out_bits())) throw DecryptionError("etm: tag mismatch");
  return skes_goldreich_dec(enc_, Ciphertext{"goldreich", y, c.r, {}});
}

Ciphertext EtmScheme::parse(const BitString& flat) const {
  if (flat.size() != ct_bits()) throw DecryptionError("etm: flat width mismatch");
  std::size_t rb = enc_.in_bits();
  return Ciphertext{"etm", flat.slice(rb, flat.size() - rb), flat.slice(0, rb), {}};
}

SkesFactory otp_factory(std::size_t n) {
  return [n](Rng& rng) { return std::make_unique<OtpScheme>(rng.bits(n)); };
}

SkesFactory goldreich_factory(std::size_t n, PrfBackend backend) { return goldreich_factory(n, n, backend); }

SkesFactory goldreich_factory(std::size_t r_bits, std::size_t m_bits, PrfBackend backend) {
  return [=](Rng& rng) {
    SecretKey key{rng.bits(std::max<std::size_t>(r_bits, 16))};
    return std::make_unique<GoldreichScheme>(Prf(key, r_bits, m_bits, backend));
  };
}

SkesFactory prp_factory(std::size_t m_bits, std::size_t r_bits) {
  return [=](Rng& rng) {
    SecretKey key{rng.bits(64)};
    return std::make_unique<PrpScheme>(sample_ideal_qprp(key, m_bits + r_bits), m_bits);
  };
}

SkesFactory etm_factory(std::size_t n, std::size_t tag_bits) {
  return [n, tag_bits](Rng& rng) {
    SecretKey ke{rng.bits(std::max<std::size_t>(n, 16))};
    SecretKey km{rng.bits(std::max<std::size_t>(2 * n, 16))};
    return std::make_unique<EtmScheme>(Prf(ke, n, n), Prf(km, 2 * n, tag_bits));
  };
}

SkesFactory cca1_sep_factory(std::size_t n) {
  return [n](Rng& rng) { return std::make_unique<Cca1SepScheme>(cca1_sep_keygen(n, rng)); };
}

std::optional<BitString> cca2_restricted_dec(const Skes& scheme, const Ciphertext& forbidden, const Ciphertext& c) {
  if (c == forbidden) return std::nullopt;
  return scheme.dec(c);
}

Permutation type2_permutation(const Skes& scheme, const BitString& r) {
  std::size_t m = scheme.msg_bits();
  std::size_t rb = scheme.rand_bits();
  if (r.size() != rb) throw std::invalid_argument("type2_permutation: randomness width mismatch");
  if (scheme.ct_bits() != m + rb) throw std::invalid_argument("type2_permutation: ciphertext width is not m + |r|");
  std::size_t d = m + rb;
  std::vector<std::uint64_t> table(std::size_t{1} << d);
  for (std::uint64_t x = 0; x < (1ULL << m); ++x) {
    for (std::uint64_t a = 0; a < (1ULL << rb); ++a) {
      BitString ra = r ^ BitString::from_uint(a, rb);
      Ciphertext c = scheme.enc_with(BitString::from_uint(x, m), ra);
      table[(x << rb) | a] = c.flatten().to_uint();
    }
  }
  return Permutation(d, std::move(table));
}

}  // namespace qsec
