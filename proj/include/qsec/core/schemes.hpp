#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qsec/core/bitstring.hpp"
#include "qsec/core/owtp.hpp"
#include "qsec/core/permutation.hpp"
#include "qsec/core/prf.hpp"
#include "qsec/core/rng.hpp"

namespace qsec {

class DecryptionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Ciphertext {
  std::string scheme;
  BitString payload;
  // Randomness-carrying component: Goldreich r, or z = Eval(pk, r) for the OWTP scheme.
  std::optional<BitString> r;
  // Second half of the CCA1 counterexample's paired ciphertext (at most one element).
  std::vector<Ciphertext> aux;

  bool operator==(const Ciphertext&) const = default;
  // r || payload || aux, the layout used for quantum oracles.
  BitString flatten() const;
};

// ---- one-time pad ----
BitString otp_enc(const BitString& key, const BitString& x);
BitString otp_dec(const BitString& key, const BitString& y);

// ---- Goldreich scheme: (y, r) with y = x ^ F_k(r) ----
Ciphertext skes_goldreich_enc(const Prf& prf, const BitString& x, const BitString& r);
Ciphertext skes_goldreich_enc(const Prf& prf, const BitString& x, Rng& rng);
BitString skes_goldreich_dec(const Prf& prf, const Ciphertext& c);

// ---- permutation scheme: y = P_k(x || r), decryption keeps the first m bits ----
Ciphertext skes_prp_enc(const Permutation& perm, std::size_t m_bits, const BitString& x, const BitString& r);
BitString skes_prp_dec(const Permutation& perm, std::size_t m_bits, const Ciphertext& c);
// Randomized ECB-like mode: message of l*m bits, one fresh r per block.
std::vector<Ciphertext> skes_prp_mode_enc(const Permutation& perm, std::size_t m_bits, const BitString& msg,
                                          const std::vector<BitString>& rs);
std::vector<Ciphertext> skes_prp_mode_enc(const Permutation& perm, std::size_t m_bits, const BitString& msg, Rng& rng);
BitString skes_prp_mode_dec(const Permutation& perm, std::size_t m_bits, const std::vector<Ciphertext>& blocks);

// ---- public-key scheme from the toy OWTP and the GL generator ----
struct PkesPublicKey {
  TrapdoorIndex index;
  BitString gl_z;
  std::size_t msg_bits = 0;
};

struct PkesSecretKey {
  PkesPublicKey pk;
  Trapdoor trapdoor;
};

struct PkesKeyPair {
  PkesPublicKey pk;
  PkesSecretKey sk;
};

PkesKeyPair pkes_keygen(unsigned modulus_bits, std::size_t msg_bits, Rng& rng);
// G_P(r): GL generator over the RSA permutation, msg_bits output bits.
BitString pkes_pad(const PkesPublicKey& pk, std::uint64_t r, std::size_t out_bits);
Ciphertext pkes_owtp_enc(const PkesPublicKey& pk, const BitString& x, std::uint64_t r);
Ciphertext pkes_owtp_enc(const PkesPublicKey& pk, const BitString& x, Rng& rng);
BitString pkes_owtp_dec(const PkesSecretKey& sk, const Ciphertext& c);

// ---- CCA1 counterexample over the Goldreich scheme ----
struct Cca1SepKey {
  SecretKey key;
  Prf prf;
  // Hidden message, sampled at keygen.
  BitString hidden;
};

Cca1SepKey cca1_sep_keygen(std::size_t n, Rng& rng, PrfBackend backend = PrfBackend::Ideal);
Ciphertext cca1_sep_enc(const Cca1SepKey& key, const BitString& m, const BitString& r1, const BitString& r2);
Ciphertext cca1_sep_enc(const Cca1SepKey& key, const BitString& m, Rng& rng);
BitString cca1_sep_dec(const Cca1SepKey& key, const Ciphertext& c);
// Swaps the two halves of a paired ciphertext; throws if the second half is not a ciphertext.
Ciphertext cca1_swap_halves(const Ciphertext& c);

// ---- keyed scheme interface used by the games ----
class Skes {
 public:
  virtual ~Skes() = default;
  virtual std::string name() const = 0;
  virtual std::size_t msg_bits() const = 0;
  virtual std::size_t rand_bits() const = 0;
  // Width of Ciphertext::flatten().
  virtual std::size_t ct_bits() const = 0;
  virtual Ciphertext enc_with(const BitString& x, const BitString& r) const = 0;
  virtual BitString dec(const Ciphertext& c) const = 0;
  // Inverse of flatten().
  virtual Ciphertext parse(const BitString& flat) const = 0;

  Ciphertext enc(const BitString& x, Rng& rng) const { return enc_with(x, rng.bits(rand_bits())); }
};

using SkesFactory = std::function<std::unique_ptr<Skes>(Rng&)>;

class OtpScheme : public Skes {
 public:
  explicit OtpScheme(BitString key) : key_(std::move(key)) {}
  std::string name() const override { return "otp"; }
  std::size_t msg_bits() const override { return key_.size(); }
  std::size_t rand_bits() const override { return 0; }
  std::size_t ct_bits() const override { return key_.size(); }
  Ciphertext enc_with(const BitString& x, const BitString& r) const override;
  BitString dec(const Ciphertext& c) const override;
  Ciphertext parse(const BitString& flat) const override;
  const BitString& key() const { return key_; }

 private:
  BitString key_;
};

class GoldreichScheme : public Skes {
 public:
  explicit GoldreichScheme(Prf prf) : prf_(std::move(prf)) {}
  std::string name() const override { return "goldreich"; }
  std::size_t msg_bits() const override { return prf_.out_bits(); }
  std::size_t rand_bits() const override { return prf_.in_bits(); }
  std::size_t ct_bits() const override { return prf_.in_bits() + prf_.out_bits(); }
  Ciphertext enc_with(const BitString& x, const BitString& r) const override;
  BitString dec(const Ciphertext& c) const override;
  Ciphertext parse(const BitString& flat) const override;
  const Prf& prf() const { return prf_; }

 private:
  Prf prf_;
};

class PrpScheme : public Skes {
 public:
  PrpScheme(Permutation perm, std::size_t m_bits);
  std::string name() const override { return "prp"; }
  std::size_t msg_bits() const override { return m_; }
  std::size_t rand_bits() const override { return perm_.domain_bits() - m_; }
  std::size_t ct_bits() const override { return perm_.domain_bits(); }
  Ciphertext enc_with(const BitString& x, const BitString& r) const override;
  BitString dec(const Ciphertext& c) const override;
  Ciphertext parse(const BitString& flat) const override;
  const Permutation& permutation() const { return perm_; }

 private:
  Permutation perm_;
  std::size_t m_;
};

class Cca1SepScheme : public Skes {
 public:
  explicit Cca1SepScheme(Cca1SepKey key) : key_(std::move(key)) {}
  std::string name() const override { return "cca1-sep"; }
  std::size_t msg_bits() const override { return key_.prf.out_bits(); }
  std::size_t rand_bits() const override { return 2 * key_.prf.in_bits(); }
  std::size_t ct_bits() const override;
  Ciphertext enc_with(const BitString& x, const BitString& r) const override;
  BitString dec(const Ciphertext& c) const override;
  Ciphertext parse(const BitString& flat) const override;
  const Cca1SepKey& key() const { return key_; }

 private:
  Cca1SepKey key_;
};

// Goldreich scheme with a PRF tag over r || y appended to the payload. Decryption
// throws DecryptionError when the tag does not match.
class EtmScheme : public Skes {
 public:
  EtmScheme(Prf enc_prf, Prf mac_prf);
  std::string name() const override { return "etm"; }
  std::size_t msg_bits() const override { return enc_.out_bits(); }
  std::size_t rand_bits() const override { return enc_.in_bits(); }
  std::size_t ct_bits() const override { return enc_.in_bits() + enc_.out_bits() + mac_.out_bits(); }
  Ciphertext enc_with(const BitString& x, const BitString& r) const override;
  BitString dec(const Ciphertext& c) const override;
  Ciphertext parse(const BitString& flat) const override;

 private:
  Prf enc_;
  Prf mac_;
};

SkesFactory otp_factory(std::size_t n);
SkesFactory goldreich_factory(std::size_t n, PrfBackend backend = PrfBackend::Ideal);
// Goldreich scheme with |r| = r_bits and m-bit messages.
SkesFactory goldreich_factory(std::size_t r_bits, std::size_t m_bits, PrfBackend backend);
SkesFactory prp_factory(std::size_t m_bits, std::size_t r_bits);
SkesFactory cca1_sep_factory(std::size_t n);
SkesFactory etm_factory(std::size_t n, std::size_t tag_bits = 32);

// Decryption oracle that refuses the challenge ciphertext. nullopt is the reject marker.
std::optional<BitString> cca2_restricted_dec(const Skes& scheme, const Ciphertext& forbidden, const Ciphertext& c);

// Pinned-randomness permutation |x, a> -> |flatten(Enc(x; r ^ a))> on msg_bits + rand_bits wires.
// Throws std::invalid_argument if the map is not a bijection.
Permutation type2_permutation(const Skes& scheme, const BitString& r);

}  // namespace qsec
