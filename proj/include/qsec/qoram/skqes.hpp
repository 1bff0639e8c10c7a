#pragma once

#include <memory>
#include <optional>
#include <string>

#include "qsec/core/prf.hpp"
#include "qsec/core/rng.hpp"
#include "qsec/core/schemes.hpp"
#include "qsec/qsim/state.hpp"

namespace qsec {

// Quantum ciphertext. `r` is the classical register (the PRF input, or z for the public-key scheme).
struct QCiphertext {
  DensityMatrix state;
  std::optional<BitString> r;
};

struct QCiphertextPure {
  StateVector state;
  std::optional<BitString> r;
};

// Secret-key quantum encryption. Inputs may carry `held` leading wires that are never touched;
// the message register is the next msg_qubits() wires.
class Skqes {
 public:
  virtual ~Skqes() = default;
  virtual std::string name() const = 0;
  virtual std::size_t msg_qubits() const = 0;
  virtual std::size_t ct_qubits() const = 0;
  virtual QCiphertext enc(const DensityMatrix& rho, Rng& rng, std::size_t held = 0) const = 0;
  virtual QCiphertextPure enc(const StateVector& psi, Rng& rng, std::size_t held = 0) const = 0;
  virtual DensityMatrix dec(const QCiphertext& c, std::size_t held = 0) const = 0;
};

using SkqesFactory = std::function<std::unique_ptr<Skqes>(Rng&)>;

// ---- QOTP keyed by a PRF on a classical r ----
struct Skqes1Key {
  Prf prf;
  std::size_t n = 0;
};

Skqes1Key skqes1_keygen(std::size_t n, Rng& rng, PrfBackend backend = PrfBackend::Ideal);
// r must have 2n bits; the pad is F_k(r).
QCiphertext skqes1_enc(const Skqes1Key& key, const DensityMatrix& rho, const BitString& r, std::size_t held = 0);
QCiphertextPure skqes1_enc(const Skqes1Key& key, const StateVector& psi, const BitString& r, std::size_t held = 0);
DensityMatrix skqes1_dec(const Skqes1Key& key, const QCiphertext& c, std::size_t held = 0);
StateVector skqes1_dec(const Skqes1Key& key, const QCiphertextPure& c, std::size_t held = 0);

class Skqes1Scheme : public Skqes {
 public:
  explicit Skqes1Scheme(Skqes1Key key) : key_(std::move(key)) {}
  std::string name() const override { return "skqes1"; }
  std::size_t msg_qubits() const override { return key_.n; }
  std::size_t ct_qubits() const override { return key_.n; }
  QCiphertext enc(const DensityMatrix& rho, Rng& rng, std::size_t held = 0) const override;
  QCiphertextPure enc(const StateVector& psi, Rng& rng, std::size_t held = 0) const override;
  DensityMatrix dec(const QCiphertext& c, std::size_t held = 0) const override;
  const Skqes1Key& key() const { return key_; }

 private:
  Skqes1Key key_;
};

SkqesFactory skqes1_factory(std::size_t n, PrfBackend backend = PrfBackend::Ideal);

// ---- type-2 lift of a classical scheme ----
// Encryption appends rand_bits ancilla wires prepared in |r> and applies
// |x, a> -> |flatten(Enc(x; a))>. Decryption applies the inverse and traces the ancilla out,
// so it never needs r.
class Type2LiftScheme : public Skqes {
 public:
  // Throws std::invalid_argument if the pinned-randomness map is not a bijection.
  explicit Type2LiftScheme(std::shared_ptr<const Skes> inner);
  std::string name() const override { return "lift(" + inner_->name() + ")"; }
  std::size_t msg_qubits() const override { return inner_->msg_bits(); }
  std::size_t ct_qubits() const override { return inner_->ct_bits(); }
  QCiphertext enc(const DensityMatrix& rho, Rng& rng, std::size_t held = 0) const override;
  QCiphertextPure enc(const StateVector& psi, Rng& rng, std::size_t held = 0) const override;
  DensityMatrix dec(const QCiphertext& c, std::size_t held = 0) const override;

  QCiphertext enc_with(const DensityMatrix& rho, const BitString& r, std::size_t held = 0) const;
  QCiphertextPure enc_with(const StateVector& psi, const BitString& r, std::size_t held = 0) const;
  StateVector dec_pure(const StateVector& psi, std::size_t held = 0) const;
  const Skes& inner() const { return *inner_; }
  const Permutation& permutation() const { return perm_; }

 private:
  std::shared_ptr<const Skes> inner_;
  Permutation perm_;
};

std::unique_ptr<Type2LiftScheme> skqes_type2_lift(std::shared_ptr<const Skes> inner);
SkqesFactory lift_factory(SkesFactory inner);

// ---- public-key quantum encryption: QOTP padded by the GL generator over the toy OWTP ----
struct PkqesKeyPair {
  PkesKeyPair keys;
  std::size_t n = 0;
};

PkqesKeyPair pkqes_keygen(unsigned modulus_bits, std::size_t n, Rng& rng);
// r is a domain element of the OWTP; the ciphertext's classical part is z = Eval(pk, r).
QCiphertext pkqes_enc(const PkesPublicKey& pk, std::size_t n, const DensityMatrix& rho, std::uint64_t r,
                      std::size_t held = 0);
QCiphertext pkqes_enc(const PkesPublicKey& pk, std::size_t n, const DensityMatrix& rho, Rng& rng, std::size_t held = 0);
// Throws DecryptionError if z is outside the OWTP range.
DensityMatrix pkqes_dec(const PkesSecretKey& sk, std::size_t n, const QCiphertext& c, std::size_t held = 0);

}  // namespace qsec
