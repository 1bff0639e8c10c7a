#include "qsec/qoram/skqes.hpp"

#include <stdexcept>

#include "qsec/qsim/gates.hpp"

namespace qsec {

namespace {

void check_register(std::size_t total, std::size_t held, std::size_t n, const char* who) {
  if (held + n != total) throw std::invalid_argument(std::string(who) + ": register width mismatch");
}

BitString pad_for(const Skqes1Key& key, const BitString& r) {
  if (r.size() != 2 * key.n) throw std::invalid_argument("skqes1: r must have 2n bits");
  return key.prf.eval(r);
}

// Removes k trailing wires known to be in a basis state.
StateVector drop_trailing_basis(const StateVector& s, std::size_t k) {
  std::uint64_t width = std::uint64_t{1} << k;
  std::uint64_t best = 0;
  double best_mass = -1.0;
  for (std::uint64_t a = 0; a < width; ++a) {
    double mass = 0.0;
    for (std::uint64_t i = a; i < s.dim(); i += width) mass += std::norm(s[i]);
    if (mass > best_mass) {
      best_mass = mass;
      best = a;
    }
  }
  if (std::abs(best_mass - 1.0) > 1e-8) throw std::domain_error("ancilla register is not in a basis state");
  Vector out(static_cast<Eigen::Index>(s.dim() / width));
  for (Eigen::Index i = 0; i < out.size(); ++i) out(i) = s[static_cast<std::uint64_t>(i) * width + best];
  return StateVector::from_amplitudes_unchecked(std::move(out));
}

}  // namespace

// ---- Scheme 1 ----

Skqes1Key skqes1_keygen(std::size_t n, Rng& rng, PrfBackend backend) {
  SecretKey k{rng.bits(std::max<std::size_t>(2 * n, 16))};
  return Skqes1Key{Prf(k, 2 * n, 2 * n, backend), n};
}

QCiphertext skqes1_enc(const Skqes1Key& key, const DensityMatrix& rho, const BitString& r, std::size_t held) {
  check_register(rho.n_qubits(), held, key.n, "skqes1_enc");
  return QCiphertext{qotp_apply(pad_for(key, r), rho, wire_range(held, key.n)), r};
}

QCiphertextPure skqes1_enc(const Skqes1Key& key, const StateVector& psi, const BitString& r, std::size_t held) {
  check_register(psi.n_qubits(), held, key.n, "skqes1_enc");
  return QCiphertextPure{qotp_apply(pad_for(key, r), psi, wire_range(held, key.n)), r};
}

DensityMatrix skqes1_dec(const Skqes1Key& key, const QCiphertext& c, std::size_t held) {
  if (!c.r) throw DecryptionError("skqes1_dec: missing r register");
  check_register(c.state.n_qubits(), held, key.n, "skqes1_dec");
  return qotp_apply(pad_for(key, *c.r), c.state, wire_range(held, key.n));
}

StateVector skqes1_dec(const Skqes1Key& key, const QCiphertextPure& c, std::size_t held) {
  if (!c.r) throw DecryptionError("skqes1_dec: missing r register");
  check_register(c.state.n_qubits(), held, key.n, "skqes1_dec");
  return qotp_apply(pad_for(key, *c.r), c.state, wire_range(held, key.n));
}

QCiphertext Skqes1Scheme::enc(const DensityMatrix& rho, Rng& rng, std::size_t held) const {
  return skqes1_enc(key_, rho, rng.bits(2 * key_.n), held);
}

QCiphertextPure Skqes1Scheme::enc(const StateVector& psi, Rng& rng, std::size_t held) const {
  return skqes1_enc(key_, psi, rng.bits(2 * key_.n), held);
}

DensityMatrix Skqes1Scheme::dec(const QCiphertext& c, std::size_t held) const { return skqes1_dec(key_, c, held); }

SkqesFactory skqes1_factory(std::size_t n, PrfBackend backend) {
  return [n, backend](Rng& rng) { return std::make_unique<Skqes1Scheme>(skqes1_keygen(n, rng, backend)); };
}

// ---- type-2 lift ----

Type2LiftScheme::Type2LiftScheme(std::shared_ptr<const Skes> inner)
    : inner_(std::move(inner)), perm_(type2_permutation(*inner_, BitString::zeros(inner_->rand_bits()))) {}

QCiphertext Type2LiftScheme::enc_with(const DensityMatrix& rho, const BitString& r, std::size_t held) const {
  check_register(rho.n_qubits(), held, msg_qubits(), "lift enc");
  if (r.size() != inner_->rand_bits()) throw std::invalid_argument("lift enc: randomness width mismatch");
  DensityMatrix padded = rho;
  if (!r.empty()) padded = rho.tensor(DensityMatrix::pure(StateVector::basis(r.size(), r.to_uint())));
  return QCiphertext{apply_basis_permutation(padded, perm_, wire_range(held, ct_qubits())), std::nullopt};
}

QCiphertextPure Type2LiftScheme::enc_with(const StateVector& psi, const BitString& r, std::size_t held) const {
  check_register(psi.n_qubits(), held, msg_qubits(), "lift enc");
  if (r.size() != inner_->rand_bits()) throw std::invalid_argument("lift enc: randomness width mismatch");
  StateVector padded = r.empty() ? psi : psi.tensor(StateVector::basis(r.size(), r.to_uint()));
  return QCiphertextPure{apply_basis_permutation(padded, perm_, wire_range(held, ct_qubits())), std::nullopt};
}

QCiphertext Type2LiftScheme::enc(const DensityMatrix& rho, Rng& rng, std::size_t held) const {
  return enc_with(rho, rng.bits(inner_->rand_bits()), held);
}

QCiphertextPure Type2LiftScheme::enc(const StateVector& psi, Rng& rng, std::size_t held) const {
  return enc_with(psi, rng.bits(inner_->rand_bits()), held);
}

DensityMatrix Type2LiftScheme::dec(const QCiphertext& c, std::size_t held) const {
  check_register(c.state.n_qubits(), held, ct_qubits(), "lift dec");
  DensityMatrix back = apply_basis_permutation(c.state, perm_.inversed(), wire_range(held, ct_qubits()));
  if (inner_->rand_bits() == 0) return back;
  return partial_trace(back, wire_range(0, held + msg_qubits()));
}

StateVector Type2LiftScheme::dec_pure(const StateVector& psi, std::size_t held) const {
  check_register(psi.n_qubits(), held, ct_qubits(), "lift dec");
  StateVector back = apply_basis_permutation(psi, perm_.inversed(), wire_range(held, ct_qubits()));
  return drop_trailing_basis(back, inner_->rand_bits());
}

std::unique_ptr<Type2LiftScheme> skqes_type2_lift(std::shared_ptr<const Skes> inner) {
  return std::make_unique<Type2LiftScheme>(std::move(inner));
}

SkqesFactory lift_factory(SkesFactory inner) {
  return [inner = std::move(inner)](Rng& rng) -> std::unique_ptr<Skqes> {
    return skqes_type2_lift(std::shared_ptr<const Skes>(inner(rng)));
  };
}

// ---- public-key scheme ----

PkqesKeyPair pkqes_keygen(unsigned modulus_bits, std::size_t n, Rng& rng) {
  return PkqesKeyPair{pkes_keygen(modulus_bits, 2 * n, rng), n};
}

QCiphertext pkqes_enc(const PkesPublicKey& pk, std::size_t n, const DensityMatrix& rho, std::uint64_t r,
                      std::size_t held) {
  check_register(rho.n_qubits(), held, n, "pkqes_enc");
  if (pk.msg_bits != 2 * n) throw std::invalid_argument("pkqes_enc: key pad width must be 2n");
  if (!owtp_in_domain(pk.index, r)) throw std::invalid_argument("pkqes_enc: r outside the OWTP domain");
  BitString pad = pkes_pad(pk, r, 2 * n);
  BitString z = BitString::from_uint(owtp_eval(pk.index, r), owtp_width(pk.index));
  return QCiphertext{qotp_apply(pad, rho, wire_range(held, n)), z};
}

QCiphertext pkqes_enc(const PkesPublicKey& pk, std::size_t n, const DensityMatrix& rho, Rng& rng, std::size_t held) {
  return pkqes_enc(pk, n, rho, owtp_sample_domain(pk.index, rng), held);
}

DensityMatrix pkqes_dec(const PkesSecretKey& sk, std::size_t n, const QCiphertext& c, std::size_t held) {
  if (!c.r) throw DecryptionError("pkqes_dec: missing z register");
  check_register(c.state.n_qubits(), held, n, "pkqes_dec");
  std::uint64_t z = c.r->to_uint();
  if (!owtp_in_domain(sk.pk.index, z)) throw DecryptionError("pkqes_dec: z outside the range");
  std::uint64_t r = owtp_invert(sk.pk.index, sk.trapdoor, z);
  return qotp_apply(pkes_pad(sk.pk, r, 2 * n), c.state, wire_range(held, n));
}

}  // namespace qsec
