#include "qsec/attacks/hadamard.hpp"

#include <stdexcept>

#include "qsec/qsim/gates.hpp"

namespace qsec {

namespace {

StateVector hadamard_basis(std::size_t m, bool ones) {
  StateVector s = StateVector::basis(m, ones ? (std::uint64_t{1} << m) - 1 : 0);
  for (std::size_t w = 0; w < m; ++w) s = apply_gate(s, Gate::H, {w});
  return s;
}

std::vector<std::size_t> core_wires(const QindView& v, std::size_t offset, std::size_t width) {
  return wire_range(v.env_qubits + offset, width);
}

class HadamardDistinguisher : public QindAdversary {
 public:
  HadamardDistinguisher(std::size_t m, std::size_t offset, std::size_t width) : m_(m), offset_(offset), width_(width) {}

  QindChallenge choose(QindOracle&, Rng&) override {
    return QindChallenge::states(hadamard_basis(m_, false), hadamard_basis(m_, true));
  }

  bool guess(QindOracle&, const QindView& view, Rng& rng) override {
    std::vector<std::size_t> wires = core_wires(view, offset_, width_);
    BitString outcome;
    if (view.pure) {
      StateVector s = *view.pure;
      for (std::size_t w : wires) s = apply_gate(s, Gate::H, {w});
      outcome = measure_computational(s, wires, rng).first;
    } else {
      DensityMatrix d = *view.mixed;
      for (std::size_t w : wires) d = apply_gate(d, Gate::H, {w});
      outcome = measure_computational(d, wires, rng).first;
    }
    return !outcome.all_zero();
  }

 private:
  std::size_t m_, offset_, width_;
};

void verify_split(const CoreSplit& s) {
  std::size_t total = s.msg_bits + s.rand_bits;
  if (total > 14) return;
  for (std::uint64_t r = 0; r < (std::uint64_t{1} << s.rand_bits); ++r) {
    BitString rb = BitString::from_uint(r, s.rand_bits);
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << s.msg_bits); ++x) {
      BitString xb = BitString::from_uint(x, s.msg_bits);
      BitString y = s.core(rb, xb);
      if (y.size() != s.core_bits) throw std::logic_error("core_function_split: core width is not constant");
      if (s.invert(rb, y) != xb) throw std::logic_error("core_function_split: inverse does not recover x");
    }
  }
}

}  // namespace

CoreSplit core_function_split(const Skes& scheme) {
  CoreSplit s;
  s.msg_bits = scheme.msg_bits();
  s.rand_bits = scheme.rand_bits();
  if (const auto* otp = dynamic_cast<const OtpScheme*>(&scheme)) {
    BitString key = otp->key();
    s.core_offset = 0;
    s.core_bits = key.size();
    s.core = [key](const BitString&, const BitString& x) { return x ^ key; };
    s.invert = [key](const BitString&, const BitString& y) { return y ^ key; };
  } else if (const auto* gs = dynamic_cast<const GoldreichScheme*>(&scheme)) {
    const Prf& prf = gs->prf();
    s.core_offset = prf.in_bits();
    s.core_bits = prf.out_bits();
    s.core = [&prf](const BitString& r, const BitString& x) { return x ^ prf.eval(r); };
    s.invert = [&prf](const BitString& r, const BitString& y) { return y ^ prf.eval(r); };
  } else if (const auto* ps = dynamic_cast<const PrpScheme*>(&scheme)) {
    const Permutation& perm = ps->permutation();
    std::size_t m = s.msg_bits;
    std::size_t width = perm.domain_bits();
    s.core_offset = 0;
    s.core_bits = width;
    s.core = [&perm, width](const BitString& r, const BitString& x) {
      return BitString::from_uint(perm.apply(x.concat(r).to_uint()), width);
    };
    s.invert = [&perm, width, m](const BitString&, const BitString& y) {
      return BitString::from_uint(perm.invert(y.to_uint()), width).slice(0, m);
    };
  } else {
    throw std::invalid_argument("core_function_split: " + scheme.name() + " declares no core decomposition");
  }
  s.quasi_length_preserving = s.core_bits == s.msg_bits;
  verify_split(s);
  return s;
}

QindAdversaryFactory hadamard_distinguisher(std::size_t msg_bits, std::size_t core_offset, std::size_t core_bits) {
  return [=] { return std::make_unique<HadamardDistinguisher>(msg_bits, core_offset, core_bits); };
}

QindAdversaryFactory hadamard_distinguisher(const CoreSplit& split) {
  return hadamard_distinguisher(split.msg_bits, split.core_offset, split.core_bits);
}

double hadamard_zero_probability(const Skqes& scheme, const CoreSplit& split, bool b, Rng& rng) {
  StateVector psi = hadamard_basis(split.msg_bits, b);
  QCiphertextPure c = scheme.enc(psi, rng);
  std::vector<std::size_t> wires = wire_range(split.core_offset, split.core_bits);
  StateVector s = c.state;
  for (std::size_t w : wires) s = apply_gate(s, Gate::H, {w});
  return outcome_probabilities(s, wires)[0];
}

}  // namespace qsec
