#include "qsec/attacks/classical.hpp"

#include <stdexcept>

#include "qsec/core/numtheory.hpp"
#include "qsec/qsim/gates.hpp"

namespace qsec {

namespace {

class RandomGuess : public IndAdversary {
 public:
  IndChallenge choose(IndOracleAccess& o, Rng&) override {
    return {BitString::zeros(o.msg_bits()), BitString::ones(o.msg_bits())};
  }
  bool guess(IndOracleAccess&, const Ciphertext&, Rng& rng) override { return rng.bit(); }
};

class OtpReuse : public IndAdversary {
 public:
  IndChallenge choose(IndOracleAccess& o, Rng&) override {
    std::size_t n = o.msg_bits();
    if (o.can_encrypt()) {
      c0_ = o.enc(BitString::zeros(n));
      c1_ = o.enc(BitString::ones(n));
    }
    return {BitString::zeros(n), BitString::ones(n)};
  }
  bool guess(IndOracleAccess&, const Ciphertext& c, Rng& rng) override {
    if (c0_ && c == *c0_) return false;
    if (c1_ && c == *c1_) return true;
    return rng.bit();
  }

 private:
  std::optional<Ciphertext> c0_, c1_;
};

class Cca1Counterexample : public IndAdversary {
 public:
  IndChallenge choose(IndOracleAccess& o, Rng&) override {
    std::size_t n = o.msg_bits();
    key_ = recover_key(o);
    return {BitString::zeros(n), BitString::ones(n)};
  }
  bool guess(IndOracleAccess&, const Ciphertext& c, Rng& rng) override {
    if (!key_ || !c.r || c.r->size() != key_->size()) return rng.bit();
    Prf prf(SecretKey{*key_}, key_->size(), key_->size());
    BitString m = c.payload ^ prf.eval(*c.r);
    if (m.all_zero()) return false;
    if (m == BitString::ones(m.size())) return true;
    return rng.bit();
  }

 private:
  static std::optional<BitString> recover_key(IndOracleAccess& o) {
    std::size_t n = o.msg_bits();
    Ciphertext c = o.enc(BitString::zeros(n));
    // 0^n was the hidden message itself, so the key is already in hand.
    if (c.aux.size() == 1 && !c.aux[0].r) return c.aux[0].payload;
    Ciphertext swapped;
    try {
      swapped = cca1_swap_halves(c);
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
    std::optional<BitString> hidden = o.dec(swapped);
    if (!hidden) return std::nullopt;
    Ciphertext k = o.enc(*hidden);
    if (k.aux.size() != 1 || k.aux[0].r) return std::nullopt;
    return k.aux[0].payload;
  }

  std::optional<BitString> key_;
};

class Cca2Flip : public IndAdversary {
 public:
  IndChallenge choose(IndOracleAccess& o, Rng&) override {
    std::size_t n = o.msg_bits();
    return {BitString::zeros(n), BitString::ones(n)};
  }
  bool guess(IndOracleAccess& o, const Ciphertext& c, Rng& rng) override {
    std::size_t n = o.msg_bits();
    if (c.payload.size() < n) return rng.bit();
    Ciphertext flipped = c;
    flipped.payload = c.payload ^ BitString::ones(n).concat(BitString::zeros(c.payload.size() - n));
    std::optional<BitString> m = o.dec(flipped);
    if (!m) return rng.bit();
    BitString back = *m ^ BitString::ones(n);
    if (back.all_zero()) return false;
    if (back == BitString::ones(n)) return true;
    return rng.bit();
  }
};

class SuperpositionQuerier : public QcpaAdversary {
 public:
  IndChallenge choose(QcpaOracle& o, Rng& rng) override {
    std::size_t m = o.msg_bits();
    std::size_t c = o.ct_bits();
    StateVector s(m + c);
    for (std::size_t w = 0; w < m; ++w) s = apply_gate(s, Gate::H, {w});
    s = o.query(s, wire_range(0, m), wire_range(m, c));
    seen_ = measure_computational(s, wire_range(m, c), rng).first;
    return {BitString::zeros(m), BitString::ones(m)};
  }
  bool guess(QcpaOracle&, const Ciphertext& c, Rng&) override {
    return ((c.flatten().popcount() + seen_.popcount()) & 1) != 0;
  }

 private:
  BitString seen_;
};

}  // namespace

const std::vector<AttackSpec>& attack_catalog() {
  static const std::vector<AttackSpec> catalog = {
      {"otp-reuse", "one-time pad", "ind-cpa", "wins with probability 1"},
      {"cca1-counterexample", "paired-ciphertext Goldreich variant", "ind-cca1", "wins with probability 1"},
      {"cca2-flip", "Goldreich scheme", "ind-cca2", "wins with probability 1"},
      {"hadamard", "type-2 lift of a quasi-length-preserving scheme", "qind", "wins with probability 1"},
      {"bm-oram", "PathORAM over the Blum-Micali generator", "ap-ind-cqa", "success rate >= 0.95 at toy moduli"},
      {"qap-tag-only", "PathQORAM", "qap-ind-cqa", "advantage within noise"},
      {"qap-payload-only", "PathQORAM", "qap-ind-cqa", "advantage within noise"},
  };
  return catalog;
}

IndAdversaryFactory random_guess_adversary() {
  return [] { return std::make_unique<RandomGuess>(); };
}

IndAdversaryFactory otp_reuse_attack() {
  return [] { return std::make_unique<OtpReuse>(); };
}

IndAdversaryFactory cca1_counterexample_attack() {
  return [] { return std::make_unique<Cca1Counterexample>(); };
}

IndAdversaryFactory cca2_flip_attack() {
  return [] { return std::make_unique<Cca2Flip>(); };
}

QcpaAdversaryFactory superposition_cpa_adversary() {
  return [] { return std::make_unique<SuperpositionQuerier>(); };
}

std::uint64_t dlog_bruteforce(std::uint64_t p, std::uint64_t g, std::uint64_t h) {
  if (p < 3 || p >= (std::uint64_t{1} << 24) || !nt::is_prime(p)) throw std::invalid_argument("dlog_bruteforce: bad modulus");
  if (g % p == 0) throw std::invalid_argument("dlog_bruteforce: bad base");
  std::uint64_t acc = 1;
  for (std::uint64_t x = 0; x < p; ++x) {
    if (acc == h % p) return x;
    acc = nt::mulmod(acc, g, p);
    if (acc == 1) break;
  }
  throw std::domain_error("dlog_bruteforce: h is not in the subgroup generated by g");
}

}  // namespace qsec
