#include "qsec/games/ind.hpp"

#include "qsec/qsim/gates.hpp"
#include "qsec/qsim/oracles.hpp"

namespace qsec {

namespace {

class IndOracles : public IndOracleAccess {
 public:
  IndOracles(const Skes& scheme, IndVariant v, Rng rng) : scheme_(scheme), variant_(v), rng_(std::move(rng)) {}

  std::size_t msg_bits() const override { return scheme_.msg_bits(); }
  bool can_encrypt() const override { return variant_ != IndVariant::Ind; }
  bool can_decrypt() const override {
    return variant_ == IndVariant::Cca2 || (variant_ == IndVariant::Cca1 && !challenge_);
  }

  Ciphertext enc(const BitString& x) override {
    if (!can_encrypt()) throw HarnessError(ind_variant_name(variant_) + ": encryption oracle not granted");
    if (x.size() != scheme_.msg_bits()) throw HarnessError("encryption query has the wrong width");
    return scheme_.enc(x, rng_);
  }

  std::optional<BitString> dec(const Ciphertext& c) override {
    if (!can_decrypt()) {
      throw HarnessError(ind_variant_name(variant_) + ": decryption oracle not granted" +
                         (challenge_ ? " after the challenge" : ""));
    }
    try {
      if (challenge_) return cca2_restricted_dec(scheme_, *challenge_, c);
      return scheme_.dec(c);
    } catch (const DecryptionError&) {
      return std::nullopt;
    }
  }

  void begin_challenge(const Ciphertext& c) { challenge_ = c; }

 private:
  const Skes& scheme_;
  IndVariant variant_;
  Rng rng_;
  std::optional<Ciphertext> challenge_;
};

void check_challenge(const IndChallenge& ch, std::size_t m) {
  if (ch.m0.size() != m || ch.m1.size() != m) throw HarnessError("challenge messages have the wrong width");
}

class EmbeddedClassical : public QcpaAdversary {
 public:
  explicit EmbeddedClassical(std::unique_ptr<IndAdversary> inner) : inner_(std::move(inner)) {}

  IndChallenge choose(QcpaOracle& oracle, Rng& rng) override {
    BasisQueries q(oracle);
    return inner_->choose(q, rng);
  }
  bool guess(QcpaOracle& oracle, const Ciphertext& challenge, Rng& rng) override {
    BasisQueries q(oracle);
    return inner_->guess(q, challenge, rng);
  }

 private:
  class BasisQueries : public IndOracleAccess {
   public:
    explicit BasisQueries(QcpaOracle& o) : o_(o) {}
    std::size_t msg_bits() const override { return o_.msg_bits(); }
    bool can_encrypt() const override { return true; }
    bool can_decrypt() const override { return false; }
    Ciphertext enc(const BitString& x) override {
      std::size_t m = o_.msg_bits();
      std::size_t c = o_.ct_bits();
      StateVector s = StateVector::basis(m + c, x.to_uint() << c);
      StateVector out = o_.query(s, wire_range(0, m), wire_range(m, c));
      auto [y, post] = measure_computational(out, wire_range(m, c), 0.5);
      return o_.parse(y);
    }
    std::optional<BitString> dec(const Ciphertext&) override {
      throw HarnessError("qcpa: decryption oracle not granted");
    }

   private:
    QcpaOracle& o_;
  };

  std::unique_ptr<IndAdversary> inner_;
};

}  // namespace

std::string ind_variant_name(IndVariant v) {
  switch (v) {
    case IndVariant::Ind:
      return "ind";
    case IndVariant::Cpa:
      return "ind-cpa";
    case IndVariant::Cca1:
      return "ind-cca1";
    case IndVariant::Cca2:
      return "ind-cca2";
  }
  return "ind";
}

bool game_ind(const SkesFactory& scheme_factory, IndAdversary& adversary, IndVariant variant, std::uint64_t trial_seed,
              std::optional<bool> forced_b) {
  Rng root(trial_seed);
  bool b = challenge_bit(trial_seed, forced_b);
  Rng key_rng = root.split(1);
  std::unique_ptr<Skes> scheme = scheme_factory(key_rng);
  IndOracles oracles(*scheme, variant, root.split(3));
  Rng adv_rng = root.split(4);

  IndChallenge ch = adversary.choose(oracles, adv_rng);
  check_challenge(ch, scheme->msg_bits());
  Rng chal_rng = root.split(2);
  Ciphertext c = scheme->enc(b ? ch.m1 : ch.m0, chal_rng);
  oracles.begin_challenge(c);
  return adversary.guess(oracles, c, adv_rng) == b;
}

bool game_pq_ind_cpa(const SkesFactory& scheme, IndAdversary& adversary, std::uint64_t trial_seed,
                     std::optional<bool> forced_b) {
  return game_ind(scheme, adversary, IndVariant::Cpa, trial_seed, forced_b);
}

ExperimentResult run_ind(const std::string& game, const SkesFactory& scheme, const IndAdversaryFactory& adversary,
                         IndVariant variant, std::uint64_t trials, std::uint64_t seed, nlohmann::json params) {
  params["variant"] = ind_variant_name(variant);
  return estimate_advantage(
      game,
      [&](std::uint64_t s) {
        auto adv = adversary();
        return game_ind(scheme, *adv, variant, s);
      },
      trials, seed, std::move(params));
}

Permutation type1_query_permutation(const Skes& scheme, const BitString& r) {
  std::size_t m = scheme.msg_bits();
  std::size_t c = scheme.ct_bits();
  std::vector<std::uint64_t> f = encryption_table(scheme, r);
  std::vector<std::uint64_t> fwd(std::uint64_t{1} << (m + c));
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << m); ++x) {
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << c); ++y) fwd[(x << c) | y] = (x << c) | (y ^ f[x]);
  }
  return Permutation(m + c, std::move(fwd));
}

QcpaOracle::QcpaOracle(const Skes& scheme, Rng rng, std::size_t qubit_cap)
    : scheme_(scheme), rng_(std::move(rng)), cap_(qubit_cap) {}

StateVector QcpaOracle::query(const StateVector& s, const std::vector<std::size_t>& x_wires,
                              const std::vector<std::size_t>& y_wires) {
  check_qubit_cap(s.n_qubits(), cap_);
  if (x_wires.size() != msg_bits() || y_wires.size() != ct_bits()) throw HarnessError("qcpa query: register widths");
  std::vector<std::size_t> targets = x_wires;
  targets.insert(targets.end(), y_wires.begin(), y_wires.end());
  ++queries_;
  return apply_basis_permutation(s, type1_query_permutation(scheme_, rng_.bits(scheme_.rand_bits())), targets);
}

bool game_ind_qcpa(const SkesFactory& scheme_factory, QcpaAdversary& adversary, std::uint64_t trial_seed,
                   std::optional<bool> forced_b) {
  Rng root(trial_seed);
  bool b = challenge_bit(trial_seed, forced_b);
  Rng key_rng = root.split(1);
  std::unique_ptr<Skes> scheme = scheme_factory(key_rng);
  QcpaOracle oracle(*scheme, root.split(3));
  Rng adv_rng = root.split(4);

  IndChallenge ch = adversary.choose(oracle, adv_rng);
  check_challenge(ch, scheme->msg_bits());
  Rng chal_rng = root.split(2);
  Ciphertext c = scheme->enc(b ? ch.m1 : ch.m0, chal_rng);
  return adversary.guess(oracle, c, adv_rng) == b;
}

std::unique_ptr<QcpaAdversary> embed_classical(std::unique_ptr<IndAdversary> inner) {
  return std::make_unique<EmbeddedClassical>(std::move(inner));
}

}  // namespace qsec
