#include "qsec/games/euf.hpp"

namespace qsec {

namespace {

class ReplayForger : public Forger {
 public:
  std::pair<std::string, FsSignature> forge(const EufView&, SigningOracle& signer, RandomOracle&, Rng&) override {
    return {"replayed", signer.sign("original")};
  }
};

class RandomForger : public Forger {
 public:
  explicit RandomForger(FsForm form) : form_(form) {}
  std::pair<std::string, FsSignature> forge(const EufView& v, SigningOracle&, RandomOracle&, Rng& rng) override {
    std::uint64_t first = form_ == FsForm::Sigma ? rng.range(1, v.pk.grp.p - 1) : rng.below(v.pk.grp.q);
    return {"fresh", FsSignature{form_, first, rng.below(v.pk.grp.q)}};
  }

 private:
  FsForm form_;
};

}  // namespace

ForgerFactory replay_forger() {
  return [] { return std::make_unique<ReplayForger>(); };
}

ForgerFactory random_forger(FsForm form) {
  return [form] { return std::make_unique<RandomForger>(form); };
}

SignatureScheme fs_sigma_scheme(const SchnorrGroup& grp) { return SignatureScheme{"fs-sigma", grp, FsForm::Sigma}; }

SignatureScheme fs_lambda_scheme(const SchnorrGroup& grp) { return SignatureScheme{"fs-lambda", grp, FsForm::Lambda}; }

FsSignature scheme_sign(const SignatureScheme& s, const HardInstance& sk, const std::string& m, RandomOracle& oracle,
                        Rng& rng) {
  return s.form == FsForm::Sigma ? fs_sign(sk, m, oracle, rng) : fs_lambda_sign(sk, m, oracle, rng);
}

bool scheme_verify(const SignatureScheme& s, const FsPublicKey& pk, const std::string& m, const FsSignature& sig,
                   RandomOracle& oracle) {
  return s.form == FsForm::Sigma ? fs_verify(pk, m, sig, oracle) : fs_lambda_verify(pk, m, sig, oracle);
}

FsSignature SigningOracle::sign(const std::string& m) {
  if (queried_.size() >= budget_ && !queried_.count(m)) throw HarnessError("euf-cma: signing budget q_s exceeded");
  queried_.insert(m);
  return scheme_sign(scheme_, sk_, m, oracle_, rng_);
}

bool game_euf_cma(const SignatureScheme& scheme, Forger& forger, std::uint64_t trial_seed, std::size_t q_s,
                  bool leak_sk) {
  Rng root(trial_seed);
  Rng key_rng = root.split(1);
  FsKeyPair kp = fs_keygen(scheme.grp, key_rng);
  RandomOracle oracle = uniform_oracle(scheme.grp.q, root.split(2).next_u64());
  SigningOracle signer(scheme, kp.sk, oracle, root.split(3), q_s);
  Rng forger_rng = root.split(4);
  EufView view{kp.pk, leak_sk ? std::optional<HardInstance>(kp.sk) : std::nullopt};

  auto [m, sig] = forger.forge(view, signer, oracle, forger_rng);
  if (signer.queried().count(m)) return false;
  return scheme_verify(scheme, kp.pk, m, sig, oracle);
}

ExperimentResult run_euf(const std::string& game, const SignatureScheme& scheme, const ForgerFactory& forger,
                         std::uint64_t trials, std::uint64_t seed, std::size_t q_s, bool leak_sk,
                         nlohmann::json params) {
  params["scheme"] = scheme.name;
  params["q_s"] = q_s;
  return estimate_advantage(
      game,
      [&](std::uint64_t s) {
        auto f = forger();
        return game_euf_cma(scheme, *f, s, q_s, leak_sk);
      },
      trials, seed, std::move(params));
}

}  // namespace qsec
