#include <doctest.h>

#include <cmath>

#include "qsec/attacks/classical.hpp"
#include "qsec/attacks/qap_distinguishers.hpp"
#include "qsec/games/ap.hpp"
#include "qsec/games/euf.hpp"
#include "qsec/games/ind.hpp"
#include "qsec/games/qap.hpp"
#include "qsec/games/qind.hpp"
#include "qsec/qsim/gates.hpp"

using namespace qsec;

namespace {

// Decrypts its own CPA query after the challenge.
class LateDecryptor : public IndAdversary {
 public:
  IndChallenge choose(IndOracleAccess& o, Rng&) override {
    probe_ = o.enc(BitString::zeros(o.msg_bits()));
    return {BitString::zeros(o.msg_bits()), BitString::ones(o.msg_bits())};
  }
  bool guess(IndOracleAccess& o, const Ciphertext&, Rng&) override { return o.dec(probe_).has_value(); }

 private:
  Ciphertext probe_;
};

// Asks for the challenge ciphertext itself.
class ChallengeDecryptor : public IndAdversary {
 public:
  IndChallenge choose(IndOracleAccess& o, Rng&) override {
    return {BitString::zeros(o.msg_bits()), BitString::ones(o.msg_bits())};
  }
  bool guess(IndOracleAccess& o, const Ciphertext& c, Rng&) override {
    rejected = !o.dec(c).has_value();
    return false;
  }
  bool rejected = false;
};

class FixedQind : public QindAdversary {
 public:
  explicit FixedQind(QindChallenge ch) : ch_(std::move(ch)) {}
  QindChallenge choose(QindOracle&, Rng&) override { return ch_; }
  bool guess(QindOracle&, const QindView& v, Rng& rng) override {
    if (v.pure) return measure_computational(*v.pure, {0}, rng).first[0];
    return measure_computational(*v.mixed, {0}, rng).first[0];
  }

 private:
  QindChallenge ch_;
};

class ApFixed : public ApAdversary {
 public:
  ApFixed(DataRequest a, DataRequest b, std::size_t warmup) : a_(std::move(a)), b_(std::move(b)), warmup_(warmup) {}
  std::size_t choose_n_db(Rng&) override { return 8; }
  std::pair<DataRequest, DataRequest> choose(ApOracle& o, Rng&) override {
    for (std::size_t i = 0; i < warmup_; ++i) o.access(DataRequest::read(1));
    return {a_, b_};
  }
  bool guess(ApOracle&, const AccessPattern& ap, Rng&) override { return (ap.leaf & 1) != 0; }

 private:
  DataRequest a_, b_;
  std::size_t warmup_;
};

class ReplayForger : public Forger {
 public:
  std::pair<std::string, FsSignature> forge(const EufView&, SigningOracle& s, RandomOracle&, Rng&) override {
    return {"other", s.sign("hello")};
  }
};

class ResignForger : public Forger {
 public:
  std::pair<std::string, FsSignature> forge(const EufView&, SigningOracle& s, RandomOracle&, Rng&) override {
    return {"hello", s.sign("hello")};
  }
};

class RandomForger : public Forger {
 public:
  std::pair<std::string, FsSignature> forge(const EufView& v, SigningOracle&, RandomOracle&, Rng& rng) override {
    return {"m", FsSignature{FsForm::Sigma, rng.range(1, v.pk.grp.p - 1), rng.below(v.pk.grp.q)}};
  }
};

class KeyForger : public Forger {
 public:
  explicit KeyForger(FsForm form) : form_(form) {}
  std::pair<std::string, FsSignature> forge(const EufView& v, SigningOracle&, RandomOracle& o, Rng& rng) override {
    const HardInstance& sk = *v.leaked_sk;
    return {"forged", form_ == FsForm::Sigma ? fs_sign(sk, "forged", o, rng) : fs_lambda_sign(sk, "forged", o, rng)};
  }

 private:
  FsForm form_;
};

class GreedySigner : public Forger {
 public:
  std::pair<std::string, FsSignature> forge(const EufView&, SigningOracle& s, RandomOracle&, Rng&) override {
    for (int i = 0; i < 10; ++i) s.sign("m" + std::to_string(i));
    return {"x", FsSignature{}};
  }
};

}  // namespace

TEST_CASE("advantage estimation") {
  ExperimentResult always = estimate_advantage("always", [](std::uint64_t) { return true; }, 100, 1);
  CHECK(always.advantage == 0.5);
  CHECK(always.ci95 == 0.0);
  CHECK(always.successes == 100);

  auto coin = [](std::uint64_t s) { return Rng(s).bit(); };
  ExperimentResult fair = estimate_advantage("coin", coin, 10000, 7);
  CHECK(std::abs(fair.advantage) <= 3 * null_sigma(10000));
  CHECK(within_null(fair));
  ExperimentResult again = estimate_advantage("coin", coin, 10000, 7, {}, 1);
  ExperimentResult threaded = estimate_advantage("coin", coin, 10000, 7, {}, 4);
  CHECK(result_to_json(again, false) == result_to_json(fair, false));
  CHECK(result_to_json(threaded, false) == result_to_json(fair, false));
  CHECK_THROWS_AS(estimate_advantage("x", coin, 0, 1), std::invalid_argument);

  ExperimentResult back = result_from_json(nlohmann::json::parse(result_to_json(fair).dump()));
  CHECK(result_to_json(back) == result_to_json(fair));
  CHECK(result_to_csv_row(always, true) == "always,100,100,0.500000,0.000000,true,1");
  CHECK(result_csv_header() == "experiment,trials,successes,advantage,ci95,pass,seed");
  CHECK_THROWS_AS(result_from_json(nlohmann::json{{"game", "x"}}), std::invalid_argument);

  CHECK(ci95_halfwidth(50, 100) == doctest::Approx(1.96 * 0.05));
}

TEST_CASE("paired advantage is exactly zero for a b-independent guess") {
  ExperimentResult r =
      estimate_paired_advantage("paired", [](std::uint64_t s, bool b) { return Rng(s).bit() == b; }, 500, 3);
  CHECK(r.trials == 1000);
  CHECK(r.advantage == 0.0);
}

TEST_CASE("ind games and oracle discipline") {
  SkesFactory otp = otp_factory(8);
  SkesFactory gold = goldreich_factory(8);
  ExperimentResult guess = run_ind("guess", otp, random_guess_adversary(), IndVariant::Ind, 10000, 11);
  CHECK(within_null(guess));

  LateDecryptor late;
  CHECK_THROWS_AS(game_ind(gold, late, IndVariant::Cca1, 1), HarnessError);
  CHECK_THROWS_AS(game_ind(gold, late, IndVariant::Cpa, 1), HarnessError);
  LateDecryptor late2;
  CHECK_NOTHROW(game_ind(gold, late2, IndVariant::Cca2, 1));
  LateDecryptor late3;
  CHECK_THROWS_AS(game_ind(gold, late3, IndVariant::Ind, 1), HarnessError);

  ChallengeDecryptor cd;
  game_ind(gold, cd, IndVariant::Cca2, 5);
  CHECK(cd.rejected);

  for (std::uint64_t s = 0; s < 50; ++s) {
    auto a = random_guess_adversary()();
    auto b = random_guess_adversary()();
    CHECK(game_pq_ind_cpa(gold, *a, s) == game_ind(gold, *b, IndVariant::Cpa, s));
  }
}

TEST_CASE("qcpa with basis queries reproduces cpa") {
  for (const auto& [name, factory] : {std::make_pair("otp", otp_factory(3)), std::make_pair("gold", goldreich_factory(3))}) {
    for (std::uint64_t s = 0; s < 200; ++s) {
      auto classical = otp_reuse_attack()();
      auto embedded = embed_classical(otp_reuse_attack()());
      CHECK_MESSAGE(game_ind(factory, *classical, IndVariant::Cpa, s) == game_ind_qcpa(factory, *embedded, s), name);
    }
  }
}

TEST_CASE("superposition queries against the Goldreich scheme") {
  SkesFactory gold = goldreich_factory(2, 2, PrfBackend::Ideal);
  ExperimentResult r = estimate_advantage(
      "qcpa",
      [&](std::uint64_t s) {
        auto q = superposition_cpa_adversary()();
        return game_ind_qcpa(gold, *q, s);
      },
      1000, 17);
  CHECK(within_null(r));

  Rng rng(3);
  auto scheme = goldreich_factory(2, 2, PrfBackend::Ideal)(rng);
  Permutation p = type1_query_permutation(*scheme, BitString::from_uint(1, 2));
  StateVector psi = StateVector::basis(8, 0);
  for (std::size_t w = 0; w < 8; ++w) psi = apply_gate(psi, Gate::H, {w});
  psi = apply_gate(psi, Gate::CNOT, {0, 7});
  StateVector targets = apply_basis_permutation(psi, p, wire_range(1, 6));
  StateVector back = apply_basis_permutation(targets, p.inversed(), wire_range(1, 6));
  CHECK(fidelity(back, psi) == doctest::Approx(1.0));
  CHECK(p.inversed().forward() == p.forward());
}

TEST_CASE("qind challenge forms") {
  SkqesFactory lift = lift_factory(goldreich_factory(1, 2, PrfBackend::Ideal));
  Rng rng(4);
  auto scheme = lift(rng);

  StateVector plus = apply_gate(StateVector(2), Gate::H, {0});
  QindChallenge same = QindChallenge::states(plus, plus);
  Rng r0(9), r1(9);
  QindView v0 = qind_challenge_output(*scheme, same, false, r0);
  QindView v1 = qind_challenge_output(*scheme, same, true, r1);
  CHECK(max_abs_diff(v0.pure->amplitudes(), v1.pure->amplitudes()) == 0.0);

  ExperimentResult exact = estimate_paired_advantage(
      "identical",
      [&](std::uint64_t s, bool b) {
        FixedQind a(same);
        return game_qind(lift, a, s, false, b);
      },
      200, 5);
  CHECK(exact.advantage == 0.0);

  // Environment entangled with arm 0.
  StateVector bell = apply_gate(apply_gate(StateVector(5), Gate::H, {0}), Gate::CNOT, {0, 1});
  QindChallenge ent = QindChallenge::entangled(DensityMatrix::pure(bell), 1);
  QindView ve = qind_challenge_output(*scheme, ent, false, rng);
  CHECK(ve.mixed->n_qubits() == 4);
  CHECK(ve.env_qubits == 1);
  DensityMatrix env_only = partial_trace(*ve.mixed, {0});
  CHECK(max_abs_diff(env_only.matrix(), maximally_mixed(1).matrix()) < 1e-10);

  CircuitDescription d0{2, {{"H", {0}, std::nullopt}}, {0, 1}};
  CircuitDescription d1{2, {{"X", {1}, std::nullopt}}, {0, 1}};
  QindView vd = qind_challenge_output(*scheme, QindChallenge::circuits(d0, d1), true, rng);
  CHECK(vd.mixed->n_qubits() == 3);
  CHECK(scheme->dec(QCiphertext{*vd.mixed, std::nullopt}).matrix()(1, 1).real() == doctest::Approx(1.0));

  CHECK_THROWS_AS(qind_challenge_output(*scheme, QindChallenge::states(StateVector(3), plus), false, rng), HarnessError);
  CHECK_THROWS_AS(qind_challenge_output(*scheme, QindChallenge{}, false, rng), HarnessError);

  QindOracle denied(*scheme, Rng(1), false);
  CHECK_THROWS_AS(denied.enc(plus), HarnessError);
  QindOracle granted(*scheme, Rng(1), true);
  CHECK(granted.enc(plus).state.n_qubits() == 3);
}

TEST_CASE("ap game plumbing") {
  ApGameConfig cfg;
  DataRequest r1 = DataRequest::read(3);
  ExperimentResult same = estimate_paired_advantage(
      "ap-identical",
      [&](std::uint64_t s, bool b) {
        ApFixed a(r1, r1, 2);
        return game_ap_ind_cqa(cfg, a, s, b);
      },
      100, 2);
  CHECK(same.advantage == 0.0);

  ApFixed bad(DataRequest::read(0), r1, 0);
  CHECK_THROWS_AS(game_ap_ind_cqa(cfg, bad, 1), HarnessError);
  ApFixed too_far(DataRequest::read(9), r1, 0);
  CHECK_THROWS_AS(game_ap_ind_cqa(cfg, too_far, 1), HarnessError);
  ApGameConfig tight = cfg;
  tight.q1 = 1;
  ApFixed greedy(r1, r1, 2);
  CHECK_THROWS_AS(game_ap_ind_cqa(tight, greedy, 1), HarnessError);
}

TEST_CASE("qap game plumbing") {
  QapGameConfig cfg;
  ExperimentResult same = estimate_paired_advantage(
      "qap-identical",
      [&](std::uint64_t s, bool b) {
        auto a = qap_identical_requests()();
        return game_qap_ind_cqa(cfg, *a, s, b);
      },
      100, 2);
  CHECK(same.advantage == 0.0);
  ExperimentResult tag = run_qap("tag", cfg, qap_tag_only_distinguisher(), 500, 8);
  CHECK(within_null(tag));
}

TEST_CASE("euf-cma harness") {
  for (const SignatureScheme& s : {fs_sigma_scheme(), fs_lambda_scheme()}) {
    ResignForger resign;
    CHECK_FALSE(game_euf_cma(s, resign, 1, 4));
    CHECK(run_euf("replay", s, [] { return std::make_unique<ReplayForger>(); }, 1000, 3, 4).successes == 0);
    CHECK(run_euf("key", s, [&] { return std::make_unique<KeyForger>(s.form); }, 100, 3, 4, true).successes == 100);
    GreedySigner greedy;
    CHECK_THROWS_AS(game_euf_cma(s, greedy, 1, 4), HarnessError);
  }
  CHECK(run_euf("random", fs_sigma_scheme(), [] { return std::make_unique<RandomForger>(); }, 1000, 5, 4).successes == 0);
}
