#include "qsec/games/qind.hpp"

#include "qsec/qsim/gates.hpp"

namespace qsec {

QindChallenge QindChallenge::states(StateVector a0, StateVector a1) {
  QindChallenge c;
  c.pure = std::make_pair(std::move(a0), std::move(a1));
  return c;
}

QindChallenge QindChallenge::entangled(DensityMatrix joint, std::size_t env_qubits) {
  QindChallenge c;
  c.joint = std::move(joint);
  c.env_qubits = env_qubits;
  return c;
}

QindChallenge QindChallenge::circuits(CircuitDescription d0, CircuitDescription d1) {
  QindChallenge c;
  c.descriptions = std::make_pair(std::move(d0), std::move(d1));
  return c;
}

QCiphertext QindOracle::enc(const DensityMatrix& rho, std::size_t held) {
  if (!granted_) throw HarnessError("qind: encryption oracle not granted");
  return scheme_.enc(rho, rng_, held);
}

QCiphertextPure QindOracle::enc(const StateVector& psi, std::size_t held) {
  if (!granted_) throw HarnessError("qind: encryption oracle not granted");
  return scheme_.enc(psi, rng_, held);
}

QindView qind_challenge_output(const Skqes& scheme, const QindChallenge& ch, bool b, Rng& enc_rng) {
  std::size_t m = scheme.msg_qubits();
  int forms = (ch.pure ? 1 : 0) + (ch.joint ? 1 : 0) + (ch.descriptions ? 1 : 0);
  if (forms != 1) throw HarnessError("qind: exactly one challenge form must be set");
  QindView view;
  if (ch.pure) {
    const StateVector& a0 = ch.pure->first;
    const StateVector& a1 = ch.pure->second;
    if (a0.n_qubits() != m || a1.n_qubits() != m) throw HarnessError("qind: plaintext dimensions do not match");
    QCiphertextPure c = scheme.enc(b ? a1 : a0, enc_rng);
    view.pure = std::move(c.state);
    view.r = std::move(c.r);
    return view;
  }
  DensityMatrix arm(1);
  if (ch.joint) {
    std::size_t e = ch.env_qubits;
    if (ch.joint->n_qubits() != e + 2 * m) throw HarnessError("qind: plaintext dimensions do not match");
    std::vector<std::size_t> keep = wire_range(0, e);
    for (std::size_t w : wire_range(b ? e + m : e, m)) keep.push_back(w);
    arm = partial_trace(*ch.joint, keep);
    view.env_qubits = e;
  } else {
    DensityMatrix d0 = build_from_description(ch.descriptions->first);
    DensityMatrix d1 = build_from_description(ch.descriptions->second);
    if (d0.n_qubits() != m || d1.n_qubits() != m) throw HarnessError("qind: plaintext dimensions do not match");
    arm = b ? d1 : d0;
  }
  QCiphertext c = scheme.enc(arm, enc_rng, view.env_qubits);
  view.mixed = std::move(c.state);
  view.r = std::move(c.r);
  return view;
}

bool game_qind(const SkqesFactory& scheme_factory, QindAdversary& adversary, std::uint64_t trial_seed, bool qcpa,
               std::optional<bool> forced_b) {
  Rng root(trial_seed);
  bool b = challenge_bit(trial_seed, forced_b);
  Rng key_rng = root.split(1);
  std::unique_ptr<Skqes> scheme = scheme_factory(key_rng);
  QindOracle oracle(*scheme, root.split(3), qcpa);
  Rng adv_rng = root.split(4);

  QindChallenge ch = adversary.choose(oracle, adv_rng);
  Rng chal_rng = root.split(2);
  QindView view = qind_challenge_output(*scheme, ch, b, chal_rng);
  return adversary.guess(oracle, view, adv_rng) == b;
}

ExperimentResult run_qind(const std::string& game, const SkqesFactory& scheme, const QindAdversaryFactory& adversary,
                          std::uint64_t trials, std::uint64_t seed, bool qcpa, nlohmann::json params) {
  params["qcpa"] = qcpa;
  return estimate_advantage(
      game,
      [&](std::uint64_t s) {
        auto adv = adversary();
        return game_qind(scheme, *adv, s, qcpa);
      },
      trials, seed, std::move(params));
}

}  // namespace qsec
