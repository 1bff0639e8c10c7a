#include "qsec/games/qap.hpp"

namespace qsec {

namespace {

void check_request(const QuantumDataRequest& qdr, std::size_t n_db, std::size_t n_dat) {
  if (qdr.id == 0 || qdr.id > n_db) throw HarnessError("qap: request id " + std::to_string(qdr.id) + " out of range");
  if (qdr.payload && qdr.payload->n_qubits() != n_dat) throw HarnessError("qap: payload width");
}

}  // namespace

QAccessReport QapOracle::access(const QuantumDataRequest& qdr) {
  if (used_ >= budget_) throw HarnessError("qap: query budget exhausted");
  check_request(qdr, client_.n_db, client_.n_dat);
  ++used_;
  QAccessResult res = qoram_access(client_, server_, qdr);
  return extractor_(res.transcript, server_);
}

bool game_qap_ind_cqa(const QapGameConfig& config, QapAdversary& adversary, std::uint64_t trial_seed,
                      std::optional<bool> forced_b) {
  Rng root(trial_seed);
  bool b = challenge_bit(trial_seed, forced_b);
  Rng adv_rng = root.split(4);
  Rng init_rng = root.split(1);
  QoramInstance inst = qoram_init(config.qoram, init_rng);
  QapOracle oracle(inst.client, inst.server, config.extractor, config.q1);

  auto [r0, r1] = adversary.choose(oracle, adv_rng);
  check_request(r0, inst.client.n_db, inst.client.n_dat);
  check_request(r1, inst.client.n_db, inst.client.n_dat);
  QAccessResult res = qoram_access(inst.client, inst.server, b ? r1 : r0);
  QAccessReport report = config.extractor(res.transcript, inst.server);
  oracle.reset_budget(config.q2);
  return adversary.guess(oracle, report, inst.server, adv_rng) == b;
}

ExperimentResult run_qap(const std::string& game, const QapGameConfig& config, const QapAdversaryFactory& adversary,
                         std::uint64_t trials, std::uint64_t seed, nlohmann::json params) {
  return estimate_advantage(
      game,
      [&](std::uint64_t s) {
        auto adv = adversary();
        return game_qap_ind_cqa(config, *adv, s);
      },
      trials, seed, std::move(params));
}

}  // namespace qsec
