#include "qsec/games/ap.hpp"

namespace qsec {

namespace {

void check_request(const DataRequest& dr, std::size_t n_db, std::size_t n_dat) {
  if (dr.id == 0 || dr.id > n_db) throw HarnessError("ap: request id " + std::to_string(dr.id) + " out of range");
  if (dr.op == OpKind::Write && (!dr.data || dr.data->size() != n_dat)) throw HarnessError("ap: write data width");
}

}  // namespace

AccessPattern ApOracle::access(const DataRequest& dr) {
  if (used_ >= budget_) throw HarnessError("ap: query budget exhausted");
  check_request(dr, client_.n_db, client_.n_dat);
  ++used_;
  return oram_access(client_, server_, dr).pattern;
}

bool game_ap_ind_cqa(const ApGameConfig& config, ApAdversary& adversary, std::uint64_t trial_seed,
                     std::optional<bool> forced_b) {
  Rng root(trial_seed);
  bool b = challenge_bit(trial_seed, forced_b);
  Rng adv_rng = root.split(4);

  OramConfig oc = config.oram;
  oc.n_db = adversary.choose_n_db(adv_rng);
  if (oc.n_db == 0 || oc.n_db > oc.n_max) throw HarnessError("ap: n_db must be in 1..n_max");
  Rng init_rng = root.split(1);
  OramInstance inst = oram_init(oc, init_rng);
  ApOracle oracle(inst.client, inst.server, config.q1);

  auto [dr0, dr1] = adversary.choose(oracle, adv_rng);
  check_request(dr0, oc.n_db, oc.n_dat);
  check_request(dr1, oc.n_db, oc.n_dat);
  AccessPattern challenge = oram_access(inst.client, inst.server, b ? dr1 : dr0).pattern;
  oracle.reset_budget(config.q2);
  return adversary.guess(oracle, challenge, adv_rng) == b;
}

ExperimentResult run_ap(const std::string& game, const ApGameConfig& config, const ApAdversaryFactory& adversary,
                        std::uint64_t trials, std::uint64_t seed, nlohmann::json params) {
  return estimate_advantage(
      game,
      [&](std::uint64_t s) {
        auto adv = adversary();
        return game_ap_ind_cqa(config, *adv, s);
      },
      trials, seed, std::move(params));
}

}  // namespace qsec
