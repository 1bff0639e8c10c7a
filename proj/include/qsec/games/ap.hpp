#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <utility>

#include "qsec/games/experiment.hpp"
#include "qsec/oram/path_oram.hpp"

namespace qsec {

struct ApGameConfig {
  // n_db is chosen by the adversary; everything else comes from here.
  OramConfig oram;
  std::size_t q1 = 64;
  std::size_t q2 = 64;
};

// Learning-phase access to the ORAM. Throws HarnessError past the phase budget.
class ApOracle {
 public:
  ApOracle(ClientState& client, ServerDB& server, std::size_t budget) : client_(client), server_(server), budget_(budget) {}
  AccessPattern access(const DataRequest& dr);
  std::size_t n_db() const { return client_.n_db; }
  std::size_t n_dat() const { return client_.n_dat; }
  std::size_t n_tree() const { return client_.n_tree; }
  std::size_t used() const { return used_; }
  void reset_budget(std::size_t budget) {
    budget_ = budget;
    used_ = 0;
  }

 private:
  ClientState& client_;
  ServerDB& server_;
  std::size_t budget_;
  std::size_t used_ = 0;
};

class ApAdversary {
 public:
  virtual ~ApAdversary() = default;
  virtual std::size_t choose_n_db(Rng& rng) = 0;
  virtual std::pair<DataRequest, DataRequest> choose(ApOracle& oracle, Rng& rng) = 0;
  virtual bool guess(ApOracle& oracle, const AccessPattern& challenge, Rng& rng) = 0;
};

using ApAdversaryFactory = std::function<std::unique_ptr<ApAdversary>()>;

// Streams: 0 challenge bit, 1 ORAM init, 4 adversary coins. Throws HarnessError on
// invalid challenge requests.
bool game_ap_ind_cqa(const ApGameConfig& config, ApAdversary& adversary, std::uint64_t trial_seed,
                     std::optional<bool> forced_b = std::nullopt);

ExperimentResult run_ap(const std::string& game, const ApGameConfig& config, const ApAdversaryFactory& adversary,
                        std::uint64_t trials, std::uint64_t seed, nlohmann::json params = nlohmann::json::object());

}  // namespace qsec
