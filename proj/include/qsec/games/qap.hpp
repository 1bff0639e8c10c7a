#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <utility>

#include "qsec/games/experiment.hpp"
#include "qsec/qoram/path_qoram.hpp"

namespace qsec {

struct QapGameConfig {
  QoramConfig qoram;
  std::size_t q1 = 8;
  std::size_t q2 = 8;
  SafeExtractor extractor = safe_extractor_default;
};

class QapOracle {
 public:
  QapOracle(QClient& client, QServer& server, const SafeExtractor& extractor, std::size_t budget)
      : client_(client), server_(server), extractor_(extractor), budget_(budget) {}
  // Throws HarnessError past the phase budget.
  QAccessReport access(const QuantumDataRequest& qdr);
  std::size_t n_db() const { return client_.n_db; }
  std::size_t n_dat() const { return client_.n_dat; }
  std::size_t n_tree() const { return client_.n_tree; }
  void reset_budget(std::size_t budget) {
    budget_ = budget;
    used_ = 0;
  }

 private:
  QClient& client_;
  QServer& server_;
  const SafeExtractor& extractor_;
  std::size_t budget_;
  std::size_t used_ = 0;
};

class QapAdversary {
 public:
  virtual ~QapAdversary() = default;
  virtual std::pair<QuantumDataRequest, QuantumDataRequest> choose(QapOracle& oracle, Rng& rng) = 0;
  // `server` is the server register after the challenge access.
  virtual bool guess(QapOracle& oracle, const QAccessReport& challenge, const QServer& server, Rng& rng) = 0;
};

using QapAdversaryFactory = std::function<std::unique_ptr<QapAdversary>()>;

// Streams: 0 challenge bit, 1 QORAM init, 4 adversary coins. The payload of the
// unchosen request is discarded.
bool game_qap_ind_cqa(const QapGameConfig& config, QapAdversary& adversary, std::uint64_t trial_seed,
                      std::optional<bool> forced_b = std::nullopt);

ExperimentResult run_qap(const std::string& game, const QapGameConfig& config, const QapAdversaryFactory& adversary,
                         std::uint64_t trials, std::uint64_t seed, nlohmann::json params = nlohmann::json::object());

}  // namespace qsec
