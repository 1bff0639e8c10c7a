#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

namespace qsec {

// Raised when an adversary breaks the oracle discipline or a query budget.
class HarnessError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct ExperimentResult {
  std::string game;
  nlohmann::json params = nlohmann::json::object();
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  double advantage = 0.0;
  double ci95 = 0.0;
  std::uint64_t seed = 0;
  double runtime_ms = 0.0;
};

// Win bit of one trial, given the trial's derived seed.
using TrialFn = std::function<bool(std::uint64_t trial_seed)>;

// Trial i runs with mix_seed(seed, i). Trials fan out over `threads` workers
// (0 = hardware concurrency); the result does not depend on the thread count.
ExperimentResult estimate_advantage(const std::string& game, const TrialFn& trial, std::uint64_t trials,
                                    std::uint64_t seed, nlohmann::json params = nlohmann::json::object(),
                                    unsigned threads = 0);

// Runs each trial seed twice with the challenge bit forced to 0 and to 1, so an
// adversary whose guess does not depend on b scores exactly 0. `trial(seed, b)`.
ExperimentResult estimate_paired_advantage(const std::string& game,
                                           const std::function<bool(std::uint64_t, bool)>& trial,
                                           std::uint64_t trials, std::uint64_t seed,
                                           nlohmann::json params = nlohmann::json::object(), unsigned threads = 0);

// 1.96 * sqrt(p (1 - p) / trials); zero at p in {0, 1}.
double ci95_halfwidth(std::uint64_t successes, std::uint64_t trials);
// Standard deviation of the advantage of a fair coin: 1 / (2 sqrt(trials)).
double null_sigma(std::uint64_t trials);
bool within_null(const ExperimentResult& r, double sigmas = 3.0);

nlohmann::json result_to_json(const ExperimentResult& r, bool include_runtime = true);
// Throws std::invalid_argument on missing fields.
ExperimentResult result_from_json(const nlohmann::json& j);
std::string result_csv_header();
std::string result_to_csv_row(const ExperimentResult& r, bool pass);

// Challenge bit of a trial: forced when given, else the first bit of the trial's split(0) stream.
bool challenge_bit(std::uint64_t trial_seed, std::optional<bool> forced);

}  // namespace qsec
