#include "qsec/games/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <iomanip>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "qsec/core/rng.hpp"

namespace qsec {

namespace {

// Runs body(i) for i in [0, n) across workers; rethrows the first exception.
void parallel_for(std::uint64_t n, unsigned threads, const std::function<void(std::uint64_t)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(n, 1)));
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto worker = [&]() {
    for (;;) {
      std::uint64_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (error) std::rethrow_exception(error);
}

ExperimentResult finish(const std::string& game, nlohmann::json params, std::uint64_t trials, std::uint64_t wins,
                        std::uint64_t seed, std::chrono::steady_clock::time_point start) {
  ExperimentResult r;
  r.game = game;
  r.params = params.is_null() ? nlohmann::json::object() : std::move(params);
  r.trials = trials;
  r.successes = wins;
  r.advantage = static_cast<double>(wins) / static_cast<double>(trials) - 0.5;
  r.ci95 = ci95_halfwidth(wins, trials);
  r.seed = seed;
  r.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string fixed(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << std::fixed << v;
  return os.str();
}

}  // namespace

ExperimentResult estimate_advantage(const std::string& game, const TrialFn& trial, std::uint64_t trials,
                                    std::uint64_t seed, nlohmann::json params, unsigned threads) {
  if (trials == 0) throw std::invalid_argument("estimate_advantage: trials must be at least 1");
  auto start = std::chrono::steady_clock::now();
  std::vector<char> wins(trials, 0);
  parallel_for(trials, threads, [&](std::uint64_t i) { wins[i] = trial(mix_seed(seed, i)) ? 1 : 0; });
  std::uint64_t total = 0;
  for (char w : wins) total += static_cast<std::uint64_t>(w);
  return finish(game, std::move(params), trials, total, seed, start);
}

ExperimentResult estimate_paired_advantage(const std::string& game,
                                           const std::function<bool(std::uint64_t, bool)>& trial,
                                           std::uint64_t trials, std::uint64_t seed, nlohmann::json params,
                                           unsigned threads) {
  if (trials == 0) throw std::invalid_argument("estimate_paired_advantage: trials must be at least 1");
  auto start = std::chrono::steady_clock::now();
  std::vector<char> wins(2 * trials, 0);
  parallel_for(2 * trials, threads, [&](std::uint64_t i) {
    wins[i] = trial(mix_seed(seed, i / 2), (i % 2) == 1) ? 1 : 0;
  });
  std::uint64_t total = 0;
  for (char w : wins) total += static_cast<std::uint64_t>(w);
  return finish(game, std::move(params), 2 * trials, total, seed, start);
}

double ci95_halfwidth(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return 0.0;
  double p = static_cast<double>(successes) / static_cast<double>(trials);
  return 1.96 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
}

double null_sigma(std::uint64_t trials) { return 0.5 / std::sqrt(static_cast<double>(trials)); }

bool within_null(const ExperimentResult& r, double sigmas) {
  return std::abs(r.advantage) <= sigmas * null_sigma(r.trials);
}

nlohmann::json result_to_json(const ExperimentResult& r, bool include_runtime) {
  nlohmann::json j{{"game", r.game},   {"params", r.params}, {"trials", r.trials}, {"successes", r.successes},
                   {"advantage", r.advantage}, {"ci95", r.ci95}, {"seed", r.seed}};
  if (include_runtime) j["runtime_ms"] = r.runtime_ms;
  return j;
}

ExperimentResult result_from_json(const nlohmann::json& j) {
  try {
    ExperimentResult r;
    r.game = j.at("game").get<std::string>();
    r.params = j.value("params", nlohmann::json::object());
    r.trials = j.at("trials").get<std::uint64_t>();
    r.successes = j.at("successes").get<std::uint64_t>();
    r.advantage = j.at("advantage").get<double>();
    r.ci95 = j.at("ci95").get<double>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.runtime_ms = j.value("runtime_ms", 0.0);
    if (r.successes > r.trials) throw std::invalid_argument("result: successes exceed trials");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("result: ") + e.what());
  }
}

std::string result_csv_header() { return "experiment,trials,successes,advantage,ci95,pass,seed"; }

std::string result_to_csv_row(const ExperimentResult& r, bool pass) {
  std::ostringstream os;
  os << r.game << ',' << r.trials << ',' << r.successes << ',' << fixed(r.advantage) << ',' << fixed(r.ci95) << ','
     << (pass ? "true" : "false") << ',' << r.seed;
  return os.str();
}

bool challenge_bit(std::uint64_t trial_seed, std::optional<bool> forced) {
  if (forced) return *forced;
  return Rng(trial_seed).split(0).bit();
}

}  // namespace qsec
