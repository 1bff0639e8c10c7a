#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>

#include "qsec/core/schemes.hpp"
#include "qsec/games/experiment.hpp"
#include "qsec/qsim/state.hpp"

namespace qsec {

// Ind grants nothing, Cpa grants Enc in both phases, Cca1 adds Dec before the
// challenge, Cca2 adds Dec in both phases refusing the challenge ciphertext.
enum class IndVariant { Ind, Cpa, Cca1, Cca2 };

std::string ind_variant_name(IndVariant v);

// Oracle access handed to an IND adversary.
class IndOracleAccess {
 public:
  virtual ~IndOracleAccess() = default;
  virtual std::size_t msg_bits() const = 0;
  virtual bool can_encrypt() const = 0;
  virtual bool can_decrypt() const = 0;
  // Throws HarnessError when not granted.
  virtual Ciphertext enc(const BitString& x) = 0;
  // nullopt is the reject marker. Throws HarnessError when not granted.
  virtual std::optional<BitString> dec(const Ciphertext& c) = 0;
};

struct IndChallenge {
  BitString m0;
  BitString m1;
};

class IndAdversary {
 public:
  virtual ~IndAdversary() = default;
  // Message generator: learning phase one, then the challenge pair.
  virtual IndChallenge choose(IndOracleAccess& oracles, Rng& rng) = 0;
  // Distinguisher: learning phase two, then the guess.
  virtual bool guess(IndOracleAccess& oracles, const Ciphertext& challenge, Rng& rng) = 0;
};

using IndAdversaryFactory = std::function<std::unique_ptr<IndAdversary>()>;

// One trial. Streams of the trial seed: 0 challenge bit, 1 key, 2 challenge
// randomness, 3 oracle randomness, 4 adversary coins.
bool game_ind(const SkesFactory& scheme, IndAdversary& adversary, IndVariant variant, std::uint64_t trial_seed,
              std::optional<bool> forced_b = std::nullopt);

// Same operationally as the Cpa variant: classical oracles and a classical challenge.
bool game_pq_ind_cpa(const SkesFactory& scheme, IndAdversary& adversary, std::uint64_t trial_seed,
                     std::optional<bool> forced_b = std::nullopt);

ExperimentResult run_ind(const std::string& game, const SkesFactory& scheme, const IndAdversaryFactory& adversary,
                         IndVariant variant, std::uint64_t trials, std::uint64_t seed,
                         nlohmann::json params = nlohmann::json::object());

// ---- quantum CPA: the encryption oracle is a type-1 unitary with fresh randomness per call ----

// |x, y> -> |x, y ^ flatten(Enc(x; r))> on msg_bits + ct_bits wires.
Permutation type1_query_permutation(const Skes& scheme, const BitString& r);

class QcpaOracle {
 public:
  QcpaOracle(const Skes& scheme, Rng rng, std::size_t qubit_cap = kDefaultQubitCap);
  std::size_t msg_bits() const { return scheme_.msg_bits(); }
  std::size_t ct_bits() const { return scheme_.ct_bits(); }
  // Applies the oracle to x_wires (msg_bits) and y_wires (ct_bits) of s.
  StateVector query(const StateVector& s, const std::vector<std::size_t>& x_wires,
                    const std::vector<std::size_t>& y_wires);
  // Public ciphertext layout, for reading measured outputs.
  Ciphertext parse(const BitString& flat) const { return scheme_.parse(flat); }
  std::size_t queries() const { return queries_; }

 private:
  const Skes& scheme_;
  Rng rng_;
  std::size_t cap_;
  std::size_t queries_ = 0;
};

class QcpaAdversary {
 public:
  virtual ~QcpaAdversary() = default;
  virtual IndChallenge choose(QcpaOracle& oracle, Rng& rng) = 0;
  virtual bool guess(QcpaOracle& oracle, const Ciphertext& challenge, Rng& rng) = 0;
};

using QcpaAdversaryFactory = std::function<std::unique_ptr<QcpaAdversary>()>;

// Uses the same trial streams as game_ind.
bool game_ind_qcpa(const SkesFactory& scheme, QcpaAdversary& adversary, std::uint64_t trial_seed,
                   std::optional<bool> forced_b = std::nullopt);

// Runs a classical adversary through basis-state queries: each Enc call prepares
// |x, 0>, queries, and reads y off deterministically.
std::unique_ptr<QcpaAdversary> embed_classical(std::unique_ptr<IndAdversary> inner);

}  // namespace qsec
