#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <utility>

#include "qsec/games/experiment.hpp"
#include "qsec/qoram/skqes.hpp"
#include "qsec/qsim/circuit.hpp"

namespace qsec {

enum class QindForm { States, Descriptions };

// Challenge plaintexts. Exactly one of the three forms is set.
struct QindChallenge {
  // Unentangled pure arms.
  std::optional<std::pair<StateVector, StateVector>> pure;
  // Joint state on [env (env_qubits), arm 0, arm 1]; both arms have the message width.
  std::optional<DensityMatrix> joint;
  std::size_t env_qubits = 0;
  // Circuit descriptions of the two arms.
  std::optional<std::pair<CircuitDescription, CircuitDescription>> descriptions;

  static QindChallenge states(StateVector a0, StateVector a1);
  static QindChallenge entangled(DensityMatrix joint, std::size_t env_qubits);
  static QindChallenge circuits(CircuitDescription d0, CircuitDescription d1);
  QindForm form() const { return descriptions ? QindForm::Descriptions : QindForm::States; }
};

// What the distinguisher receives: the ciphertext register (with the environment
// in front for joint challenges) and the classical part, if any.
struct QindView {
  std::optional<StateVector> pure;
  std::optional<DensityMatrix> mixed;
  std::size_t env_qubits = 0;
  std::optional<BitString> r;
};

// Encryption oracle of the qcpa variant; every call uses fresh randomness.
class QindOracle {
 public:
  QindOracle(const Skqes& scheme, Rng rng, bool granted) : scheme_(scheme), rng_(std::move(rng)), granted_(granted) {}
  bool granted() const { return granted_; }
  std::size_t msg_qubits() const { return scheme_.msg_qubits(); }
  // Throws HarnessError unless granted.
  QCiphertext enc(const DensityMatrix& rho, std::size_t held = 0);
  QCiphertextPure enc(const StateVector& psi, std::size_t held = 0);

 private:
  const Skqes& scheme_;
  Rng rng_;
  bool granted_;
};

class QindAdversary {
 public:
  virtual ~QindAdversary() = default;
  virtual QindChallenge choose(QindOracle& oracle, Rng& rng) = 0;
  virtual bool guess(QindOracle& oracle, const QindView& view, Rng& rng) = 0;
};

using QindAdversaryFactory = std::function<std::unique_ptr<QindAdversary>()>;

// Encrypts arm b and discards the other. Throws HarnessError on width mismatches.
QindView qind_challenge_output(const Skqes& scheme, const QindChallenge& challenge, bool b, Rng& enc_rng);

// Streams: 0 challenge bit, 1 key, 2 challenge randomness, 3 oracle randomness, 4 adversary coins.
bool game_qind(const SkqesFactory& scheme, QindAdversary& adversary, std::uint64_t trial_seed, bool qcpa = false,
               std::optional<bool> forced_b = std::nullopt);

ExperimentResult run_qind(const std::string& game, const SkqesFactory& scheme, const QindAdversaryFactory& adversary,
                          std::uint64_t trials, std::uint64_t seed, bool qcpa = false,
                          nlohmann::json params = nlohmann::json::object());

}  // namespace qsec
