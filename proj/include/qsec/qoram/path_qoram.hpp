#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <json.hpp>

#include "qsec/core/prng.hpp"
#include "qsec/oram/path_oram.hpp"
#include "qsec/qoram/skqes.hpp"

namespace qsec {

struct QoramConfig {
  std::size_t n_db = 2;
  // Defaults to n_db when zero.
  std::size_t n_max = 0;
  std::size_t n_dat = 1;
  std::size_t n_bkt = 2;
  // Stash slots, all initially empty. Defaults to n_db when zero.
  std::size_t n_stash = 0;
  // Total simulated qubits across tree and stash.
  std::size_t qubit_budget = 256;
  PrngFactory prng = secure_prng_factory();
};

// Encrypted block: QOTP of |tag, data> under the pad F_k(r).
struct QBlock {
  StateVector state;
  BitString r;
};

struct QServer {
  std::size_t n_tree = 0;
  std::size_t n_bkt = 0;
  std::vector<std::vector<QBlock>> buckets;

  std::size_t node_count() const { return buckets.size(); }
  std::vector<std::size_t> path(std::uint64_t leaf) const;
};

// Decrypted block held by the client. id 0 is an empty block.
struct QRecord {
  std::uint64_t id = 0;
  StateVector data;
};

struct QClient {
  std::size_t n_db = 0;
  std::size_t n_tree = 0;
  std::size_t n_tag = 0;
  std::size_t n_dat = 0;
  std::size_t n_bkt = 0;
  Skqes1Key key;
  std::vector<std::uint64_t> position_map;
  std::vector<QRecord> stash;
  PrngState prng;
  Rng enc_rng;
  Rng meas_rng;

  std::size_t n_blk() const { return n_tag + n_dat; }
};

struct QuantumDataRequest {
  OpKind op = OpKind::Read;
  std::uint64_t id = 1;
  // Absent for reads; the client then swaps in |0...0>.
  std::optional<StateVector> payload;

  static QuantumDataRequest read(std::uint64_t id) { return {OpKind::Read, id, std::nullopt}; }
  static QuantumDataRequest write(std::uint64_t id, StateVector payload) { return {OpKind::Write, id, std::move(payload)}; }
};

// What crosses the channel during one access.
struct QTranscript {
  std::uint64_t leaf = 0;
  std::vector<QBlock> down;
  std::vector<QBlock> up;
};

struct QAccessResult {
  QTranscript transcript;
  // Register the client holds after the swap.
  StateVector payload;
  // Tag outcomes the client measured, branch order.
  std::vector<std::uint64_t> measured_tags;
};

struct QoramInstance {
  QClient client;
  QServer server;
};

// Throws std::invalid_argument on n_db > n_max or an exceeded qubit budget.
QoramInstance qoram_init(const QoramConfig& config, Rng& rng);
// Throws OramAbort if a measured tag exceeds n_db.
QAccessResult qoram_access(QClient& client, QServer& server, const QuantumDataRequest& qdr);

// Plaintext of a block as the client would see it; for tests and white-box checks.
StateVector qoram_decrypt_block(const QClient& client, const QBlock& block);
std::size_t qoram_qubit_count(const QClient& client, const QServer& server);

// Hash of a block's density matrix with entries rounded to 1e-9.
std::uint64_t block_digest(const QBlock& block);

struct QAccessReport {
  std::uint64_t leaf = 0;
  std::vector<std::string> down_r;
  std::vector<std::string> up_r;
  std::vector<std::uint64_t> down_digest;
  std::vector<std::uint64_t> up_digest;

  bool operator==(const QAccessReport&) const = default;
};

using SafeExtractor = std::function<QAccessReport(const QTranscript&, const QServer&)>;

// Copies the classical channel contents and block digests; acts as the identity on every register.
QAccessReport safe_extractor_default(const QTranscript& transcript, const QServer& server);
nlohmann::json qaccess_report_to_json(const QAccessReport& report);

}  // namespace qsec
