#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsec/core/prng.hpp"
#include "qsec/core/rng.hpp"
#include "qsec/core/schemes.hpp"

namespace qsec {

class OramAbort : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using PrngFactory = std::function<PrngState(Rng&)>;
// Block encryption scheme for n_blk-bit plaintexts.
using BlockSchemeFactory = std::function<std::shared_ptr<const Skes>(std::size_t n_blk, Rng&)>;

// Blum-Micali over (p, g) with a uniform seed in [1, p).
PrngFactory blum_micali_prng_factory(std::uint64_t p, std::uint64_t g);
PrngFactory secure_prng_factory();
// Goldreich scheme with r_bits of encryption randomness per block.
BlockSchemeFactory goldreich_block_scheme(PrfBackend backend = PrfBackend::Ideal, std::size_t r_bits = 32);

struct OramConfig {
  std::size_t n_db = 8;
  std::size_t n_max = 16;
  std::size_t n_dat = 4;
  std::size_t n_bkt = 4;
  PrngFactory prng = secure_prng_factory();
  BlockSchemeFactory block_scheme = goldreich_block_scheme();
  // Keeps full pre/post tree copies in every AccessPattern.
  bool snapshots = true;
};

// ceil(log2(n)), with n_tree(1) = 0.
std::size_t ceil_log2(std::size_t n);
// Width of the id tag; tag 0 marks an empty block, so ids 1..n_max need ceil(log2(n_max + 1)) bits.
std::size_t tag_bits(std::size_t n_max);

struct Block {
  Ciphertext ct;
  bool operator==(const Block&) const = default;
};

// Heap-ordered tree: node 0 is the root, children of i are 2i+1 and 2i+2.
struct ServerDB {
  std::size_t n_tree = 0;
  std::size_t n_bkt = 0;
  std::vector<std::vector<Block>> buckets;

  std::size_t node_count() const { return buckets.size(); }
  std::size_t leaf_count() const { return std::size_t{1} << n_tree; }
  // Root-first node indices of the path to `leaf`.
  std::vector<std::size_t> path(std::uint64_t leaf) const;
  bool operator==(const ServerDB&) const = default;
};

struct Record {
  std::uint64_t id = 0;
  BitString data;
  bool operator==(const Record&) const = default;
};

struct ClientState {
  std::size_t n_db = 0;
  std::size_t n_tree = 0;
  std::size_t n_tag = 0;
  std::size_t n_dat = 0;
  std::size_t n_bkt = 0;
  bool snapshots = true;
  std::shared_ptr<const Skes> scheme;
  // position_map[id] for id in 1..n_db; entry 0 unused.
  std::vector<std::uint64_t> position_map;
  std::vector<Record> stash;
  PrngState prng;
  Rng enc_rng;
  std::vector<std::size_t> stash_log;
  // Every leaf value the client drew from its PRNG, in order.
  std::vector<std::uint64_t> leaf_draws;

  std::size_t n_blk() const { return n_tag + n_dat; }
};

enum class OpKind { Read, Write };

struct DataRequest {
  OpKind op = OpKind::Read;
  std::uint64_t id = 1;
  std::optional<BitString> data;

  static DataRequest read(std::uint64_t id) { return {OpKind::Read, id, std::nullopt}; }
  static DataRequest write(std::uint64_t id, BitString data) { return {OpKind::Write, id, std::move(data)}; }
  bool operator==(const DataRequest&) const = default;
};

struct AccessPattern {
  std::uint64_t leaf = 0;
  std::vector<BitString> down;
  std::vector<BitString> up;
  std::uint64_t pre_digest = 0;
  std::uint64_t post_digest = 0;
  std::shared_ptr<const ServerDB> pre_db;
  std::shared_ptr<const ServerDB> post_db;
};

struct AccessResult {
  AccessPattern pattern;
  // Data held by the client for dr.id after the access.
  BitString data;
  std::size_t stash_size = 0;
};

struct OramInstance {
  ClientState client;
  ServerDB server;
};

// Throws std::invalid_argument if n_db > n_max or n_db == 0.
OramInstance oram_init(const OramConfig& config, Rng& rng);
// Throws OramAbort if a downloaded block does not decrypt to a valid tag.
AccessResult oram_access(ClientState& client, ServerDB& server, const DataRequest& dr);

std::uint64_t truncate_leaf(const BitString& prng_output, std::size_t n_tree);
std::uint64_t fnv1a_digest(const ServerDB& db);
nlohmann::json access_pattern_to_json(const AccessPattern& ap);
nlohmann::json data_request_to_json(const DataRequest& dr);

}  // namespace qsec
