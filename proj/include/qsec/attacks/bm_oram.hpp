#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "qsec/games/ap.hpp"

namespace qsec {

// Power and discrete-log tables of a primitive root g mod p, p < 2^24.
struct BmTables {
  std::uint64_t p = 0;
  std::uint64_t g = 0;
  // pow[e] = g^e mod p for e in [0, p).
  std::vector<std::uint32_t> pow;
  // log[h] = e with g^e = h, for h in [1, p).
  std::vector<std::uint32_t> log;
};

// Cached per (p, g); safe to call from several threads.
std::shared_ptr<const BmTables> bm_tables(std::uint64_t p, std::uint64_t g);

// Largest prime below 2^20 and its smallest primitive root.
struct BmModulus {
  std::uint64_t p;
  std::uint64_t g;
};
BmModulus bm_default_modulus();

// What the attack saw and concluded, for white-box checks.
struct BmAttackTrace {
  std::vector<std::uint64_t> observed_leaves;
  std::optional<std::uint64_t> recovered_seed;
  std::optional<std::uint64_t> predicted_leaf;
  std::uint64_t other_id = 0;
  bool sanity_passed = false;
  bool guessed_randomly = false;
};

struct BmAttackParams {
  std::uint64_t p = 0;
  std::uint64_t g = 0;
  std::size_t history = 16;
  std::size_t n_db = 16;
  // Public tag width of the target (n_max = 16 gives 5).
  std::size_t n_tag = 5;
  std::uint64_t target_id = 1;
};

// Every state consistent with the observed truncated draws. The candidate is the
// generator state right before draw `first_draw`; leaves are the last n_tree bits
// of each n_tag-bit draw.
std::vector<std::uint64_t> bm_consistent_states(const BmTables& t, const std::vector<std::uint64_t>& leaves,
                                                std::size_t n_tag, std::size_t n_tree);

// Leaves the client draws from seed s0, one per n_tag bits, draws [0, count).
std::vector<std::uint64_t> bm_leaf_draws(const BmTables& t, std::uint64_t s0, std::size_t count, std::size_t n_tag,
                                         std::size_t n_tree);

// Writes the target id `history` times, predicts its next leaf from the leaf history,
// challenges (write target, write other) and guesses 0 iff the challenge leaf is the
// prediction. A post-challenge write of the target checks the guess; on a mismatch
// (or when prediction is impossible) the answer is a coin.
// A given trace is shared by every adversary the factory makes, so pass one only for single trials.
ApAdversaryFactory bm_oram_attack(const BmAttackParams& params, std::shared_ptr<BmAttackTrace> trace = nullptr);

// Challenges (read 1, read 2) and answers the parity of the challenge leaf.
ApAdversaryFactory leaf_parity_adversary(std::size_t n_db = 16);

}  // namespace qsec
