#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsec/oram/path_oram.hpp"

namespace qsec {

struct TraceEntry {
  DataRequest dr;
  BitString returned;
  std::uint64_t key_fingerprint = 0;
};

struct SoundnessReport {
  std::size_t accesses = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Deterministic function of the client's block key: flatten(Enc(0; 0)).
std::uint64_t key_fingerprint(const ClientState& client);

// Key retention, read-returns-stored-data and write-persists-data against a reference map.
SoundnessReport check_minimal_soundness(const std::vector<TraceEntry>& trace, std::size_t n_dat);

// Pre and post snapshots agree off the accessed path, and the transcript matches both ends.
// Requires snapshots.
bool check_path_locality(const AccessPattern& ap);

// Flips one bit of a stored block's payload.
void flip_block_bit(ServerDB& db, std::size_t node, std::size_t slot, std::size_t bit);

struct SoundnessRun {
  SoundnessReport report;
  std::size_t locality_failures = 0;
  std::size_t max_stash = 0;
};

// Uniformly random reads and writes; every access is checked for path locality.
SoundnessRun run_random_trace(const OramConfig& config, std::size_t accesses, std::uint64_t seed);

}  // namespace qsec
