#include "qsec/oram/soundness.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qsec {

std::uint64_t key_fingerprint(const ClientState& client) {
  const Skes& s = *client.scheme;
  BitString probe = s.enc_with(BitString::zeros(s.msg_bits()), BitString::zeros(s.rand_bits())).flatten();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::size_t i = 0; i < probe.size(); ++i) {
    h ^= probe[i] ? 0x31U : 0x30U;
    h *= 0x100000001b3ULL;
  }
  return h;
}

SoundnessReport check_minimal_soundness(const std::vector<TraceEntry>& trace, std::size_t n_dat) {
  SoundnessReport rep;
  rep.accesses = trace.size();
  std::map<std::uint64_t, BitString> stored;
  for (std::size_t t = 0; t < trace.size(); ++t) {
    const TraceEntry& e = trace[t];
    std::string where = "access " + std::to_string(t) + " (id " + std::to_string(e.dr.id) + ")";
    if (t > 0 && e.key_fingerprint != trace[0].key_fingerprint) rep.violations.push_back(where + ": key changed");
    if (e.dr.op == OpKind::Write) {
      stored[e.dr.id] = *e.dr.data;
      if (e.returned != *e.dr.data) rep.violations.push_back(where + ": write did not persist");
    } else {
      auto it = stored.find(e.dr.id);
      BitString want = it == stored.end() ? BitString::zeros(n_dat) : it->second;
      if (e.returned != want) {
        rep.violations.push_back(where + ": read returned " + e.returned.to_hex() + ", stored " + want.to_hex());
      }
    }
  }
  return rep;
}

bool check_path_locality(const AccessPattern& ap) {
  if (!ap.pre_db || !ap.post_db) throw std::invalid_argument("check_path_locality: snapshots missing");
  const ServerDB& pre = *ap.pre_db;
  const ServerDB& post = *ap.post_db;
  if (pre.node_count() != post.node_count()) return false;
  std::vector<std::size_t> path = pre.path(ap.leaf);
  std::set<std::size_t> on_path(path.begin(), path.end());
  for (std::size_t node = 0; node < pre.node_count(); ++node) {
    if (!on_path.count(node) && pre.buckets[node] != post.buckets[node]) return false;
  }
  std::size_t k = 0;
  for (std::size_t node : path) {
    for (std::size_t j = 0; j < pre.n_bkt; ++j, ++k) {
      if (k >= ap.down.size() || k >= ap.up.size()) return false;
      if (pre.buckets[node][j].ct.flatten() != ap.down[k]) return false;
      if (post.buckets[node][j].ct.flatten() != ap.up[k]) return false;
    }
  }
  return k == ap.down.size() && k == ap.up.size();
}

void flip_block_bit(ServerDB& db, std::size_t node, std::size_t slot, std::size_t bit) {
  BitString& payload = db.buckets.at(node).at(slot).ct.payload;
  payload.set(bit, !payload.at(bit));
}

SoundnessRun run_random_trace(const OramConfig& config, std::size_t accesses, std::uint64_t seed) {
  Rng rng(seed);
  Rng init_rng = rng.split(0);
  OramInstance inst = oram_init(config, init_rng);
  Rng req_rng = rng.split(1);
  SoundnessRun run;
  std::vector<TraceEntry> trace;
  trace.reserve(accesses);
  for (std::size_t t = 0; t < accesses; ++t) {
    std::uint64_t id = req_rng.range(1, config.n_db);
    DataRequest dr = req_rng.bit() ? DataRequest::write(id, req_rng.bits(config.n_dat)) : DataRequest::read(id);
    AccessResult res = oram_access(inst.client, inst.server, dr);
    if (config.snapshots && !check_path_locality(res.pattern)) ++run.locality_failures;
    run.max_stash = std::max(run.max_stash, res.stash_size);
    trace.push_back(TraceEntry{dr, res.data, key_fingerprint(inst.client)});
  }
  run.report = check_minimal_soundness(trace, config.n_dat);
  return run;
}

}  // namespace qsec
