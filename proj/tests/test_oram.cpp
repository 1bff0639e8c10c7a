#include <doctest.h>

#include <cmath>
#include <set>

#include "qsec/core/numtheory.hpp"
#include "qsec/oram/path_oram.hpp"
#include "qsec/oram/soundness.hpp"

using namespace qsec;

namespace {

OramConfig small_config(std::size_t n_db) {
  OramConfig c;
  c.n_db = n_db;
  return c;
}

}  // namespace

TEST_CASE("init shape and zero blocks") {
  Rng rng(1);
  OramInstance inst = oram_init(small_config(8), rng);
  CHECK(inst.client.n_tree == 3);
  CHECK(inst.server.node_count() == 15);
  CHECK(inst.client.n_tag == 5);
  for (const auto& bucket : inst.server.buckets) {
    CHECK(bucket.size() == 4);
    for (const Block& b : bucket) CHECK(inst.client.scheme->dec(b.ct).all_zero());
  }
  for (std::size_t id = 1; id <= 8; ++id) CHECK(inst.client.position_map[id] < 8);

  Rng a(99), b(99);
  CHECK(oram_init(small_config(8), a).client.position_map == oram_init(small_config(8), b).client.position_map);

  OramConfig too_big = small_config(17);
  CHECK_THROWS_AS(oram_init(too_big, rng), std::invalid_argument);
  CHECK(tag_bits(16) == 5);
  CHECK(tag_bits(2) == 2);
  CHECK(ceil_log2(1) == 0);
  CHECK(ceil_log2(16) == 4);
}

TEST_CASE("server path indices") {
  ServerDB db;
  db.n_tree = 2;
  db.buckets.resize(7);
  CHECK(db.path(0) == std::vector<std::size_t>{0, 1, 3});
  CHECK(db.path(3) == std::vector<std::size_t>{0, 2, 6});
  CHECK_THROWS(db.path(4));
  CHECK(truncate_leaf(BitString::from_binary("10110"), 3) == 0b110);
}

TEST_CASE("read and write round trip") {
  Rng rng(2);
  OramInstance inst = oram_init(small_config(8), rng);
  BitString d = BitString::from_binary("1011");
  oram_access(inst.client, inst.server, DataRequest::write(3, d));
  CHECK(oram_access(inst.client, inst.server, DataRequest::read(3)).data == d);
  CHECK(oram_access(inst.client, inst.server, DataRequest::read(5)).data.all_zero());
  CHECK_THROWS(oram_access(inst.client, inst.server, DataRequest::read(9)));
  CHECK_THROWS(oram_access(inst.client, inst.server, DataRequest::write(1, BitString::zeros(3))));
}

TEST_CASE("remapped leaf is the next truncated PRNG output") {
  Rng rng(3);
  OramInstance inst = oram_init(small_config(8), rng);
  for (int i = 0; i < 20; ++i) {
    std::uint64_t id = static_cast<std::uint64_t>(i % 8) + 1;
    PrngState before = inst.client.prng;
    oram_access(inst.client, inst.server, DataRequest::read(id));
    auto [bits, after] = prng_next_bits(before, inst.client.n_tag);
    CHECK(inst.client.position_map[id] == truncate_leaf(bits, inst.client.n_tree));
  }
}

TEST_CASE("blum-micali instantiation draws leaves from consecutive generator outputs") {
  std::uint64_t p = 1019, g = nt::smallest_primitive_root(p);
  OramConfig c = small_config(16);
  c.prng = blum_micali_prng_factory(p, g);
  Rng rng(4);
  OramInstance inst = oram_init(c, rng);
  PrngState st = c.prng(*std::make_unique<Rng>(rng.split(2)));
  for (std::size_t id = 1; id <= 16; ++id) {
    auto [bits, next] = prng_next_bits(st, 5);
    st = next;
    CHECK(inst.client.position_map[id] == truncate_leaf(bits, 4));
  }
}

TEST_CASE("honest random trace is sound and path-local") {
  SoundnessRun run = run_random_trace(small_config(8), 100, 5);
  CHECK(run.report.ok());
  CHECK(run.report.accesses == 100);
  CHECK(run.locality_failures == 0);
}

TEST_CASE("fault injection is reported") {
  Rng rng(6);
  OramInstance inst = oram_init(small_config(8), rng);
  std::vector<TraceEntry> trace;
  auto step = [&](const DataRequest& dr) {
    AccessResult r = oram_access(inst.client, inst.server, dr);
    trace.push_back(TraceEntry{dr, r.data, key_fingerprint(inst.client)});
  };
  std::uint64_t victim = 0;
  std::size_t node = 0, slot = 0;
  for (std::uint64_t id = 1; id <= 8 && victim == 0; ++id) {
    step(DataRequest::write(id, BitString::from_binary("0101")));
    for (std::size_t n = 0; n < inst.server.node_count() && victim == 0; ++n) {
      for (std::size_t s = 0; s < inst.server.n_bkt; ++s) {
        BitString plain = inst.client.scheme->dec(inst.server.buckets[n][s].ct);
        if (plain.slice(0, inst.client.n_tag).to_uint() == id) {
          victim = id;
          node = n;
          slot = s;
          break;
        }
      }
    }
  }
  REQUIRE(victim != 0);
  flip_block_bit(inst.server, node, slot, inst.client.n_tag + 1);
  step(DataRequest::read(victim));
  SoundnessReport rep = check_minimal_soundness(trace, 4);
  CHECK_FALSE(rep.ok());
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].find("read returned") != std::string::npos);
}

TEST_CASE("malformed block aborts the access") {
  Rng rng(7);
  OramInstance inst = oram_init(small_config(8), rng);
  std::uint64_t leaf = inst.client.position_map[1];
  flip_block_bit(inst.server, inst.server.path(leaf)[0], 0, 0);
  CHECK_THROWS_AS(oram_access(inst.client, inst.server, DataRequest::read(1)), OramAbort);
}

TEST_CASE("interleaved writes and reads over 50 ids") {
  OramConfig c = small_config(50);
  c.n_max = 64;
  c.n_dat = 6;
  Rng rng(8);
  OramInstance inst = oram_init(c, rng);
  std::vector<TraceEntry> trace;
  for (std::uint64_t id = 1; id <= 50; ++id) {
    for (const DataRequest& dr : {DataRequest::write(id, BitString::from_uint(id, 6)), DataRequest::read(id)}) {
      AccessResult r = oram_access(inst.client, inst.server, dr);
      trace.push_back(TraceEntry{dr, r.data, key_fingerprint(inst.client)});
    }
  }
  CHECK(check_minimal_soundness(trace, 6).ok());
}

TEST_CASE("uploaded ciphertexts are fresh") {
  Rng rng(9);
  OramInstance inst = oram_init(small_config(8), rng);
  Rng req(10);
  std::size_t collisions = 0;
  for (int t = 0; t < 1000; ++t) {
    AccessResult r = oram_access(inst.client, inst.server, DataRequest::read(req.range(1, 8)));
    std::set<BitString> down(r.pattern.down.begin(), r.pattern.down.end());
    for (const auto& u : r.pattern.up) collisions += down.count(u);
  }
  CHECK(collisions == 0);
}

TEST_CASE("stash occupancy stays small") {
  OramConfig c = small_config(64);
  c.n_max = 64;
  c.snapshots = false;
  SoundnessRun run = run_random_trace(c, 10000, 11);
  CHECK(run.report.ok());
  MESSAGE("max stash over 10^4 accesses at n_db=64: " << run.max_stash);
  WARN(run.max_stash <= 4 * 6);
}

TEST_CASE("fresh-id leaves are uniform under a random generator") {
  OramConfig c = small_config(8);
  c.n_bkt = 1;
  c.snapshots = false;
  std::vector<double> counts(8, 0.0);
  const int trials = 10000;
  for (int t = 0; t < trials; ++t) {
    Rng rng(mix_seed(12, static_cast<std::uint64_t>(t)));
    OramInstance inst = oram_init(c, rng);
    counts[oram_access(inst.client, inst.server, DataRequest::read(1)).pattern.leaf] += 1;
  }
  double chi2 = 0;
  for (double k : counts) chi2 += (k - trials / 8.0) * (k - trials / 8.0) / (trials / 8.0);
  CHECK(chi2 < 24.32);
}

TEST_CASE("access pattern json") {
  Rng rng(13);
  OramInstance inst = oram_init(small_config(4), rng);
  AccessResult r = oram_access(inst.client, inst.server, DataRequest::read(2));
  nlohmann::json j = access_pattern_to_json(r.pattern);
  CHECK(j["leaf"] == r.pattern.leaf);
  CHECK(j["down"].size() == 3 * 4);
  CHECK(j["pre_digest"] != j["post_digest"]);
  CHECK(data_request_to_json(DataRequest::write(1, BitString::from_binary("1111")))["data"] == "f");
}
