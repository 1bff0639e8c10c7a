#include "qsec/oram/path_oram.hpp"

#include <stdexcept>

namespace qsec {

namespace {

constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ULL;
constexpr std::uint64_t kFnvPrime = 0x100000001b3ULL;

void fnv_mix(std::uint64_t& h, const std::string& s) {
  for (unsigned char ch : s) {
    h ^= ch;
    h *= kFnvPrime;
  }
  h ^= 0xff;
  h *= kFnvPrime;
}

Block encrypt_record(ClientState& c, std::uint64_t id, const BitString& data) {
  BitString plain = BitString::from_uint(id, c.n_tag).concat(data);
  return Block{c.scheme->enc(plain, c.enc_rng)};
}

std::optional<Record> decrypt_block(const ClientState& c, const Block& b) {
  BitString plain;
  try {
    plain = c.scheme->dec(b.ct);
  } catch (const std::exception& e) {
    throw OramAbort(std::string("block failed to decrypt: ") + e.what());
  }
  if (plain.size() != c.n_blk()) throw OramAbort("block plaintext has the wrong width");
  std::uint64_t tag = plain.slice(0, c.n_tag).to_uint();
  if (tag > c.n_db) throw OramAbort("block tag " + std::to_string(tag) + " exceeds n_db");
  if (tag == 0) return std::nullopt;
  return Record{tag, plain.slice(c.n_tag, c.n_dat)};
}

std::uint64_t next_leaf(ClientState& c) {
  auto [bits, next] = prng_next_bits(c.prng, c.n_tag);
  c.prng = std::move(next);
  std::uint64_t leaf = truncate_leaf(bits, c.n_tree);
  c.leaf_draws.push_back(leaf);
  return leaf;
}

}  // namespace

PrngFactory blum_micali_prng_factory(std::uint64_t p, std::uint64_t g) {
  validate_blum_micali(p, g, 1);
  return [p, g](Rng& rng) { return make_blum_micali(p, g, rng.range(1, p - 1)); };
}

PrngFactory secure_prng_factory() {
  return [](Rng& rng) { return make_counter_prng(rng.next_u64()); };
}

BlockSchemeFactory goldreich_block_scheme(PrfBackend backend, std::size_t r_bits) {
  return [backend, r_bits](std::size_t n_blk, Rng& rng) -> std::shared_ptr<const Skes> {
    return goldreich_factory(r_bits, n_blk, backend)(rng);
  };
}

std::size_t ceil_log2(std::size_t n) {
  std::size_t k = 0;
  while ((std::size_t{1} << k) < n) ++k;
  return k;
}

std::size_t tag_bits(std::size_t n_max) { return ceil_log2(n_max + 1); }

std::vector<std::size_t> ServerDB::path(std::uint64_t leaf) const {
  if (leaf >= leaf_count()) throw std::out_of_range("leaf index out of range");
  std::vector<std::size_t> nodes(n_tree + 1);
  std::size_t node = leaf_count() - 1 + leaf;
  for (std::size_t d = n_tree + 1; d-- > 0;) {
    nodes[d] = node;
    if (node > 0) node = (node - 1) / 2;
  }
  return nodes;
}

std::uint64_t truncate_leaf(const BitString& prng_output, std::size_t n_tree) {
  if (n_tree > prng_output.size()) throw std::invalid_argument("truncate_leaf: output narrower than the tree");
  if (n_tree == 0) return 0;
  return prng_output.slice(prng_output.size() - n_tree, n_tree).to_uint();
}

OramInstance oram_init(const OramConfig& config, Rng& rng) {
  if (config.n_db == 0) throw std::invalid_argument("oram_init: n_db must be positive");
  if (config.n_db > config.n_max) throw std::invalid_argument("oram_init: n_db exceeds n_max");
  if (config.n_bkt == 0) throw std::invalid_argument("oram_init: n_bkt must be positive");

  OramInstance inst;
  ClientState& c = inst.client;
  c.n_db = config.n_db;
  c.n_tree = ceil_log2(config.n_db);
  c.n_tag = tag_bits(config.n_max);
  c.n_dat = config.n_dat;
  c.n_bkt = config.n_bkt;
  c.snapshots = config.snapshots;
  Rng key_rng = rng.split(1);
  c.scheme = config.block_scheme(c.n_blk(), key_rng);
  Rng prng_rng = rng.split(2);
  c.prng = config.prng(prng_rng);
  c.enc_rng = rng.split(3);
  c.position_map.assign(c.n_db + 1, 0);
  for (std::size_t id = 1; id <= c.n_db; ++id) c.position_map[id] = next_leaf(c);

  ServerDB& s = inst.server;
  s.n_tree = c.n_tree;
  s.n_bkt = c.n_bkt;
  s.buckets.resize((std::size_t{2} << c.n_tree) - 1);
  for (auto& bucket : s.buckets) {
    for (std::size_t j = 0; j < c.n_bkt; ++j) bucket.push_back(encrypt_record(c, 0, BitString::zeros(c.n_dat)));
  }
  return inst;
}

AccessResult oram_access(ClientState& client, ServerDB& server, const DataRequest& dr) {
  if (dr.id == 0 || dr.id > client.n_db) throw std::invalid_argument("oram_access: id out of range");
  if (dr.op == OpKind::Write && (!dr.data || dr.data->size() != client.n_dat)) {
    throw std::invalid_argument("oram_access: write needs n_dat bits of data");
  }

  AccessResult res;
  AccessPattern& ap = res.pattern;
  ap.pre_digest = fnv1a_digest(server);
  if (client.snapshots) ap.pre_db = std::make_shared<const ServerDB>(server);
  if (server.n_tree != client.n_tree || server.n_bkt != client.n_bkt) throw OramAbort("server tree shape mismatch");
  if (server.node_count() != (std::size_t{2} << client.n_tree) - 1) throw OramAbort("server tree has the wrong node count");

  std::uint64_t leaf = client.position_map[dr.id];
  ap.leaf = leaf;
  std::vector<std::size_t> path = server.path(leaf);

  std::vector<Record> work = std::move(client.stash);
  client.stash.clear();
  for (std::size_t node : path) {
    if (server.buckets[node].size() != client.n_bkt) throw OramAbort("bucket has the wrong size");
    for (const Block& b : server.buckets[node]) {
      ap.down.push_back(b.ct.flatten());
      if (auto rec = decrypt_block(client, b)) work.push_back(std::move(*rec));
    }
  }

  client.position_map[dr.id] = next_leaf(client);

  Record* target = nullptr;
  for (auto& r : work) {
    if (r.id != dr.id) continue;
    if (target) throw OramAbort("duplicate block for id " + std::to_string(dr.id));
    target = &r;
  }
  if (!target) {
    work.push_back(Record{dr.id, BitString::zeros(client.n_dat)});
    target = &work.back();
  }
  if (dr.op == OpKind::Write) target->data = *dr.data;
  res.data = target->data;

  std::vector<std::vector<Record>> placed(path.size());
  std::vector<bool> done(work.size(), false);
  for (std::size_t d = path.size(); d-- > 0;) {
    std::size_t shift = client.n_tree - d;
    for (std::size_t i = 0; i < work.size() && placed[d].size() < client.n_bkt; ++i) {
      if (done[i]) continue;
      if ((client.position_map[work[i].id] >> shift) == (leaf >> shift)) {
        placed[d].push_back(work[i]);
        done[i] = true;
      }
    }
  }
  for (std::size_t i = 0; i < work.size(); ++i) {
    if (!done[i]) client.stash.push_back(work[i]);
  }

  for (std::size_t d = 0; d < path.size(); ++d) {
    std::vector<Block> bucket;
    for (const Record& r : placed[d]) bucket.push_back(encrypt_record(client, r.id, r.data));
    while (bucket.size() < client.n_bkt) bucket.push_back(encrypt_record(client, 0, BitString::zeros(client.n_dat)));
    for (const Block& b : bucket) ap.up.push_back(b.ct.flatten());
    server.buckets[path[d]] = std::move(bucket);
  }
  ap.post_digest = fnv1a_digest(server);
  if (client.snapshots) ap.post_db = std::make_shared<const ServerDB>(server);
  res.stash_size = client.stash.size();
  client.stash_log.push_back(res.stash_size);
  return res;
}

std::uint64_t fnv1a_digest(const ServerDB& db) {
  std::uint64_t h = kFnvOffset;
  for (const auto& bucket : db.buckets) {
    for (const Block& b : bucket) fnv_mix(h, b.ct.flatten().to_hex());
    fnv_mix(h, "|");
  }
  return h;
}

nlohmann::json access_pattern_to_json(const AccessPattern& ap) {
  nlohmann::json down = nlohmann::json::array();
  nlohmann::json up = nlohmann::json::array();
  for (const auto& b : ap.down) down.push_back(b.to_hex());
  for (const auto& b : ap.up) up.push_back(b.to_hex());
  return {{"leaf", ap.leaf}, {"down", down}, {"up", up}, {"pre_digest", ap.pre_digest}, {"post_digest", ap.post_digest}};
}

nlohmann::json data_request_to_json(const DataRequest& dr) {
  nlohmann::json j{{"op", dr.op == OpKind::Read ? "read" : "write"}, {"id", dr.id}};
  if (dr.data) j["data"] = dr.data->to_hex();
  return j;
}

}  // namespace qsec
