#include "qsec/qoram/path_qoram.hpp"

#include <cmath>
#include <stdexcept>

#include "qsec/qsim/gates.hpp"

namespace qsec {

namespace {

QBlock encrypt_block(QClient& c, std::uint64_t id, const StateVector& data) {
  StateVector plain = StateVector::basis(c.n_tag, id).tensor(data);
  QCiphertextPure ct = skqes1_enc(c.key, plain, c.enc_rng.bits(2 * c.n_blk()));
  return QBlock{std::move(ct.state), *ct.r};
}

// Measures the tag wires and splits the block into (tag, data).
QRecord open_block(QClient& c, const QBlock& b) {
  StateVector plain = skqes1_dec(c.key, QCiphertextPure{b.state, b.r});
  auto [tag_bits, post] = measure_computational(plain, wire_range(0, c.n_tag), c.meas_rng);
  std::uint64_t tag = tag_bits.to_uint();
  if (tag > c.n_db) throw OramAbort("measured tag " + std::to_string(tag) + " exceeds n_db");
  std::uint64_t data_dim = std::uint64_t{1} << c.n_dat;
  Vector data(static_cast<Eigen::Index>(data_dim));
  for (std::uint64_t d = 0; d < data_dim; ++d) data(static_cast<Eigen::Index>(d)) = post[(tag << c.n_dat) | d];
  return QRecord{tag, StateVector::from_amplitudes_unchecked(std::move(data))};
}

std::uint64_t next_leaf(QClient& c) {
  auto [bits, next] = prng_next_bits(c.prng, c.n_tag);
  c.prng = std::move(next);
  return truncate_leaf(bits, c.n_tree);
}

void fnv(std::uint64_t& h, std::int64_t v) {
  for (int i = 0; i < 8; ++i) {
    h ^= static_cast<std::uint64_t>(v >> (8 * i)) & 0xffU;
    h *= 0x100000001b3ULL;
  }
}

}  // namespace

std::vector<std::size_t> QServer::path(std::uint64_t leaf) const {
  ServerDB shape;
  shape.n_tree = n_tree;
  return shape.path(leaf);
}

QoramInstance qoram_init(const QoramConfig& config, Rng& rng) {
  std::size_t n_max = config.n_max == 0 ? config.n_db : config.n_max;
  if (config.n_db == 0 || config.n_db > n_max) throw std::invalid_argument("qoram_init: n_db must be in 1..n_max");
  if (config.n_bkt == 0) throw std::invalid_argument("qoram_init: n_bkt must be positive");

  QoramInstance inst;
  QClient& c = inst.client;
  c.n_db = config.n_db;
  c.n_tree = ceil_log2(config.n_db);
  c.n_tag = tag_bits(n_max);
  c.n_dat = config.n_dat;
  c.n_bkt = config.n_bkt;
  check_qubit_cap(c.n_blk());
  std::size_t nodes = (std::size_t{2} << c.n_tree) - 1;
  std::size_t n_stash = config.n_stash == 0 ? config.n_db : config.n_stash;
  if ((nodes * c.n_bkt + n_stash) * c.n_blk() > config.qubit_budget) {
    throw std::invalid_argument("qoram_init: qubit budget exceeded");
  }

  Rng key_rng = rng.split(1);
  c.key = skqes1_keygen(c.n_blk(), key_rng);
  Rng prng_rng = rng.split(2);
  c.prng = config.prng(prng_rng);
  c.enc_rng = rng.split(3);
  c.meas_rng = rng.split(4);
  c.position_map.assign(c.n_db + 1, 0);
  for (std::size_t id = 1; id <= c.n_db; ++id) c.position_map[id] = next_leaf(c);
  for (std::size_t i = 0; i < n_stash; ++i) c.stash.push_back(QRecord{0, StateVector(c.n_dat)});

  QServer& s = inst.server;
  s.n_tree = c.n_tree;
  s.n_bkt = c.n_bkt;
  s.buckets.resize(nodes);
  for (auto& bucket : s.buckets) {
    for (std::size_t j = 0; j < c.n_bkt; ++j) bucket.push_back(encrypt_block(c, 0, StateVector(c.n_dat)));
  }
  return inst;
}

QAccessResult qoram_access(QClient& client, QServer& server, const QuantumDataRequest& qdr) {
  if (qdr.id == 0 || qdr.id > client.n_db) throw std::invalid_argument("qoram_access: id out of range");
  StateVector payload = qdr.payload ? *qdr.payload : StateVector(client.n_dat);
  if (payload.n_qubits() != client.n_dat) throw std::invalid_argument("qoram_access: payload width mismatch");

  QAccessResult res;
  std::uint64_t leaf = client.position_map[qdr.id];
  res.transcript.leaf = leaf;
  std::vector<std::size_t> path = server.path(leaf);

  std::vector<QRecord> pool = std::move(client.stash);
  client.stash.clear();
  std::size_t n_stash = pool.size();
  for (std::size_t node : path) {
    for (const QBlock& b : server.buckets[node]) {
      res.transcript.down.push_back(b);
      QRecord rec = open_block(client, b);
      res.measured_tags.push_back(rec.id);
      pool.push_back(std::move(rec));
    }
  }

  client.position_map[qdr.id] = next_leaf(client);

  QRecord* target = nullptr;
  for (auto& r : pool) {
    if (r.id != qdr.id) continue;
    if (target) throw OramAbort("duplicate block for id " + std::to_string(qdr.id));
    target = &r;
  }
  if (!target) {
    for (auto& r : pool) {
      if (r.id == 0) {
        target = &r;
        target->id = qdr.id;
        break;
      }
    }
    if (!target) throw OramAbort("no empty block available for id " + std::to_string(qdr.id));
  }
  std::swap(target->data, payload);
  res.payload = std::move(payload);

  std::vector<std::vector<std::size_t>> placed(path.size());
  std::vector<bool> done(pool.size(), false);
  for (std::size_t d = path.size(); d-- > 0;) {
    std::size_t shift = client.n_tree - d;
    for (std::size_t i = 0; i < pool.size() && placed[d].size() < client.n_bkt; ++i) {
      if (done[i] || pool[i].id == 0) continue;
      if ((client.position_map[pool[i].id] >> shift) == (leaf >> shift)) {
        placed[d].push_back(i);
        done[i] = true;
      }
    }
  }
  for (std::size_t i = 0; i < pool.size() && client.stash.size() < n_stash; ++i) {
    if (!done[i] && pool[i].id != 0) {
      client.stash.push_back(std::move(pool[i]));
      done[i] = true;
    }
  }
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (!done[i] && pool[i].id != 0) throw OramAbort("quantum stash overflow");
  }
  std::size_t next_empty = 0;
  auto take_empty = [&]() -> std::size_t {
    while (done[next_empty]) ++next_empty;
    done[next_empty] = true;
    return next_empty;
  };
  for (std::size_t d = 0; d < path.size(); ++d) {
    while (placed[d].size() < client.n_bkt) placed[d].push_back(take_empty());
  }
  while (client.stash.size() < n_stash) client.stash.push_back(std::move(pool[take_empty()]));

  for (std::size_t d = 0; d < path.size(); ++d) {
    std::vector<QBlock> bucket;
    for (std::size_t i : placed[d]) bucket.push_back(encrypt_block(client, pool[i].id, pool[i].data));
    res.transcript.up.insert(res.transcript.up.end(), bucket.begin(), bucket.end());
    server.buckets[path[d]] = std::move(bucket);
  }
  return res;
}

StateVector qoram_decrypt_block(const QClient& client, const QBlock& block) {
  return skqes1_dec(client.key, QCiphertextPure{block.state, block.r});
}

std::size_t qoram_qubit_count(const QClient& client, const QServer& server) {
  std::size_t total = 0;
  for (const auto& bucket : server.buckets) {
    for (const QBlock& b : bucket) total += b.state.n_qubits();
  }
  for (const QRecord& r : client.stash) total += client.n_tag + r.data.n_qubits();
  return total;
}

std::uint64_t block_digest(const QBlock& block) {
  DensityMatrix d = DensityMatrix::pure(block.state);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (Eigen::Index i = 0; i < d.matrix().size(); ++i) {
    Complex v = d.matrix()(i);
    fnv(h, static_cast<std::int64_t>(std::llround(v.real() * 1e9)));
    fnv(h, static_cast<std::int64_t>(std::llround(v.imag() * 1e9)));
  }
  return h;
}

QAccessReport safe_extractor_default(const QTranscript& transcript, const QServer&) {
  QAccessReport rep;
  rep.leaf = transcript.leaf;
  for (const QBlock& b : transcript.down) {
    rep.down_r.push_back(b.r.to_hex());
    rep.down_digest.push_back(block_digest(b));
  }
  for (const QBlock& b : transcript.up) {
    rep.up_r.push_back(b.r.to_hex());
    rep.up_digest.push_back(block_digest(b));
  }
  return rep;
}

nlohmann::json qaccess_report_to_json(const QAccessReport& report) {
  return {{"leaf", report.leaf},
          {"down_r", report.down_r},
          {"up_r", report.up_r},
          {"down_digest", report.down_digest},
          {"up_digest", report.up_digest}};
}

}  // namespace qsec
