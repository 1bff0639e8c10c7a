#include "qsec/attacks/bm_oram.hpp"

#include <map>
#include <mutex>
#include <stdexcept>

#include "qsec/core/numtheory.hpp"

namespace qsec {

namespace {

// s' = g^s mod p with s in [1, p).
inline std::uint64_t bm_step(const BmTables& t, std::uint64_t s) { return t.pow[s]; }

inline bool bm_bit(const BmTables& t, std::uint64_t s) { return s < (t.p - 1) / 2; }

// Inverse of bm_step, mapping exponent 0 back to p - 1.
inline std::uint64_t bm_back(const BmTables& t, std::uint64_t s) {
  std::uint64_t e = t.log[s];
  return e == 0 ? t.p - 1 : e;
}

// Runs one draw from state s, returning the truncated leaf and advancing s.
std::uint64_t draw_leaf(const BmTables& t, std::uint64_t& s, std::size_t n_tag, std::size_t n_tree) {
  std::uint64_t leaf = 0;
  for (std::size_t k = 0; k < n_tag; ++k) {
    s = bm_step(t, s);
    if (k >= n_tag - n_tree) leaf = (leaf << 1) | (bm_bit(t, s) ? 1 : 0);
  }
  return leaf;
}

class BmOramAttack : public ApAdversary {
 public:
  BmOramAttack(BmAttackParams params, std::shared_ptr<BmAttackTrace> trace)
      : prm_(params), trace_(trace ? std::move(trace) : std::make_shared<BmAttackTrace>()) {
    tables_ = bm_tables(prm_.p, prm_.g);
  }

  std::size_t choose_n_db(Rng&) override { return prm_.n_db; }

  std::pair<DataRequest, DataRequest> choose(ApOracle& oracle, Rng& rng) override {
    n_tree_ = oracle.n_tree();
    BitString data = BitString::zeros(oracle.n_dat());
    std::uint64_t i = prm_.target_id;
    for (std::size_t t = 0; t < prm_.history; ++t) {
      trace_->observed_leaves.push_back(oracle.access(DataRequest::write(i, data)).leaf);
    }
    predict();
    std::uint64_t j = pick_other(rng);
    trace_->other_id = j;
    return {DataRequest::write(i, data), DataRequest::write(j, data)};
  }

  bool guess(ApOracle& oracle, const AccessPattern& challenge, Rng& rng) override {
    if (!trace_->predicted_leaf) {
      trace_->guessed_randomly = true;
      return rng.bit();
    }
    bool guess = challenge.leaf != *trace_->predicted_leaf;
    std::uint64_t next = draws_.at(prm_.n_db + prm_.history);
    std::uint64_t expected = guess ? *trace_->predicted_leaf : next;
    std::uint64_t seen = oracle.access(DataRequest::write(prm_.target_id, BitString::zeros(oracle.n_dat()))).leaf;
    trace_->sanity_passed = seen == expected;
    if (!trace_->sanity_passed) {
      trace_->guessed_randomly = true;
      return rng.bit();
    }
    return guess;
  }

 private:
  // Needs two or more observed accesses: the first reveals an initial draw, the rest
  // reveal consecutive remap draws starting at draw n_db.
  void predict() {
    const auto& seen = trace_->observed_leaves;
    if (seen.size() < 2) return;
    std::vector<std::uint64_t> remaps(seen.begin() + 1, seen.end());
    std::vector<std::uint64_t> states = bm_consistent_states(*tables_, remaps, prm_.n_tag, n_tree_);
    if (states.empty()) return;
    std::uint64_t s = states.front();
    for (std::size_t b = 0; b < prm_.n_db * prm_.n_tag; ++b) s = bm_back(*tables_, s);
    std::size_t horizon = prm_.n_db + prm_.history + 1;
    draws_ = bm_leaf_draws(*tables_, s, horizon, prm_.n_tag, n_tree_);
    if (draws_[prm_.target_id - 1] != seen.front()) return;
    trace_->recovered_seed = s;
    trace_->predicted_leaf = draws_[prm_.n_db + prm_.history - 1];
  }

  std::uint64_t pick_other(Rng& rng) {
    std::vector<std::uint64_t> ok;
    for (std::uint64_t j = 1; j <= prm_.n_db; ++j) {
      if (j == prm_.target_id) continue;
      if (!trace_->predicted_leaf || draws_[j - 1] != *trace_->predicted_leaf) ok.push_back(j);
    }
    if (ok.empty()) {
      trace_->predicted_leaf.reset();
      return prm_.target_id == 1 ? 2 : 1;
    }
    return ok[rng.below(ok.size())];
  }

  BmAttackParams prm_;
  std::shared_ptr<BmAttackTrace> trace_;
  std::shared_ptr<const BmTables> tables_;
  std::size_t n_tree_ = 0;
  std::vector<std::uint64_t> draws_;
};

class LeafParity : public ApAdversary {
 public:
  explicit LeafParity(std::size_t n_db) : n_db_(n_db) {}
  std::size_t choose_n_db(Rng&) override { return n_db_; }
  std::pair<DataRequest, DataRequest> choose(ApOracle&, Rng&) override {
    return {DataRequest::read(1), DataRequest::read(2)};
  }
  bool guess(ApOracle&, const AccessPattern& challenge, Rng&) override { return (challenge.leaf & 1) != 0; }

 private:
  std::size_t n_db_;
};

}  // namespace

std::shared_ptr<const BmTables> bm_tables(std::uint64_t p, std::uint64_t g) {
  static std::mutex mu;
  static std::map<std::pair<std::uint64_t, std::uint64_t>, std::shared_ptr<const BmTables>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(p, g);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  if (p >= (std::uint64_t{1} << 24) || !nt::is_primitive_root(g, p)) {
    throw std::invalid_argument("bm_tables: need p < 2^24 and a primitive root g");
  }
  auto t = std::make_shared<BmTables>();
  t->p = p;
  t->g = g;
  t->pow.resize(p);
  t->log.assign(p, 0);
  std::uint64_t acc = 1;
  for (std::uint64_t e = 0; e + 1 < p; ++e) {
    t->pow[e] = static_cast<std::uint32_t>(acc);
    t->log[acc] = static_cast<std::uint32_t>(e);
    acc = acc * g % p;
  }
  t->pow[p - 1] = 1;
  cache.emplace(key, t);
  return t;
}

BmModulus bm_default_modulus() {
  std::uint64_t p = nt::prev_prime(std::uint64_t{1} << 20);
  return {p, nt::smallest_primitive_root(p)};
}

std::vector<std::uint64_t> bm_consistent_states(const BmTables& t, const std::vector<std::uint64_t>& leaves,
                                                std::size_t n_tag, std::size_t n_tree) {
  if (n_tree > n_tag) throw std::invalid_argument("bm_consistent_states: n_tree exceeds n_tag");
  std::vector<std::uint64_t> out;
  if (leaves.empty() || n_tree == 0) return out;
  std::size_t hidden = n_tag - n_tree;
  auto observed = [&](std::size_t d, std::size_t k) { return ((leaves[d] >> (n_tag - 1 - k)) & 1) != 0; };
  // Enumerate the state that produces the first observed bit; its own bit needs no lookup.
  bool first = observed(0, hidden);
  for (std::uint64_t cand = 1; cand < t.p; ++cand) {
    if (bm_bit(t, cand) != first) continue;
    std::uint64_t s = cand;
    bool ok = true;
    for (std::size_t d = 0; d < leaves.size() && ok; ++d) {
      for (std::size_t k = d == 0 ? hidden + 1 : 0; k < n_tag; ++k) {
        s = bm_step(t, s);
        if (k >= hidden && bm_bit(t, s) != observed(d, k)) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;
    std::uint64_t start = cand;
    for (std::size_t k = 0; k <= hidden; ++k) start = bm_back(t, start);
    out.push_back(start);
  }
  return out;
}

std::vector<std::uint64_t> bm_leaf_draws(const BmTables& t, std::uint64_t s0, std::size_t count, std::size_t n_tag,
                                         std::size_t n_tree) {
  std::vector<std::uint64_t> out;
  std::uint64_t s = s0;
  for (std::size_t d = 0; d < count; ++d) out.push_back(draw_leaf(t, s, n_tag, n_tree));
  return out;
}

ApAdversaryFactory bm_oram_attack(const BmAttackParams& params, std::shared_ptr<BmAttackTrace> trace) {
  if (params.p == 0) throw std::invalid_argument("bm_oram_attack: modulus not set");
  if (params.target_id == 0 || params.target_id > params.n_db || params.n_db < 2) {
    throw std::invalid_argument("bm_oram_attack: bad target id");
  }
  bm_tables(params.p, params.g);
  return [params, trace] { return std::make_unique<BmOramAttack>(params, trace); };
}

ApAdversaryFactory leaf_parity_adversary(std::size_t n_db) {
  return [n_db] { return std::make_unique<LeafParity>(n_db); };
}

}  // namespace qsec
