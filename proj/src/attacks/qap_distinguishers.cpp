#include "qsec/attacks/qap_distinguishers.hpp"

#include "qsec/qsim/gates.hpp"

namespace qsec {

namespace {

StateVector all_ones(std::size_t n) { return StateVector::basis(n, (std::uint64_t{1} << n) - 1); }

class TagOnly : public QapAdversary {
 public:
  std::pair<QuantumDataRequest, QuantumDataRequest> choose(QapOracle& o, Rng&) override {
    StateVector zero(o.n_dat());
    leaf_ = o.access(QuantumDataRequest::write(1, zero)).leaf;
    return {QuantumDataRequest::write(1, zero), QuantumDataRequest::write(2, zero)};
  }
  bool guess(QapOracle&, const QAccessReport& challenge, const QServer&, Rng&) override {
    return challenge.leaf != leaf_;
  }

 private:
  std::uint64_t leaf_ = 0;
};

class PayloadOnly : public QapAdversary {
 public:
  std::pair<QuantumDataRequest, QuantumDataRequest> choose(QapOracle& o, Rng&) override {
    n_dat_ = o.n_dat();
    return {QuantumDataRequest::write(1, StateVector(n_dat_)), QuantumDataRequest::write(1, all_ones(n_dat_))};
  }
  bool guess(QapOracle&, const QAccessReport& challenge, const QServer& server, Rng& rng) override {
    int ones = 0;
    int total = 0;
    for (std::size_t node : server.path(challenge.leaf)) {
      for (const QBlock& b : server.buckets[node]) {
        std::size_t n = b.state.n_qubits();
        BitString bits = measure_computational(b.state, wire_range(n - n_dat_, n_dat_), rng).first;
        ones += bits[n_dat_ - 1] ? 1 : 0;
        ++total;
      }
    }
    if (2 * ones == total) return rng.bit();
    return 2 * ones > total;
  }

 private:
  std::size_t n_dat_ = 1;
};

class Identical : public QapAdversary {
 public:
  std::pair<QuantumDataRequest, QuantumDataRequest> choose(QapOracle& o, Rng&) override {
    auto r = QuantumDataRequest::write(1, StateVector(o.n_dat()));
    return {r, r};
  }
  bool guess(QapOracle&, const QAccessReport&, const QServer&, Rng& rng) override { return rng.bit(); }
};

}  // namespace

QapAdversaryFactory qap_tag_only_distinguisher() {
  return [] { return std::make_unique<TagOnly>(); };
}

QapAdversaryFactory qap_payload_only_distinguisher() {
  return [] { return std::make_unique<PayloadOnly>(); };
}

QapAdversaryFactory qap_identical_requests() {
  return [] { return std::make_unique<Identical>(); };
}

}  // namespace qsec
