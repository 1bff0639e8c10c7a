#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "qsec/fs/signatures.hpp"
#include "qsec/games/experiment.hpp"

namespace qsec {

// A Fiat-Shamir signature scheme in either form, over a fixed group.
struct SignatureScheme {
  std::string name;
  SchnorrGroup grp;
  FsForm form = FsForm::Sigma;
};

SignatureScheme fs_sigma_scheme(const SchnorrGroup& grp = medium_group());
SignatureScheme fs_lambda_scheme(const SchnorrGroup& grp = medium_group());

FsSignature scheme_sign(const SignatureScheme& s, const HardInstance& sk, const std::string& m, RandomOracle& oracle,
                        Rng& rng);
bool scheme_verify(const SignatureScheme& s, const FsPublicKey& pk, const std::string& m, const FsSignature& sig,
                   RandomOracle& oracle);

class SigningOracle {
 public:
  SigningOracle(const SignatureScheme& scheme, const HardInstance& sk, RandomOracle& oracle, Rng rng,
                std::size_t budget)
      : scheme_(scheme), sk_(sk), oracle_(oracle), rng_(std::move(rng)), budget_(budget) {}
  // Throws HarnessError past the q_s budget.
  FsSignature sign(const std::string& m);
  const std::set<std::string>& queried() const { return queried_; }

 private:
  const SignatureScheme& scheme_;
  const HardInstance& sk_;
  RandomOracle& oracle_;
  Rng rng_;
  std::size_t budget_;
  std::set<std::string> queried_;
};

struct EufView {
  FsPublicKey pk;
  // Set only when the harness leaks the key for sanity checks.
  std::optional<HardInstance> leaked_sk;
};

class Forger {
 public:
  virtual ~Forger() = default;
  virtual std::pair<std::string, FsSignature> forge(const EufView& view, SigningOracle& signer, RandomOracle& oracle,
                                                    Rng& rng) = 0;
};

using ForgerFactory = std::function<std::unique_ptr<Forger>()>;

// Signs one message and presents the signature on a different one.
ForgerFactory replay_forger();
// Outputs a uniformly random signature of the scheme's form on a fresh message.
ForgerFactory random_forger(FsForm form);

// Wins iff the output verifies on a message never sent to the signing oracle.
// Streams: 1 key, 2 oracle seed, 3 signer coins, 4 forger coins.
bool game_euf_cma(const SignatureScheme& scheme, Forger& forger, std::uint64_t trial_seed, std::size_t q_s,
                  bool leak_sk = false);

// `successes` counts forgeries; the advantage field keeps the shared success-rate-minus-one-half form.
ExperimentResult run_euf(const std::string& game, const SignatureScheme& scheme, const ForgerFactory& forger,
                         std::uint64_t trials, std::uint64_t seed, std::size_t q_s, bool leak_sk = false,
                         nlohmann::json params = nlohmann::json::object());

}  // namespace qsec
