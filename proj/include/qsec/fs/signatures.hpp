#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "qsec/fs/oracle.hpp"
#include "qsec/fs/schnorr.hpp"

namespace qsec {

struct FsPublicKey {
  SchnorrGroup grp;
  std::uint64_t x = 1;
  bool operator==(const FsPublicKey&) const = default;
};

struct FsKeyPair {
  FsPublicKey pk;
  HardInstance sk;
};

FsKeyPair fs_keygen(const SchnorrGroup& grp, Rng& rng);

enum class FsForm { Sigma, Lambda };

// Sigma form carries (com, resp); Lambda form carries (r, resp). The challenge is always recomputed.
struct FsSignature {
  FsForm form = FsForm::Sigma;
  std::uint64_t first = 0;
  std::uint64_t resp = 0;
  bool operator==(const FsSignature&) const = default;
};

std::string encode_public_key(const FsPublicKey& pk);

// ch = oracle(pk || com || m).
std::uint64_t fs_challenge(const FsPublicKey& pk, std::uint64_t com, const std::string& m, RandomOracle& oracle);
FsSignature fs_sign_with(const HardInstance& sk, const std::string& m, std::uint64_t a, RandomOracle& oracle);
FsSignature fs_sign(const HardInstance& sk, const std::string& m, RandomOracle& oracle, Rng& rng);
bool fs_verify(const FsPublicKey& pk, const std::string& m, const FsSignature& sig, RandomOracle& oracle);

// Oblivious commitment for the toy group: Com(x; r) = g^r and SmplRnd inverts it by discrete log.
std::uint64_t lambda_commit(const FsPublicKey& pk, std::uint64_t r);
// Throws std::domain_error if com is outside <g>.
std::uint64_t lambda_smplrnd(const FsPublicKey& pk, std::uint64_t com);

// ch = oracle(pk || m || r); com = Com(pk; r).
std::uint64_t fs_lambda_challenge(const FsPublicKey& pk, const std::string& m, std::uint64_t r, RandomOracle& oracle);
FsSignature fs_lambda_sign_with(const HardInstance& sk, const std::string& m, std::uint64_t r, RandomOracle& oracle);
FsSignature fs_lambda_sign(const HardInstance& sk, const std::string& m, RandomOracle& oracle, Rng& rng);
bool fs_lambda_verify(const FsPublicKey& pk, const std::string& m, const FsSignature& sig, RandomOracle& oracle);

// Dispatches on sig.form.
bool fs_verify_any(const FsPublicKey& pk, const std::string& m, const FsSignature& sig, RandomOracle& oracle);

// {"form": "sigma"|"lambda", "com"|"r": "<decimal>", "resp": "<decimal>"}
nlohmann::json signature_to_json(const FsSignature& sig);
// Throws std::invalid_argument on malformed input.
FsSignature signature_from_json(const nlohmann::json& j);

}  // namespace qsec
