#include "qsec/fs/signatures.hpp"

#include <stdexcept>

#include "qsec/core/numtheory.hpp"

namespace qsec {

namespace {

std::uint64_t parse_decimal(const nlohmann::json& j, const char* key) {
  const std::string s = j.at(key).get<std::string>();
  if (s.empty() || s.size() > 19 || s.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument(std::string("signature: field ") + key + " is not a decimal string");
  }
  return std::stoull(s);
}

}  // namespace

FsKeyPair fs_keygen(const SchnorrGroup& grp, Rng& rng) {
  HardInstance inst = inst_gen(grp, rng);
  return FsKeyPair{FsPublicKey{grp, inst.x}, inst};
}

std::string encode_public_key(const FsPublicKey& pk) {
  return length_prefixed({encode_u64(pk.grp.p), encode_u64(pk.grp.q), encode_u64(pk.grp.g), encode_u64(pk.x)});
}

std::uint64_t fs_challenge(const FsPublicKey& pk, std::uint64_t com, const std::string& m, RandomOracle& oracle) {
  if (oracle.range() != pk.grp.q) throw std::invalid_argument("fs: oracle range must equal q");
  return oracle.query(length_prefixed({encode_public_key(pk), encode_u64(com), m}));
}

FsSignature fs_sign_with(const HardInstance& sk, const std::string& m, std::uint64_t a, RandomOracle& oracle) {
  std::uint64_t com = schnorr_commit(sk, a);
  std::uint64_t ch = fs_challenge(FsPublicKey{sk.grp, sk.x}, com, m, oracle);
  return FsSignature{FsForm::Sigma, com, schnorr_respond(sk, a, ch)};
}

FsSignature fs_sign(const HardInstance& sk, const std::string& m, RandomOracle& oracle, Rng& rng) {
  return fs_sign_with(sk, m, rng.below(sk.grp.q), oracle);
}

bool fs_verify(const FsPublicKey& pk, const std::string& m, const FsSignature& sig, RandomOracle& oracle) {
  if (sig.form != FsForm::Sigma) return false;
  std::uint64_t ch = fs_challenge(pk, sig.first, m, oracle);
  return schnorr_verify(pk.grp, pk.x, SigmaTranscript{sig.first, ch, sig.resp});
}

std::uint64_t lambda_commit(const FsPublicKey& pk, std::uint64_t r) {
  if (r >= pk.grp.q) throw std::invalid_argument("lambda_commit: r must lie in Z_q");
  return nt::powmod(pk.grp.g, r, pk.grp.p);
}

std::uint64_t lambda_smplrnd(const FsPublicKey& pk, std::uint64_t com) { return group_dlog(pk.grp, com); }

std::uint64_t fs_lambda_challenge(const FsPublicKey& pk, const std::string& m, std::uint64_t r, RandomOracle& oracle) {
  if (oracle.range() != pk.grp.q) throw std::invalid_argument("fs: oracle range must equal q");
  return oracle.query(length_prefixed({encode_public_key(pk), m, encode_u64(r)}));
}

FsSignature fs_lambda_sign_with(const HardInstance& sk, const std::string& m, std::uint64_t r, RandomOracle& oracle) {
  FsPublicKey pk{sk.grp, sk.x};
  std::uint64_t com = lambda_commit(pk, r);
  std::uint64_t ch = fs_lambda_challenge(pk, m, r, oracle);
  std::uint64_t a = lambda_smplrnd(pk, com);
  return FsSignature{FsForm::Lambda, r, schnorr_respond(sk, a, ch)};
}

FsSignature fs_lambda_sign(const HardInstance& sk, const std::string& m, RandomOracle& oracle, Rng& rng) {
  return fs_lambda_sign_with(sk, m, rng.below(sk.grp.q), oracle);
}

bool fs_lambda_verify(const FsPublicKey& pk, const std::string& m, const FsSignature& sig, RandomOracle& oracle) {
  if (sig.form != FsForm::Lambda || sig.first >= pk.grp.q) return false;
  std::uint64_t com = lambda_commit(pk, sig.first);
  std::uint64_t ch = fs_lambda_challenge(pk, m, sig.first, oracle);
  return schnorr_verify(pk.grp, pk.x, SigmaTranscript{com, ch, sig.resp});
}

bool fs_verify_any(const FsPublicKey& pk, const std::string& m, const FsSignature& sig, RandomOracle& oracle) {
  return sig.form == FsForm::Sigma ? fs_verify(pk, m, sig, oracle) : fs_lambda_verify(pk, m, sig, oracle);
}

nlohmann::json signature_to_json(const FsSignature& sig) {
  if (sig.form == FsForm::Sigma) {
    return {{"form", "sigma"}, {"com", std::to_string(sig.first)}, {"resp", std::to_string(sig.resp)}};
  }
  return {{"form", "lambda"}, {"r", std::to_string(sig.first)}, {"resp", std::to_string(sig.resp)}};
}

FsSignature signature_from_json(const nlohmann::json& j) {
  try {
    std::string form = j.at("form").get<std::string>();
    if (form == "sigma") return FsSignature{FsForm::Sigma, parse_decimal(j, "com"), parse_decimal(j, "resp")};
    if (form == "lambda") return FsSignature{FsForm::Lambda, parse_decimal(j, "r"), parse_decimal(j, "resp")};
    throw std::invalid_argument("signature: unknown form " + form);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("signature: ") + e.what());
  }
}

}  // namespace qsec
