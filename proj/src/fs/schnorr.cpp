#include "qsec/fs/schnorr.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "qsec/core/numtheory.hpp"

namespace qsec {

namespace {

void check_exponent(const SchnorrGroup& grp, std::uint64_t e, const char* what) {
  if (e >= grp.q) throw std::invalid_argument(std::string(what) + " must lie in Z_q");
}

}  // namespace

void validate_group(const SchnorrGroup& grp) {
  if (!nt::is_prime(grp.p) || !nt::is_prime(grp.q)) throw std::invalid_argument("schnorr group: p and q must be prime");
  if ((grp.p - 1) % grp.q != 0) throw std::invalid_argument("schnorr group: q must divide p - 1");
  if (grp.g <= 1 || grp.g >= grp.p || nt::powmod(grp.g, grp.q, grp.p) != 1) {
    throw std::invalid_argument("schnorr group: g must have order q");
  }
}

HardInstance inst_gen(const SchnorrGroup& grp, Rng& rng) { return inst_from_witness(grp, rng.below(grp.q)); }

HardInstance inst_from_witness(const SchnorrGroup& grp, std::uint64_t w) {
  validate_group(grp);
  check_exponent(grp, w, "witness");
  return HardInstance{grp, nt::powmod(grp.g, w, grp.p), w};
}

bool relation_holds(const SchnorrGroup& grp, std::uint64_t x, std::uint64_t w) {
  return nt::powmod(grp.g, w, grp.p) == x;
}

std::uint64_t schnorr_commit(const HardInstance& inst, std::uint64_t a) {
  check_exponent(inst.grp, a, "commitment randomness");
  return nt::powmod(inst.grp.g, a, inst.grp.p);
}

std::uint64_t schnorr_respond(const HardInstance& inst, std::uint64_t a, std::uint64_t ch) {
  check_exponent(inst.grp, a, "commitment randomness");
  check_exponent(inst.grp, ch, "challenge");
  return (a + nt::mulmod(ch, inst.w, inst.grp.q)) % inst.grp.q;
}

bool schnorr_verify(const SchnorrGroup& grp, std::uint64_t x, const SigmaTranscript& t) {
  if (t.ch >= grp.q || t.resp >= grp.q || t.com == 0 || t.com >= grp.p) return false;
  std::uint64_t lhs = nt::powmod(grp.g, t.resp, grp.p);
  std::uint64_t rhs = nt::mulmod(t.com, nt::powmod(x, t.ch, grp.p), grp.p);
  return lhs == rhs;
}

SigmaTranscript schnorr_run(const HardInstance& inst, std::uint64_t a, std::uint64_t ch) {
  return SigmaTranscript{schnorr_commit(inst, a), ch, schnorr_respond(inst, a, ch)};
}

std::uint64_t special_soundness_extract(const SchnorrGroup& grp, std::uint64_t x, const SigmaTranscript& t1,
                                        const SigmaTranscript& t2) {
  if (t1.com != t2.com) throw std::invalid_argument("extract: commitments differ");
  if (t1.ch == t2.ch) throw std::invalid_argument("extract: challenges are equal");
  if (!schnorr_verify(grp, x, t1) || !schnorr_verify(grp, x, t2)) throw std::invalid_argument("extract: transcript rejects");
  std::uint64_t q = grp.q;
  std::uint64_t dr = (t1.resp + q - t2.resp) % q;
  std::uint64_t dc = (t1.ch + q - t2.ch) % q;
  return nt::mulmod(dr, nt::invmod(dc, q), q);
}

SigmaTranscript hvzk_simulate(const SchnorrGroup& grp, std::uint64_t x, std::uint64_t ch, std::uint64_t resp) {
  std::uint64_t x_inv_ch = nt::invmod(nt::powmod(x, ch, grp.p), grp.p);
  return SigmaTranscript{nt::mulmod(nt::powmod(grp.g, resp, grp.p), x_inv_ch, grp.p), ch, resp};
}

SigmaTranscript hvzk_simulate(const SchnorrGroup& grp, std::uint64_t x, Rng& rng) {
  std::uint64_t ch = rng.below(grp.q);
  std::uint64_t resp = rng.below(grp.q);
  return hvzk_simulate(grp, x, ch, resp);
}

std::uint64_t group_dlog(const SchnorrGroup& grp, std::uint64_t h) {
  if (h == 0 || h >= grp.p) throw std::domain_error("group_dlog: element outside <g>");
  auto step = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(grp.q))));
  std::unordered_map<std::uint64_t, std::uint64_t> baby;
  std::uint64_t acc = 1;
  for (std::uint64_t j = 0; j < step; ++j) {
    baby.emplace(acc, j);
    acc = nt::mulmod(acc, grp.g, grp.p);
  }
  std::uint64_t giant = nt::invmod(nt::powmod(grp.g, step, grp.p), grp.p);
  std::uint64_t y = h;
  for (std::uint64_t i = 0; i <= step; ++i) {
    auto it = baby.find(y);
    if (it != baby.end()) {
      std::uint64_t e = i * step + it->second;
      if (e < grp.q) return e;
    }
    y = nt::mulmod(y, giant, grp.p);
  }
  throw std::domain_error("group_dlog: element outside <g>");
}

}  // namespace qsec
