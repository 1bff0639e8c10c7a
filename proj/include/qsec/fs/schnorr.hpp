#pragma once

#include <cstdint>

#include "qsec/core/rng.hpp"

namespace qsec {

// Order-q subgroup of Z_p^* generated by g.
struct SchnorrGroup {
  std::uint64_t p = 23;
  std::uint64_t q = 11;
  std::uint64_t g = 2;
  bool operator==(const SchnorrGroup&) const = default;
};

// p = 23, q = 11, g = 2.
inline SchnorrGroup toy_group() { return SchnorrGroup{23, 11, 2}; }
// Safe prime p = 2q + 1 below 2^22; g = 4 generates the quadratic residues.
inline SchnorrGroup medium_group() { return SchnorrGroup{4194287, 2097143, 4}; }

// Throws std::invalid_argument unless p and q are prime, q | p - 1 and g has order q.
void validate_group(const SchnorrGroup& grp);

struct HardInstance {
  SchnorrGroup grp;
  std::uint64_t x = 1;  // statement g^w
  std::uint64_t w = 0;  // witness
};

HardInstance inst_gen(const SchnorrGroup& grp, Rng& rng);
HardInstance inst_from_witness(const SchnorrGroup& grp, std::uint64_t w);
bool relation_holds(const SchnorrGroup& grp, std::uint64_t x, std::uint64_t w);

struct SigmaTranscript {
  std::uint64_t com = 1;
  std::uint64_t ch = 0;
  std::uint64_t resp = 0;
  bool operator==(const SigmaTranscript&) const = default;
};

// com = g^a.
std::uint64_t schnorr_commit(const HardInstance& inst, std::uint64_t a);
// resp = a + ch * w mod q.
std::uint64_t schnorr_respond(const HardInstance& inst, std::uint64_t a, std::uint64_t ch);
// g^resp == com * x^ch.
bool schnorr_verify(const SchnorrGroup& grp, std::uint64_t x, const SigmaTranscript& t);
SigmaTranscript schnorr_run(const HardInstance& inst, std::uint64_t a, std::uint64_t ch);

// w = (resp1 - resp2) / (ch1 - ch2) mod q. Throws std::invalid_argument unless
// both transcripts accept, share com and have distinct challenges.
std::uint64_t special_soundness_extract(const SchnorrGroup& grp, std::uint64_t x, const SigmaTranscript& t1,
                                        const SigmaTranscript& t2);

// com = g^resp * x^{-ch}.
SigmaTranscript hvzk_simulate(const SchnorrGroup& grp, std::uint64_t x, std::uint64_t ch, std::uint64_t resp);
SigmaTranscript hvzk_simulate(const SchnorrGroup& grp, std::uint64_t x, Rng& rng);

// Exponent of h with respect to g, by baby-step giant-step. Throws std::domain_error outside <g>.
std::uint64_t group_dlog(const SchnorrGroup& grp, std::uint64_t h);

}  // namespace qsec
