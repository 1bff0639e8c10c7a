#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsec/games/ind.hpp"

namespace qsec {

struct AttackSpec {
  std::string name;
  std::string target;
  std::string game;
  std::string contract;
};

const std::vector<AttackSpec>& attack_catalog();

// Guesses a fair coin; uses no oracles.
IndAdversaryFactory random_guess_adversary();

// Encrypts 0^n and 1^n before the challenge and looks for a match; falls back to a coin.
IndAdversaryFactory otp_reuse_attack();

// Against the paired-ciphertext scheme: swap the halves of an encryption, decrypt to
// learn the hidden message, encrypt it to read the key, then decrypt the challenge.
// Falls back to a coin when the scheme lacks the paired structure.
IndAdversaryFactory cca1_counterexample_attack();

// Flips the payload of the challenge, decrypts it after the challenge and unflips.
// Falls back to a coin if the flipped query is rejected.
IndAdversaryFactory cca2_flip_attack();

// Queries the uniform superposition of messages once, measures the ciphertext
// register and answers the parity of that outcome XOR the challenge's parity.
QcpaAdversaryFactory superposition_cpa_adversary();

// Smallest x >= 0 with g^x = h mod p, by exhaustive search. Throws std::domain_error
// if h is not in <g>; p must be below 2^24.
std::uint64_t dlog_bruteforce(std::uint64_t p, std::uint64_t g, std::uint64_t h);

}  // namespace qsec
