#pragma once

#include <cstddef>
#include <functional>

#include "qsec/core/schemes.hpp"
#include "qsec/games/qind.hpp"

namespace qsec {

// Decomposition of Enc(k, x; r) = (r, f(k, r, x)).
struct CoreSplit {
  std::size_t msg_bits = 0;
  std::size_t rand_bits = 0;
  // Position and width of f's output inside the flattened ciphertext.
  std::size_t core_offset = 0;
  std::size_t core_bits = 0;
  bool quasi_length_preserving = false;
  std::function<BitString(const BitString& r, const BitString& x)> core;
  // g(r, f(r, x)) = x.
  std::function<BitString(const BitString& r, const BitString& y)> invert;
};

// Supports the one-time pad, the Goldreich scheme and the permutation scheme. The
// returned functions borrow the scheme and must not outlive it.
// Checks the width and inverse claims exhaustively when the domain has at most
// 2^14 points. Throws std::invalid_argument for schemes without a declared decomposition.
CoreSplit core_function_split(const Skes& scheme);

// Challenges H|0^m> against H|1^m>, applies H to the core register of the
// ciphertext, measures it and answers 0 iff the outcome is all zeros.
QindAdversaryFactory hadamard_distinguisher(std::size_t msg_bits, std::size_t core_offset, std::size_t core_bits);
QindAdversaryFactory hadamard_distinguisher(const CoreSplit& split);

// Probability that the measured core register is all zeros when the challenge bit is b,
// for one fixed key and ciphertext randomness.
double hadamard_zero_probability(const Skqes& scheme, const CoreSplit& split, bool b, Rng& rng);

}  // namespace qsec
