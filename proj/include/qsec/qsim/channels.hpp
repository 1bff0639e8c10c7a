#pragma once

#include "qsec/core/permutation.hpp"
#include "qsec/core/rng.hpp"
#include "qsec/qsim/state.hpp"

namespace qsec {

// Appends r_bits fresh |0> wires and applies a uniformly random permutation to the
// last (n - held) + r_bits wires, averaged over all permutations in closed form.
// The first `held` wires of rho are left untouched.
DensityMatrix avg_perm_channel(const DensityMatrix& rho, std::size_t r_bits, std::size_t held = 0);

// Same average by enumerating every permutation. Permuted register of at most 3 wires.
DensityMatrix avg_perm_channel_exhaustive(const DensityMatrix& rho, std::size_t r_bits, std::size_t held = 0);

// One draw of the channel: rho (x) |0^r><0^r| conjugated by `perm` on the permuted register.
DensityMatrix perm_channel_apply(const DensityMatrix& rho, std::size_t r_bits, const Permutation& perm,
                                 std::size_t held = 0);
DensityMatrix perm_channel_sample(const DensityMatrix& rho, std::size_t r_bits, Rng& rng, std::size_t held = 0);

}  // namespace qsec
