#pragma once

#include <cstdint>
#include <vector>

#include "qsec/core/permutation.hpp"
#include "qsec/core/schemes.hpp"
#include "qsec/qsim/state.hpp"

namespace qsec {

// |x, y> -> |x, y ^ f(x)> on in_bits + out_bits wires. table[x] = f(x).
UnitaryOp type1_oracle(const std::vector<std::uint64_t>& table, std::size_t in_bits, std::size_t out_bits);
// |x> -> |perm(x)>.
UnitaryOp type2_oracle(const Permutation& perm);

// Builds the type-1 oracle of Enc from the type-2 pair. Wires during the
// circuit are [x (m), ancilla (c - m), y (c)]; the result acts on [x, y].
// Throws std::domain_error if the ancilla is not returned to |0>.
UnitaryOp type1_from_type2(const UnitaryOp& enc2, const UnitaryOp& dec2, std::size_t msg_bits);

// Builds the in-place encryption from the type-1 pair. enc1 acts on [x (m), z (c)],
// dec1 on [z (c), x (m)]. The result acts on m + c wires and sends |x, 0> to |Enc(x), 0^m>.
UnitaryOp type2_from_type1(const UnitaryOp& enc1, const UnitaryOp& dec1, std::size_t msg_bits);

// Entrywise comparison of the slice of a type2_from_type1 result against the
// direct type-2 oracle restricted to ancilla 0. Returns the max deviation.
double type2_conversion_deviation(const UnitaryOp& converted, const UnitaryOp& direct2, std::size_t msg_bits);

// x -> flatten(Enc(x; r)).
std::vector<std::uint64_t> encryption_table(const Skes& scheme, const BitString& r);
// flat ciphertext -> Dec. Requires Dec to be total on flat ciphertexts.
std::vector<std::uint64_t> decryption_table(const Skes& scheme);

}  // namespace qsec
