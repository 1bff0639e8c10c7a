#pragma once

#include "qsec/games/qap.hpp"

namespace qsec {

// Ids differ, payloads equal. Learns id 1's leaf in the first phase and answers 0
// iff the challenge leaf matches it.
QapAdversaryFactory qap_tag_only_distinguisher();

// Same id, payloads |0...0> and |1...1>. Measures the data wires of every block on
// the challenge branch of the final server and answers the majority of the last bit.
QapAdversaryFactory qap_payload_only_distinguisher();

// Identical challenge arms; answers a coin.
QapAdversaryFactory qap_identical_requests();

}  // namespace qsec
