#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsec/qsim/state.hpp"

namespace qsec {

struct CircuitGate {
  // One of H, X, Y, Z, CNOT, SWAP, or "oracle" with `ref` naming a registered unitary.
  std::string name;
  std::vector<std::size_t> targets;
  std::optional<std::string> ref;

  bool operator==(const CircuitGate&) const = default;
};

struct CircuitDescription {
  std::size_t wires = 0;
  std::vector<CircuitGate> gates;
  std::vector<std::size_t> out;

  bool operator==(const CircuitDescription&) const = default;
};

using OracleRegistry = std::map<std::string, UnitaryOp>;

// Throws std::invalid_argument on out-of-range or repeated indices, unknown gates,
// arity mismatches or unresolved oracle references.
void validate_description(const CircuitDescription& desc, const OracleRegistry& oracles = {});

// Runs the gate list from |0...0> on all wires.
StateVector build_state_vector(const CircuitDescription& desc, const OracleRegistry& oracles = {});
// State on the declared output register, in the order listed.
DensityMatrix build_from_description(const CircuitDescription& desc, const OracleRegistry& oracles = {});

nlohmann::json circuit_to_json(const CircuitDescription& desc);
CircuitDescription circuit_from_json(const nlohmann::json& j);

// Row-major [re, im] pairs.
nlohmann::json density_to_json(const DensityMatrix& d);
DensityMatrix density_from_json(const nlohmann::json& j);

}  // namespace qsec
