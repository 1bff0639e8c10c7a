#include "qsec/qsim/circuit.hpp"

#include <set>
#include <stdexcept>

#include "qsec/qsim/gates.hpp"

namespace qsec {

namespace {

void check_indices(const std::vector<std::size_t>& idx, std::size_t wires, const char* what) {
  std::set<std::size_t> seen;
  for (std::size_t i : idx) {
    if (i >= wires) throw std::invalid_argument(std::string(what) + ": wire index out of range");
    if (!seen.insert(i).second) throw std::invalid_argument(std::string(what) + ": repeated wire index");
  }
}

}  // namespace

void validate_description(const CircuitDescription& desc, const OracleRegistry& oracles) {
  check_qubit_cap(desc.wires);
  for (const auto& g : desc.gates) {
    check_indices(g.targets, desc.wires, "circuit gate");
    if (g.name == "oracle") {
      if (!g.ref) throw std::invalid_argument("circuit gate: oracle without ref");
      auto it = oracles.find(*g.ref);
      if (it == oracles.end()) throw std::invalid_argument("circuit gate: unknown oracle '" + *g.ref + "'");
      if (it->second.n_qubits != g.targets.size()) throw std::invalid_argument("circuit gate: oracle arity mismatch");
    } else {
      Gate kind = gate_from_name(g.name);
      if (gate_arity(kind) != g.targets.size()) throw std::invalid_argument("circuit gate: arity mismatch");
    }
  }
  if (desc.out.empty()) throw std::invalid_argument("circuit: empty output register");
  check_indices(desc.out, desc.wires, "circuit output");
}

StateVector build_state_vector(const CircuitDescription& desc, const OracleRegistry& oracles) {
  validate_description(desc, oracles);
  StateVector s(desc.wires);
  for (const auto& g : desc.gates) {
    if (g.name == "oracle") {
      s = apply_unitary(s, oracles.at(*g.ref).matrix, g.targets);
    } else {
      s = apply_gate(s, gate_from_name(g.name), g.targets);
    }
  }
  return s;
}

DensityMatrix build_from_description(const CircuitDescription& desc, const OracleRegistry& oracles) {
  return partial_trace(DensityMatrix::pure(build_state_vector(desc, oracles)), desc.out);
}

nlohmann::json circuit_to_json(const CircuitDescription& desc) {
  nlohmann::json gates = nlohmann::json::array();
  for (const auto& g : desc.gates) {
    nlohmann::json e{{"g", g.name}, {"t", g.targets}};
    if (g.ref) e["ref"] = *g.ref;
    gates.push_back(std::move(e));
  }
  return {{"wires", desc.wires}, {"gates", gates}, {"out", desc.out}};
}

CircuitDescription circuit_from_json(const nlohmann::json& j) {
  CircuitDescription d;
  try {
    d.wires = j.at("wires").get<std::size_t>();
    for (const auto& e : j.at("gates")) {
      CircuitGate g;
      g.name = e.at("g").get<std::string>();
      g.targets = e.at("t").get<std::vector<std::size_t>>();
      if (e.contains("ref")) g.ref = e.at("ref").get<std::string>();
      d.gates.push_back(std::move(g));
    }
    d.out = j.at("out").get<std::vector<std::size_t>>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed circuit description: ") + e.what());
  }
  return d;
}

nlohmann::json density_to_json(const DensityMatrix& d) {
  nlohmann::json entries = nlohmann::json::array();
  const Matrix& m = d.matrix();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) entries.push_back({m(r, c).real(), m(r, c).imag()});
  }
  return {{"n_qubits", d.n_qubits()}, {"entries", entries}};
}

DensityMatrix density_from_json(const nlohmann::json& j) {
  auto n = j.at("n_qubits").get<std::size_t>();
  check_qubit_cap(n);
  auto dim = Eigen::Index{1} << n;
  const auto& entries = j.at("entries");
  if (entries.size() != static_cast<std::size_t>(dim * dim)) throw std::invalid_argument("density_from_json: entry count");
  Matrix m(dim, dim);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c, ++k) m(r, c) = Complex(entries[k][0].get<double>(), entries[k][1].get<double>());
  }
  return DensityMatrix::from_matrix(std::move(m));
}

}  // namespace qsec
