#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qsec/core/bitstring.hpp"
#include "qsec/core/permutation.hpp"
#include "qsec/core/rng.hpp"
#include "qsec/qsim/state.hpp"

namespace qsec {

enum class Gate { H, X, Y, Z, CNOT, SWAP };

Matrix gate_matrix(Gate g);
std::size_t gate_arity(Gate g);
Gate gate_from_name(const std::string& name);
std::string gate_name(Gate g);

std::vector<std::size_t> all_wires(std::size_t n);
std::vector<std::size_t> wire_range(std::size_t first, std::size_t count);

// u acts on `targets`, targets[0] being the most significant local bit.
StateVector apply_unitary(const StateVector& s, const Matrix& u, const std::vector<std::size_t>& targets);
DensityMatrix apply_unitary(const DensityMatrix& d, const Matrix& u, const std::vector<std::size_t>& targets);
StateVector apply_gate(const StateVector& s, Gate g, const std::vector<std::size_t>& targets);
DensityMatrix apply_gate(const DensityMatrix& d, Gate g, const std::vector<std::size_t>& targets);

// |l> -> |perm(l)> on the target register.
StateVector apply_basis_permutation(const StateVector& s, const Permutation& perm, const std::vector<std::size_t>& targets);
DensityMatrix apply_basis_permutation(const DensityMatrix& d, const Permutation& perm,
                                      const std::vector<std::size_t>& targets);

// Target j gets X^{key[2j]} Z^{key[2j+1]}. Empty targets means every wire.
StateVector qotp_apply(const BitString& key, const StateVector& s, std::vector<std::size_t> targets = {});
DensityMatrix qotp_apply(const BitString& key, const DensityMatrix& d, std::vector<std::size_t> targets = {});

// u in [0,1) selects the outcome by cumulative probability.
std::pair<BitString, StateVector> measure_computational(const StateVector& s, const std::vector<std::size_t>& targets,
                                                        double u);
std::pair<BitString, StateVector> measure_computational(const StateVector& s, const std::vector<std::size_t>& targets,
                                                        Rng& rng);
std::pair<BitString, DensityMatrix> measure_computational(const DensityMatrix& d, const std::vector<std::size_t>& targets,
                                                          double u);
std::pair<BitString, DensityMatrix> measure_computational(const DensityMatrix& d, const std::vector<std::size_t>& targets,
                                                          Rng& rng);
// Forces an outcome; throws std::domain_error if it has zero probability.
StateVector postselect(const StateVector& s, const std::vector<std::size_t>& targets, const BitString& outcome);
DensityMatrix postselect(const DensityMatrix& d, const std::vector<std::size_t>& targets, const BitString& outcome);
// Marginal outcome distribution on the targets.
std::vector<double> outcome_probabilities(const StateVector& s, const std::vector<std::size_t>& targets);
std::vector<double> outcome_probabilities(const DensityMatrix& d, const std::vector<std::size_t>& targets);

DensityMatrix partial_trace(const DensityMatrix& d, const std::vector<std::size_t>& keep);
// 1/2 sum |eigenvalues(rho - sigma)|. Both inputs must be positive within 1e-8.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);
DensityMatrix maximally_mixed(std::size_t n);

}  // namespace qsec
