#include "qsec/qsim/gates.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qsec {

namespace {

struct Layout {
  std::size_t n = 0;
  std::uint64_t target_mask = 0;
  std::vector<std::uint64_t> offsets;  // local index -> full-index bits
  std::vector<std::uint64_t> bases;    // full indices with all target bits clear
};

Layout make_layout(std::size_t n, const std::vector<std::size_t>& targets) {
  Layout L;
  L.n = n;
  std::size_t k = targets.size();
  if (k > n) throw std::out_of_range("targets exceed register");
  for (std::size_t t : targets) {
    if (t >= n) throw std::out_of_range("target wire out of range");
    std::uint64_t bit = 1ULL << (n - 1 - t);
    if (L.target_mask & bit) throw std::invalid_argument("targets must be distinct");
    L.target_mask |= bit;
  }
  L.offsets.resize(std::size_t{1} << k);
  for (std::uint64_t l = 0; l < L.offsets.size(); ++l) {
    std::uint64_t off = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if ((l >> (k - 1 - j)) & 1U) off |= 1ULL << (n - 1 - targets[j]);
    }
    L.offsets[l] = off;
  }
  std::uint64_t dim = 1ULL << n;
  L.bases.reserve(dim >> k);
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & L.target_mask) == 0) L.bases.push_back(i);
  }
  return L;
}

// Local index of a full index.
std::uint64_t local_index(std::uint64_t full, std::size_t n, const std::vector<std::size_t>& targets) {
  std::uint64_t l = 0;
  for (std::size_t t : targets) l = (l << 1) | ((full >> (n - 1 - t)) & 1U);
  return l;
}

void apply_local(Complex* data, const Layout& L, const Matrix& u) {
  auto K = static_cast<Eigen::Index>(L.offsets.size());
  Vector v(K);
  Vector w(K);
  for (std::uint64_t base : L.bases) {
    for (Eigen::Index l = 0; l < K; ++l) v(l) = data[base + L.offsets[static_cast<std::size_t>(l)]];
    w.noalias() = u * v;
    for (Eigen::Index l = 0; l < K; ++l) data[base + L.offsets[static_cast<std::size_t>(l)]] = w(l);
  }
}

void apply_to_columns(Matrix& m, const Layout& L, const Matrix& u) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) apply_local(m.col(c).data(), L, u);
}

void check_local(const Matrix& u, const std::vector<std::size_t>& targets) {
  auto K = static_cast<Eigen::Index>(std::size_t{1} << targets.size());
  if (u.rows() != K || u.cols() != K) throw std::invalid_argument("unitary size does not match target count");
}

// Full-index image of a local basis permutation.
std::vector<std::uint64_t> full_permutation(std::size_t n, const Permutation& perm, const std::vector<std::size_t>& targets) {
  if (perm.domain_bits() != targets.size()) throw std::invalid_argument("permutation width does not match targets");
  Layout L = make_layout(n, targets);
  std::vector<std::uint64_t> img(std::size_t{1} << n);
  for (std::uint64_t base : L.bases) {
    for (std::uint64_t l = 0; l < L.offsets.size(); ++l) img[base + L.offsets[l]] = base + L.offsets[perm.apply(l)];
  }
  return img;
}

Matrix pauli_string(bool x, bool z) {
  Matrix m = Matrix::Identity(2, 2);
  if (z) m = gate_matrix(Gate::Z) * m;
  if (x) m = gate_matrix(Gate::X) * m;
  return m;
}

std::vector<std::size_t> default_targets(std::vector<std::size_t> targets, std::size_t n) {
  if (targets.empty()) return all_wires(n);
  return targets;
}

}  // namespace

Matrix gate_matrix(Gate g) {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex i(0.0, 1.0);
  Matrix m;
  switch (g) {
    case Gate::H:
      m.resize(2, 2);
      m << s, s, s, -s;
      break;
    case Gate::X:
      m.resize(2, 2);
      m << 0, 1, 1, 0;
      break;
    case Gate::Y:
      m.resize(2, 2);
      m << 0, -i, i, 0;
      break;
    case Gate::Z:
      m.resize(2, 2);
      m << 1, 0, 0, -1;
      break;
    case Gate::CNOT:
      m = Matrix::Zero(4, 4);
      m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1.0;
      break;
    case Gate::SWAP:
      m = Matrix::Zero(4, 4);
      m(0, 0) = m(1, 2) = m(2, 1) = m(3, 3) = 1.0;
      break;
  }
  return m;
}

std::size_t gate_arity(Gate g) { return (g == Gate::CNOT || g == Gate::SWAP) ? 2 : 1; }

Gate gate_from_name(const std::string& name) {
  if (name == "H") return Gate::H;
  if (name == "X") return Gate::X;
  if (name == "Y") return Gate::Y;
  if (name == "Z") return Gate::Z;
  if (name == "CNOT") return Gate::CNOT;
  if (name == "SWAP") return Gate::SWAP;
  throw std::invalid_argument("unknown gate: " + name);
}

std::string gate_name(Gate g) {
  switch (g) {
    case Gate::H: return "H";
    case Gate::X: return "X";
    case Gate::Y: return "Y";
    case Gate::Z: return "Z";
    case Gate::CNOT: return "CNOT";
    case Gate::SWAP: return "SWAP";
  }
  return "?";
}

std::vector<std::size_t> all_wires(std::size_t n) { return wire_range(0, n); }

std::vector<std::size_t> wire_range(std::size_t first, std::size_t count) {
  std::vector<std::size_t> w(count);
  std::iota(w.begin(), w.end(), first);
  return w;
}

StateVector apply_unitary(const StateVector& s, const Matrix& u, const std::vector<std::size_t>& targets) {
  check_local(u, targets);
  Layout L = make_layout(s.n_qubits(), targets);
  StateVector out = s;
  apply_local(out.raw().data(), L, u);
  return out;
}

DensityMatrix apply_unitary(const DensityMatrix& d, const Matrix& u, const std::vector<std::size_t>& targets) {
  check_local(u, targets);
  Layout L = make_layout(d.n_qubits(), targets);
  Matrix m = d.matrix();
  apply_to_columns(m, L, u);
  Matrix t = m.adjoint();
  apply_to_columns(t, L, u);
  return DensityMatrix::from_matrix_unchecked(t.adjoint());
}

StateVector apply_gate(const StateVector& s, Gate g, const std::vector<std::size_t>& targets) {
  if (targets.size() != gate_arity(g)) throw std::invalid_argument("gate arity mismatch");
  return apply_unitary(s, gate_matrix(g), targets);
}

DensityMatrix apply_gate(const DensityMatrix& d, Gate g, const std::vector<std::size_t>& targets) {
  if (targets.size() != gate_arity(g)) throw std::invalid_argument("gate arity mismatch");
  return apply_unitary(d, gate_matrix(g), targets);
}

StateVector apply_basis_permutation(const StateVector& s, const Permutation& perm, const std::vector<std::size_t>& targets) {
  auto img = full_permutation(s.n_qubits(), perm, targets);
  Vector out(s.amplitudes().size());
  for (std::size_t i = 0; i < img.size(); ++i) {
    out(static_cast<Eigen::Index>(img[i])) = s.amplitudes()(static_cast<Eigen::Index>(i));
  }
  return StateVector::from_amplitudes_unchecked(std::move(out));
}

DensityMatrix apply_basis_permutation(const DensityMatrix& d, const Permutation& perm,
                                      const std::vector<std::size_t>& targets) {
  auto img = full_permutation(d.n_qubits(), perm, targets);
  const Matrix& m = d.matrix();
  Matrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < img.size(); ++i) {
    for (std::size_t j = 0; j < img.size(); ++j) {
      out(static_cast<Eigen::Index>(img[i]), static_cast<Eigen::Index>(img[j])) =
          m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return DensityMatrix::from_matrix_unchecked(std::move(out));
}

StateVector qotp_apply(const BitString& key, const StateVector& s, std::vector<std::size_t> targets) {
  targets = default_targets(std::move(targets), s.n_qubits());
  if (key.size() != 2 * targets.size()) throw std::invalid_argument("qotp_apply: key must have 2 bits per qubit");
  StateVector out = s;
  for (std::size_t j = 0; j < targets.size(); ++j) {
    if (key[2 * j] || key[2 * j + 1]) out = apply_unitary(out, pauli_string(key[2 * j], key[2 * j + 1]), {targets[j]});
  }
  return out;
}

DensityMatrix qotp_apply(const BitString& key, const DensityMatrix& d, std::vector<std::size_t> targets) {
  targets = default_targets(std::move(targets), d.n_qubits());
  if (key.size() != 2 * targets.size()) throw std::invalid_argument("qotp_apply: key must have 2 bits per qubit");
  DensityMatrix out = d;
  for (std::size_t j = 0; j < targets.size(); ++j) {
    if (key[2 * j] || key[2 * j + 1]) out = apply_unitary(out, pauli_string(key[2 * j], key[2 * j + 1]), {targets[j]});
  }
  return out;
}

std::vector<double> outcome_probabilities(const StateVector& s, const std::vector<std::size_t>& targets) {
  make_layout(s.n_qubits(), targets);
  std::vector<double> p(std::size_t{1} << targets.size(), 0.0);
  for (std::size_t i = 0; i < s.dim(); ++i) p[local_index(i, s.n_qubits(), targets)] += std::norm(s[i]);
  return p;
}

std::vector<double> outcome_probabilities(const DensityMatrix& d, const std::vector<std::size_t>& targets) {
  make_layout(d.n_qubits(), targets);
  std::vector<double> p(std::size_t{1} << targets.size(), 0.0);
  for (std::size_t i = 0; i < d.dim(); ++i) {
    p[local_index(i, d.n_qubits(), targets)] += std::real(d.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)));
  }
  return p;
}

namespace {

std::uint64_t pick_outcome(const std::vector<double>& p, double u) {
  if (u < 0.0 || u >= 1.0) throw std::invalid_argument("measurement randomness must lie in [0, 1)");
  double total = std::accumulate(p.begin(), p.end(), 0.0);
  double acc = 0.0;
  std::uint64_t last_nonzero = 0;
  for (std::uint64_t o = 0; o < p.size(); ++o) {
    if (p[o] <= 0.0) continue;
    last_nonzero = o;
    acc += p[o] / total;
    if (u < acc) return o;
  }
  return last_nonzero;
}

}  // namespace

StateVector postselect(const StateVector& s, const std::vector<std::size_t>& targets, const BitString& outcome) {
  if (outcome.size() != targets.size()) throw std::invalid_argument("postselect: outcome width mismatch");
  std::uint64_t o = outcome.to_uint();
  Vector out = s.amplitudes();
  double mass = 0.0;
  for (std::size_t i = 0; i < s.dim(); ++i) {
    if (local_index(i, s.n_qubits(), targets) != o) {
      out(static_cast<Eigen::Index>(i)) = 0.0;
    } else {
      mass += std::norm(s[i]);
    }
  }
  if (mass < 1e-14) throw std::domain_error("postselect: outcome has zero probability");
  out /= std::sqrt(mass);
  return StateVector::from_amplitudes_unchecked(std::move(out));
}

DensityMatrix postselect(const DensityMatrix& d, const std::vector<std::size_t>& targets, const BitString& outcome) {
  if (outcome.size() != targets.size()) throw std::invalid_argument("postselect: outcome width mismatch");
  std::uint64_t o = outcome.to_uint();
  Matrix m = d.matrix();
  std::vector<bool> keep(d.dim());
  for (std::size_t i = 0; i < d.dim(); ++i) keep[i] = local_index(i, d.n_qubits(), targets) == o;
  double mass = 0.0;
  for (std::size_t i = 0; i < d.dim(); ++i) {
    auto ii = static_cast<Eigen::Index>(i);
    if (keep[i]) mass += std::real(m(ii, ii));
    for (std::size_t j = 0; j < d.dim(); ++j) {
      if (!keep[i] || !keep[j]) m(ii, static_cast<Eigen::Index>(j)) = 0.0;
    }
  }
  if (mass < 1e-14) throw std::domain_error("postselect: outcome has zero probability");
  m /= mass;
  return DensityMatrix::from_matrix_unchecked(std::move(m));
}

std::pair<BitString, StateVector> measure_computational(const StateVector& s, const std::vector<std::size_t>& targets,
                                                        double u) {
  auto p = outcome_probabilities(s, targets);
  BitString outcome = BitString::from_uint(pick_outcome(p, u), targets.size());
  return {outcome, postselect(s, targets, outcome)};
}

std::pair<BitString, StateVector> measure_computational(const StateVector& s, const std::vector<std::size_t>& targets,
                                                        Rng& rng) {
  return measure_computational(s, targets, rng.uniform01());
}

std::pair<BitString, DensityMatrix> measure_computational(const DensityMatrix& d, const std::vector<std::size_t>& targets,
                                                          double u) {
  auto p = outcome_probabilities(d, targets);
  BitString outcome = BitString::from_uint(pick_outcome(p, u), targets.size());
  return {outcome, postselect(d, targets, outcome)};
}

std::pair<BitString, DensityMatrix> measure_computational(const DensityMatrix& d, const std::vector<std::size_t>& targets,
                                                          Rng& rng) {
  return measure_computational(d, targets, rng.uniform01());
}

DensityMatrix partial_trace(const DensityMatrix& d, const std::vector<std::size_t>& keep) {
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep set is empty");
  std::size_t n = d.n_qubits();
  make_layout(n, keep);
  std::vector<std::size_t> traced;
  for (std::size_t w = 0; w < n; ++w) {
    if (std::find(keep.begin(), keep.end(), w) == keep.end()) traced.push_back(w);
  }
  Layout K = make_layout(n, keep);
  Layout T = make_layout(n, traced);
  auto dk = static_cast<Eigen::Index>(K.offsets.size());
  Matrix out = Matrix::Zero(dk, dk);
  const Matrix& m = d.matrix();
  for (Eigen::Index a = 0; a < dk; ++a) {
    for (Eigen::Index b = 0; b < dk; ++b) {
      Complex acc = 0.0;
      for (std::uint64_t t : T.offsets) {
        acc += m(static_cast<Eigen::Index>(K.offsets[static_cast<std::size_t>(a)] + t),
                 static_cast<Eigen::Index>(K.offsets[static_cast<std::size_t>(b)] + t));
      }
      out(a, b) = acc;
    }
  }
  return DensityMatrix::from_matrix_unchecked(std::move(out));
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) throw std::invalid_argument("trace_distance: dimension mismatch");
  if (rho.min_eigenvalue() < -kPositivityTol || sigma.min_eigenvalue() < -kPositivityTol) {
    throw std::domain_error("trace_distance: input has a negative eigenvalue below -1e-8");
  }
  Matrix diff = rho.matrix() - sigma.matrix();
  Matrix herm = 0.5 * (diff + diff.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

DensityMatrix maximally_mixed(std::size_t n) {
  check_qubit_cap(n);
  auto d = static_cast<Eigen::Index>(std::size_t{1} << n);
  return DensityMatrix::from_matrix_unchecked(Matrix::Identity(d, d) / static_cast<double>(d));
}

}  // namespace qsec
