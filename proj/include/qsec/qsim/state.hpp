#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <vector>

namespace qsec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr std::size_t kDefaultQubitCap = 12;
inline constexpr double kNormTol = 1e-10;
inline constexpr double kPositivityTol = 1e-8;

// Wire 0 is the most significant bit of the basis index.
class StateVector {
 public:
  explicit StateVector(std::size_t n_qubits = 1);
  static StateVector basis(std::size_t n_qubits, std::uint64_t index);
  // Throws unless the norm is 1 within kNormTol.
  static StateVector from_amplitudes(Vector amps);
  static StateVector from_amplitudes_unchecked(Vector amps);

  std::size_t n_qubits() const { return n_; }
  std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
  const Vector& amplitudes() const { return amps_; }
  Vector& raw() { return amps_; }
  Complex operator[](std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }

  double norm() const { return amps_.norm(); }
  // this on the leading wires, other on the trailing wires.
  StateVector tensor(const StateVector& other) const;

 private:
  std::size_t n_;
  Vector amps_;
};

class DensityMatrix {
 public:
  explicit DensityMatrix(std::size_t n_qubits = 1);
  static DensityMatrix pure(const StateVector& psi);
  // Checks Hermiticity, unit trace and positivity.
  static DensityMatrix from_matrix(Matrix m);
  static DensityMatrix from_matrix_unchecked(Matrix m);

  std::size_t n_qubits() const { return n_; }
  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Matrix& raw() { return m_; }

  Complex trace() const { return m_.trace(); }
  double min_eigenvalue() const;
  DensityMatrix tensor(const DensityMatrix& other) const;
  // Throws std::domain_error naming the violated invariant.
  void validate() const;

 private:
  std::size_t n_;
  Matrix m_;
};

struct UnitaryOp {
  std::size_t n_qubits = 0;
  Matrix matrix;

  UnitaryOp adjoint() const { return UnitaryOp{n_qubits, matrix.adjoint()}; }
  bool is_unitary(double tol = 1e-8) const;
  bool is_permutation_matrix(double tol = 1e-12) const;
  // Basis image of each column; requires is_permutation_matrix().
  std::vector<std::uint64_t> as_permutation_table() const;
};

void check_qubit_cap(std::size_t n, std::size_t cap = kDefaultQubitCap);

// |<a|b>|^2
double fidelity(const StateVector& a, const StateVector& b);
// <psi|rho|psi>
double fidelity(const DensityMatrix& rho, const StateVector& psi);
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace qsec
