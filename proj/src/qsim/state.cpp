#include "qsec/qsim/state.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qsec {

namespace {

Eigen::Index dim_of(std::size_t n) { return static_cast<Eigen::Index>(std::size_t{1} << n); }

std::size_t qubits_for_dim(Eigen::Index d) {
  std::size_t n = 0;
  while ((Eigen::Index{1} << n) < d) ++n;
  if ((Eigen::Index{1} << n) != d) throw std::invalid_argument("dimension is not a power of two");
  return n;
}

}  // namespace

void check_qubit_cap(std::size_t n, std::size_t cap) {
  if (n > cap) throw std::invalid_argument("qubit count " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
}

StateVector::StateVector(std::size_t n_qubits) : n_(n_qubits) {
  check_qubit_cap(n_qubits);
  amps_ = Vector::Zero(dim_of(n_qubits));
  amps_(0) = 1.0;
}

StateVector StateVector::basis(std::size_t n_qubits, std::uint64_t index) {
  StateVector s(n_qubits);
  if (index >= s.dim()) throw std::out_of_range("StateVector::basis: index out of range");
  s.amps_(0) = 0.0;
  s.amps_(static_cast<Eigen::Index>(index)) = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(Vector amps) {
  StateVector s = from_amplitudes_unchecked(std::move(amps));
  if (std::abs(s.amps_.squaredNorm() - 1.0) > kNormTol) throw std::domain_error("StateVector: norm is not 1");
  return s;
}

StateVector StateVector::from_amplitudes_unchecked(Vector amps) {
  std::size_t n = qubits_for_dim(amps.size());
  check_qubit_cap(n);
  StateVector s(0);
  s.n_ = n;
  s.amps_ = std::move(amps);
  return s;
}

StateVector StateVector::tensor(const StateVector& other) const {
  check_qubit_cap(n_ + other.n_);
  Vector out(amps_.size() * other.amps_.size());
  for (Eigen::Index i = 0; i < amps_.size(); ++i) {
    out.segment(i * other.amps_.size(), other.amps_.size()) = amps_(i) * other.amps_;
  }
  return from_amplitudes_unchecked(std::move(out));
}

DensityMatrix::DensityMatrix(std::size_t n_qubits) : n_(n_qubits) {
  check_qubit_cap(n_qubits);
  m_ = Matrix::Zero(dim_of(n_qubits), dim_of(n_qubits));
  m_(0, 0) = 1.0;
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return from_matrix_unchecked(psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityMatrix DensityMatrix::from_matrix(Matrix m) {
  DensityMatrix d = from_matrix_unchecked(std::move(m));
  d.validate();
  return d;
}

DensityMatrix DensityMatrix::from_matrix_unchecked(Matrix m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("DensityMatrix: matrix not square");
  std::size_t n = qubits_for_dim(m.rows());
  check_qubit_cap(n);
  DensityMatrix d(0);
  d.n_ = n;
  d.m_ = std::move(m);
  return d;
}

double DensityMatrix::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

DensityMatrix DensityMatrix::tensor(const DensityMatrix& other) const {
  check_qubit_cap(n_ + other.n_);
  Eigen::Index a = m_.rows();
  Eigen::Index b = other.m_.rows();
  Matrix out(a * b, a * b);
  for (Eigen::Index i = 0; i < a; ++i) {
    for (Eigen::Index j = 0; j < a; ++j) out.block(i * b, j * b, b, b) = m_(i, j) * other.m_;
  }
  return from_matrix_unchecked(std::move(out));
}

void DensityMatrix::validate() const {
  if (max_abs_diff(m_, m_.adjoint()) > kNormTol) throw std::domain_error("DensityMatrix: not Hermitian");
  if (std::abs(m_.trace() - Complex(1.0, 0.0)) > kNormTol) throw std::domain_error("DensityMatrix: trace is not 1");
  if (min_eigenvalue() < -kPositivityTol) throw std::domain_error("DensityMatrix: negative eigenvalue");
}

bool UnitaryOp::is_unitary(double tol) const {
  Matrix prod = matrix * matrix.adjoint();
  return max_abs_diff(prod, Matrix::Identity(prod.rows(), prod.cols())) <= tol;
}

bool UnitaryOp::is_permutation_matrix(double tol) const {
  for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
    int ones = 0;
    for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
      Complex v = matrix(r, c);
      if (std::abs(v - Complex(1.0, 0.0)) <= tol) {
        ++ones;
      } else if (std::abs(v) > tol) {
        return false;
      }
    }
    if (ones != 1) return false;
  }
  return true;
}

std::vector<std::uint64_t> UnitaryOp::as_permutation_table() const {
  std::vector<std::uint64_t> t(static_cast<std::size_t>(matrix.cols()));
  for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
    Eigen::Index row = 0;
    matrix.col(c).cwiseAbs().maxCoeff(&row);
    t[static_cast<std::size_t>(c)] = static_cast<std::uint64_t>(row);
  }
  return t;
}

double fidelity(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  return std::norm(a.amplitudes().dot(b.amplitudes()));
}

double fidelity(const DensityMatrix& rho, const StateVector& psi) {
  if (rho.dim() != psi.dim()) throw std::invalid_argument("fidelity: dimension mismatch");
  return std::real(psi.amplitudes().dot(rho.matrix() * psi.amplitudes()));
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("max_abs_diff: shape mismatch");
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qsec
