#include "qsec/qsim/channels.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "qsec/qsim/gates.hpp"

namespace qsec {

namespace {

DensityMatrix pad_zeros(const DensityMatrix& rho, std::size_t r_bits, std::size_t held) {
  if (held > rho.n_qubits()) throw std::invalid_argument("perm channel: held register exceeds input");
  check_qubit_cap(rho.n_qubits() + r_bits);
  if (r_bits == 0) return rho;
  return rho.tensor(DensityMatrix(r_bits));
}

}  // namespace

DensityMatrix avg_perm_channel(const DensityMatrix& rho, std::size_t r_bits, std::size_t held) {
  DensityMatrix sigma = pad_zeros(rho, r_bits, held);
  std::size_t perm_bits = sigma.n_qubits() - held;
  auto N = Eigen::Index{1} << perm_bits;
  auto H = Eigen::Index{1} << held;
  const Matrix& s = sigma.matrix();

  // Blocks of sigma on the held register, indexed by the permuted register.
  Matrix diag_sum = Matrix::Zero(H, H);
  Matrix off_sum = Matrix::Zero(H, H);
  for (Eigen::Index y = 0; y < N; ++y) {
    for (Eigen::Index y2 = 0; y2 < N; ++y2) {
      Matrix block(H, H);
      for (Eigen::Index h = 0; h < H; ++h) {
        for (Eigen::Index h2 = 0; h2 < H; ++h2) block(h, h2) = s(h * N + y, h2 * N + y2);
      }
      if (y == y2) {
        diag_sum += block;
      } else {
        off_sum += block;
      }
    }
  }

  Matrix identity_part = Matrix::Identity(N, N) / static_cast<double>(N);
  Matrix offdiag_part = Matrix::Ones(N, N) - Matrix::Identity(N, N);
  if (N > 1) offdiag_part /= static_cast<double>(N) * static_cast<double>(N - 1);

  Matrix out = Matrix::Zero(H * N, H * N);
  for (Eigen::Index h = 0; h < H; ++h) {
    for (Eigen::Index h2 = 0; h2 < H; ++h2) {
      out.block(h * N, h2 * N, N, N) = diag_sum(h, h2) * identity_part + off_sum(h, h2) * offdiag_part;
    }
  }
  return DensityMatrix::from_matrix_unchecked(std::move(out));
}

DensityMatrix avg_perm_channel_exhaustive(const DensityMatrix& rho, std::size_t r_bits, std::size_t held) {
  std::size_t perm_bits = rho.n_qubits() - std::min(held, rho.n_qubits()) + r_bits;
  if (perm_bits > 3) throw std::invalid_argument("avg_perm_channel_exhaustive: permuted register too wide");
  std::vector<std::uint64_t> table(std::size_t{1} << perm_bits);
  std::iota(table.begin(), table.end(), 0);
  DensityMatrix sigma = pad_zeros(rho, r_bits, held);
  Matrix acc = Matrix::Zero(sigma.matrix().rows(), sigma.matrix().cols());
  std::size_t count = 0;
  do {
    Permutation p(perm_bits, table);
    acc += apply_basis_permutation(sigma, p, wire_range(held, perm_bits)).matrix();
    ++count;
  } while (std::next_permutation(table.begin(), table.end()));
  return DensityMatrix::from_matrix_unchecked(acc / static_cast<double>(count));
}

DensityMatrix perm_channel_apply(const DensityMatrix& rho, std::size_t r_bits, const Permutation& perm,
                                 std::size_t held) {
  DensityMatrix sigma = pad_zeros(rho, r_bits, held);
  std::size_t perm_bits = sigma.n_qubits() - held;
  return apply_basis_permutation(sigma, perm, wire_range(held, perm_bits));
}

DensityMatrix perm_channel_sample(const DensityMatrix& rho, std::size_t r_bits, Rng& rng, std::size_t held) {
  if (held > rho.n_qubits()) throw std::invalid_argument("perm channel: held register exceeds input");
  std::size_t perm_bits = rho.n_qubits() - held + r_bits;
  std::vector<std::uint64_t> table(std::size_t{1} << perm_bits);
  std::iota(table.begin(), table.end(), 0);
  for (std::size_t i = table.size(); i > 1; --i) std::swap(table[i - 1], table[rng.below(i)]);
  return perm_channel_apply(rho, r_bits, Permutation(perm_bits, std::move(table)), held);
}

}  // namespace qsec
