#include "qsec/qsim/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qsec/qsim/gates.hpp"

namespace qsec {

namespace {

Matrix permutation_matrix(const std::vector<std::uint64_t>& table) {
  auto d = static_cast<Eigen::Index>(table.size());
  Matrix u = Matrix::Zero(d, d);
  for (Eigen::Index c = 0; c < d; ++c) u(static_cast<Eigen::Index>(table[static_cast<std::size_t>(c)]), c) = 1.0;
  return u;
}

std::size_t width_of(const UnitaryOp& u) {
  if (u.matrix.rows() != u.matrix.cols() || u.matrix.rows() != (Eigen::Index{1} << u.n_qubits)) {
    throw std::invalid_argument("UnitaryOp: matrix shape does not match n_qubits");
  }
  return u.n_qubits;
}

}  // namespace

UnitaryOp type1_oracle(const std::vector<std::uint64_t>& table, std::size_t in_bits, std::size_t out_bits) {
  check_qubit_cap(in_bits + out_bits);
  if (table.size() != (std::size_t{1} << in_bits)) throw std::invalid_argument("type1_oracle: table incomplete");
  std::uint64_t out_mask = (std::uint64_t{1} << out_bits) - 1;
  std::vector<std::uint64_t> t(std::size_t{1} << (in_bits + out_bits));
  for (std::uint64_t x = 0; x < table.size(); ++x) {
    if (table[x] > out_mask) throw std::invalid_argument("type1_oracle: table value exceeds out_bits");
    for (std::uint64_t y = 0; y <= out_mask; ++y) t[(x << out_bits) | y] = (x << out_bits) | (y ^ table[x]);
  }
  return UnitaryOp{in_bits + out_bits, permutation_matrix(t)};
}

UnitaryOp type2_oracle(const Permutation& perm) {
  check_qubit_cap(perm.domain_bits());
  return UnitaryOp{perm.domain_bits(), permutation_matrix(perm.forward())};
}

UnitaryOp type1_from_type2(const UnitaryOp& enc2, const UnitaryOp& dec2, std::size_t msg_bits) {
  std::size_t c = width_of(enc2);
  if (width_of(dec2) != c) throw std::invalid_argument("type1_from_type2: width mismatch");
  if (msg_bits > c) throw std::invalid_argument("type1_from_type2: message wider than ciphertext");
  std::size_t m = msg_bits;
  std::size_t total = 2 * c;
  check_qubit_cap(total);

  std::vector<std::size_t> work = wire_range(0, c);
  std::vector<std::size_t> y_wires = wire_range(c, c);
  std::size_t anc = c - m;
  std::size_t out_n = m + c;
  Matrix result = Matrix::Zero(Eigen::Index{1} << out_n, Eigen::Index{1} << out_n);

  auto full_index = [&](std::uint64_t x, std::uint64_t a, std::uint64_t y) {
    return (((x << anc) | a) << c) | y;
  };
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << m); ++x) {
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << c); ++y) {
      StateVector s = StateVector::basis(total, full_index(x, 0, y));
      s = apply_unitary(s, enc2.matrix, work);
      for (std::size_t j = 0; j < c; ++j) s = apply_gate(s, Gate::CNOT, {work[j], y_wires[j]});
      s = apply_unitary(s, dec2.matrix, work);

      Eigen::Index col = static_cast<Eigen::Index>((x << c) | y);
      double kept = 0.0;
      for (std::uint64_t xo = 0; xo < (std::uint64_t{1} << m); ++xo) {
        for (std::uint64_t yo = 0; yo < (std::uint64_t{1} << c); ++yo) {
          Complex amp = s[full_index(xo, 0, yo)];
          result(static_cast<Eigen::Index>((xo << c) | yo), col) = amp;
          kept += std::norm(amp);
        }
      }
      if (std::abs(kept - 1.0) > 1e-8) throw std::domain_error("type1_from_type2: ancilla not returned to |0>");
    }
  }
  return UnitaryOp{out_n, std::move(result)};
}

UnitaryOp type2_from_type1(const UnitaryOp& enc1, const UnitaryOp& dec1, std::size_t msg_bits) {
  std::size_t n = width_of(enc1);
  if (width_of(dec1) != n || msg_bits > n) throw std::invalid_argument("type2_from_type1: width mismatch");
  check_qubit_cap(n);
  std::size_t m = msg_bits;
  std::size_t c = n - m;

  std::vector<std::size_t> dec_targets = wire_range(m, c);
  for (std::size_t j = 0; j < m; ++j) dec_targets.push_back(j);
  std::vector<std::uint64_t> rot(std::size_t{1} << n);
  std::uint64_t z_mask = (std::uint64_t{1} << c) - 1;
  for (std::uint64_t i = 0; i < rot.size(); ++i) rot[i] = ((i & z_mask) << m) | (i >> c);
  Permutation rotation(n, std::move(rot));

  Matrix result(Eigen::Index{1} << n, Eigen::Index{1} << n);
  for (std::uint64_t i = 0; i < (std::uint64_t{1} << n); ++i) {
    StateVector s = StateVector::basis(n, i);
    s = apply_unitary(s, enc1.matrix, all_wires(n));
    s = apply_unitary(s, dec1.matrix, dec_targets);
    s = apply_basis_permutation(s, rotation, all_wires(n));
    result.col(static_cast<Eigen::Index>(i)) = s.amplitudes();
  }
  return UnitaryOp{n, std::move(result)};
}

double type2_conversion_deviation(const UnitaryOp& converted, const UnitaryOp& direct2, std::size_t msg_bits) {
  std::size_t c = width_of(direct2);
  std::size_t m = msg_bits;
  if (width_of(converted) != m + c) throw std::invalid_argument("type2_conversion_deviation: width mismatch");
  double worst = 0.0;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << m); ++x) {
    Vector got = converted.matrix.col(static_cast<Eigen::Index>(x << c));
    Vector want = Vector::Zero(got.size());
    Eigen::Index src = static_cast<Eigen::Index>(x << (c - m));
    for (Eigen::Index row = 0; row < direct2.matrix.rows(); ++row) want(row << m) = direct2.matrix(row, src);
    worst = std::max(worst, (got - want).cwiseAbs().maxCoeff());
  }
  return worst;
}

std::vector<std::uint64_t> encryption_table(const Skes& scheme, const BitString& r) {
  if (r.size() != scheme.rand_bits()) throw std::invalid_argument("encryption_table: randomness width mismatch");
  std::size_t m = scheme.msg_bits();
  std::vector<std::uint64_t> t(std::size_t{1} << m);
  for (std::uint64_t x = 0; x < t.size(); ++x) t[x] = scheme.enc_with(BitString::from_uint(x, m), r).flatten().to_uint();
  return t;
}

std::vector<std::uint64_t> decryption_table(const Skes& scheme) {
  std::size_t c = scheme.ct_bits();
  std::vector<std::uint64_t> t(std::size_t{1} << c);
  for (std::uint64_t z = 0; z < t.size(); ++z) t[z] = scheme.dec(scheme.parse(BitString::from_uint(z, c))).to_uint();
  return t;
}

}  // namespace qsec
