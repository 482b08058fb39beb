// SPDX-License-Identifier: Apache-2.0

#include "gatebound/qmath.hpp"

#include <cmath>

namespace gatebound {
namespace qmath {

double max_norm(const ComplexMatrix& a) {
  return a.cwiseAbs().maxCoeff();
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexVector kron_vec(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& a,
                            const std::vector<int>& dims,
                            const std::vector<int>& keep) {
  Eigen::Index total = 1;
  for (int d : dims) {
    if (d <= 0) throw std::invalid_argument("partial_trace: nonpositive dim");
    total *= d;
  }
  if (a.rows() != a.cols() || a.rows() != total)
    throw std::invalid_argument("partial_trace: dimension mismatch");

  const int ns = static_cast<int>(dims.size());
  std::vector<bool> kept(ns, false);
  for (int k : keep) {
    if (k < 0 || k >= ns) throw std::invalid_argument("partial_trace: bad keep index");
    kept[k] = true;
  }

  Eigen::Index dim_keep = 1, dim_tr = 1;
  for (int s = 0; s < ns; ++s) (kept[s] ? dim_keep : dim_tr) *= dims[s];

  // Strides of each subsystem in the flat index (row-major over subsystems).
  std::vector<Eigen::Index> stride(ns, 1);
  for (int s = ns - 2; s >= 0; --s) stride[s] = stride[s + 1] * dims[s + 1];

  std::vector<int> keep_subs, tr_subs;
  for (int s = 0; s < ns; ++s) (kept[s] ? keep_subs : tr_subs).push_back(s);

  auto flat_index = [&](Eigen::Index keep_idx, Eigen::Index tr_idx) {
    Eigen::Index idx = 0;
    Eigen::Index rem = keep_idx;
    for (int pos = static_cast<int>(keep_subs.size()) - 1; pos >= 0; --pos) {
      int s = keep_subs[pos];
      idx += (rem % dims[s]) * stride[s];
      rem /= dims[s];
    }
    rem = tr_idx;
    for (int pos = static_cast<int>(tr_subs.size()) - 1; pos >= 0; --pos) {
      int s = tr_subs[pos];
      idx += (rem % dims[s]) * stride[s];
      rem /= dims[s];
    }
    return idx;
  };

  ComplexMatrix out = ComplexMatrix::Zero(dim_keep, dim_keep);
  for (Eigen::Index r = 0; r < dim_keep; ++r)
    for (Eigen::Index c = 0; c < dim_keep; ++c) {
      cxd acc(0.0, 0.0);
      for (Eigen::Index t = 0; t < dim_tr; ++t)
        acc += a(flat_index(r, t), flat_index(c, t));
      out(r, c) = acc;
    }
  return out;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  const double scale = std::max(1.0, max_norm(a));
  return max_norm(ComplexMatrix(a - a.adjoint())) <= tol * scale;
}

namespace {

ComplexMatrix symmetrized_checked(const ComplexMatrix& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("eigh: matrix not square");
  if (!is_hermitian(a))
    throw std::invalid_argument("eigh: matrix not Hermitian within tolerance");
  return ComplexMatrix(0.5 * (a + a.adjoint()));
}

} // namespace

EigenDecomposition eigh(const ComplexMatrix& a) {
  const ComplexMatrix h = symmetrized_checked(a);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigh: eigensolver failed to converge");
  return EigenDecomposition{solver.eigenvalues(), solver.eigenvectors()};
}

RealVector eigh_values(const ComplexMatrix& a) {
  const ComplexMatrix h = symmetrized_checked(a);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigh: eigensolver failed to converge");
  return solver.eigenvalues();
}

ComplexMatrix dagger(const ComplexMatrix& a) { return a.adjoint(); }

ComplexMatrix transpose(const ComplexMatrix& a) { return a.transpose(); }

cxd trace(const ComplexMatrix& a) {
  if (a.rows() != a.cols())
    throw std::invalid_argument("trace: matrix not square");
  return a.trace();
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw std::invalid_argument("matmul: dimension mismatch");
  return a * b;
}

ComplexMatrix identity(Eigen::Index dim) {
  return ComplexMatrix::Identity(dim, dim);
}

ComplexMatrix pauli_i() { return identity(2); }

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << cxd(0, 0), cxd(0, -1), cxd(0, 1), cxd(0, 0);
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

ComplexMatrix hadamard() {
  const double s = 1.0 / std::sqrt(2.0);
  ComplexMatrix m(2, 2);
  m << s, s, s, -s;
  return m;
}

ComplexMatrix kron_pow(const ComplexMatrix& a, int n) {
  if (n < 0) throw std::invalid_argument("kron_pow: negative power");
  ComplexMatrix out = identity(1);
  for (int i = 0; i < n; ++i) out = kron(out, a);
  return out;
}

} // namespace qmath
} // namespace gatebound
