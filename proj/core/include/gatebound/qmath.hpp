// SPDX-License-Identifier: Apache-2.0
//
// Dense complex linear algebra for qubit operators. Everything in the
// library stores operators as row-major complex matrices in the
// computational basis with qubit 1 as the most significant bit, so the
// basis index of |j1 j2 ... jn> is the integer with binary digits j1...jn.

#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace gatebound {

using cxd = std::complex<double>;

// Row-major so serialized entry order matches the documented JSON layout.
using ComplexMatrix =
    Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<cxd, Eigen::Dynamic, 1>;
using RealVector = Eigen::Matrix<double, Eigen::Dynamic, 1>;

namespace qmath {

inline constexpr double kHermTol = 1e-10;

struct EigenDecomposition {
  RealVector eigenvalues;     // ascending
  ComplexMatrix eigenvectors; // orthonormal columns, A = V diag(w) V^dag
};

double max_norm(const ComplexMatrix& a);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron_vec(const ComplexVector& a, const ComplexVector& b);

// Trace over the subsystems not listed in `keep` (0-based indices into
// `dims`). The kept subsystems retain their original relative order.
ComplexMatrix partial_trace(const ComplexMatrix& a,
                            const std::vector<int>& dims,
                            const std::vector<int>& keep);

// Hermitian eigendecomposition. Input must be Hermitian within
// 1e-10 * max(1, max-norm); it is symmetrized as (A + A^dag)/2 before the
// solve. Eigenvalues come out ascending.
EigenDecomposition eigh(const ComplexMatrix& a);

// Eigenvalues only (same preconditions), for large certification solves.
RealVector eigh_values(const ComplexMatrix& a);

ComplexMatrix dagger(const ComplexMatrix& a);
ComplexMatrix transpose(const ComplexMatrix& a);
cxd trace(const ComplexMatrix& a);
ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_hermitian(const ComplexMatrix& a, double tol = kHermTol);

ComplexMatrix identity(Eigen::Index dim);

// Single-qubit constants.
ComplexMatrix pauli_i();
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();
ComplexMatrix hadamard();

// n-fold Kronecker power.
ComplexMatrix kron_pow(const ComplexMatrix& a, int n);

} // namespace qmath
} // namespace gatebound
