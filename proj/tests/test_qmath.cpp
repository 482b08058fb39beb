// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"

#include "gatebound/qmath.hpp"
#include "test_helpers.hpp"

using namespace gatebound;
using namespace gatebound::qmath;

namespace {

double diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return max_norm(ComplexMatrix(a - b));
}

} // namespace

TEST_CASE("kron basics") {
  CHECK(diff(kron(identity(2), identity(2)), identity(4)) == 0.0);

  ComplexMatrix zz = kron(pauli_z(), pauli_z());
  ComplexMatrix want = ComplexMatrix::Zero(4, 4);
  want(0, 0) = 1; want(1, 1) = -1; want(2, 2) = -1; want(3, 3) = 1;
  CHECK(diff(zz, want) == 0.0);

  // (H (x) I)|00> = |+0>: amplitude 1/sqrt(2) on |00> and |10>.
  ComplexVector e00 = ComplexVector::Zero(4);
  e00(0) = 1.0;
  ComplexVector v = kron(hadamard(), identity(2)) * e00;
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(v(0) - s) < 1e-15);
  CHECK(std::abs(v(1)) < 1e-15);
  CHECK(std::abs(v(2) - s) < 1e-15);
  CHECK(std::abs(v(3)) < 1e-15);
}

TEST_CASE("kron associativity") {
  rng::Pcg32 gen = rng::derive_stream(11, {1});
  const ComplexMatrix a = testutil::ginibre(gen, 2);
  const ComplexMatrix b = testutil::ginibre(gen, 3);
  const ComplexMatrix c = testutil::ginibre(gen, 2);
  CHECK(diff(kron(kron(a, b), c), kron(a, kron(b, c))) <= 1e-14);
}

TEST_CASE("partial trace") {
  // Bell state: tracing either side leaves I/2.
  ComplexVector bell(4);
  bell << 1, 0, 0, 1;
  bell /= std::sqrt(2.0);
  ComplexMatrix rho = bell * bell.adjoint();
  CHECK(diff(partial_trace(rho, {2, 2}, {0}), ComplexMatrix(0.5 * identity(2))) < 1e-15);
  CHECK(diff(partial_trace(rho, {2, 2}, {1}), ComplexMatrix(0.5 * identity(2))) < 1e-15);

  // Factorized state: trace over the first factor returns the second.
  rng::Pcg32 gen = rng::derive_stream(12, {1});
  const ComplexMatrix rho_a = testutil::random_density(gen, 2);
  const ComplexMatrix rho_b = testutil::random_density(gen, 4);
  CHECK(diff(partial_trace(kron(rho_a, rho_b), {2, 4}, {1}), rho_b) < 1e-14);

  // Trace preservation.
  const ComplexMatrix big = testutil::random_density(gen, 8);
  CHECK(std::abs(trace(partial_trace(big, {2, 2, 2}, {0, 2})) - trace(big)) < 1e-13);

  CHECK_THROWS_AS(partial_trace(identity(6), {2, 2, 2}, {0}), std::invalid_argument);
}

TEST_CASE("partial trace composes over subsystems") {
  rng::Pcg32 gen = rng::derive_stream(13, {1});
  const ComplexMatrix rho = testutil::random_density(gen, 8);
  const ComplexMatrix two_step =
      partial_trace(partial_trace(rho, {2, 2, 2}, {1, 2}), {2, 2}, {1});
  const ComplexMatrix one_step = partial_trace(rho, {2, 2, 2}, {2});
  CHECK(diff(two_step, one_step) <= 1e-12);
}

TEST_CASE("eigh examples") {
  const EigenDecomposition ex = eigh(pauli_x());
  CHECK(ex.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(ex.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-12));

  ComplexMatrix d3 = ComplexMatrix::Zero(3, 3);
  d3(0, 0) = 3; d3(1, 1) = 1; d3(2, 2) = 2;
  const EigenDecomposition ed = eigh(d3);
  CHECK(ed.eigenvalues(0) == doctest::Approx(1.0));
  CHECK(ed.eigenvalues(1) == doctest::Approx(2.0));
  CHECK(ed.eigenvalues(2) == doctest::Approx(3.0));

  ComplexMatrix not_herm = ComplexMatrix::Zero(2, 2);
  not_herm(0, 1) = 1.0;
  CHECK_THROWS_AS(eigh(not_herm), std::invalid_argument);
}

TEST_CASE("eigh reconstruction and orthonormality on random Hermitian input") {
  for (std::uint64_t s = 0; s < 12; ++s) {
    rng::Pcg32 gen = rng::derive_stream(14, {s});
    const Eigen::Index dims[4] = {2, 8, 17, 64};
    const Eigen::Index d = dims[s % 4];
    ComplexMatrix g = testutil::ginibre(gen, d);
    ComplexMatrix h = 0.5 * (g + g.adjoint());
    const EigenDecomposition ed = eigh(h);
    const ComplexMatrix rebuilt = ed.eigenvectors *
                                  ed.eigenvalues.cast<cxd>().asDiagonal() *
                                  ed.eigenvectors.adjoint();
    const double scale = std::max(1.0, max_norm(h));
    CHECK(diff(rebuilt, h) <= 1e-10 * scale);
    CHECK(diff(ComplexMatrix(ed.eigenvectors.adjoint() * ed.eigenvectors),
               identity(d)) <= 1e-10);
    // Ascending order.
    for (Eigen::Index i = 1; i < d; ++i)
      CHECK(ed.eigenvalues(i) >= ed.eigenvalues(i - 1));
  }
}

TEST_CASE("dagger, trace, matmul, transpose") {
  CHECK(std::abs(trace(identity(8)) - cxd(8.0, 0.0)) == 0.0);

  rng::Pcg32 gen = rng::derive_stream(15, {1});
  const ComplexMatrix a = testutil::ginibre(gen, 5);
  CHECK(diff(dagger(dagger(a)), a) == 0.0);
  CHECK(diff(transpose(transpose(a)), a) == 0.0);

  CHECK_THROWS_AS(matmul(identity(2), identity(3)), std::invalid_argument);
  CHECK_THROWS_AS(trace(ComplexMatrix::Zero(2, 3)), std::invalid_argument);

  // Transpose is in the computational basis: pauli_y transposes to -pauli_y.
  CHECK(diff(transpose(pauli_y()), ComplexMatrix(-pauli_y())) == 0.0);
}
