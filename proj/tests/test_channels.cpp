// SPDX-License-Identifier: Apache-2.0

#include "doctest.h"

#include <cstring>

#include "gatebound/channels.hpp"
#include "test_helpers.hpp"

using namespace gatebound;
using namespace gatebound::channels;

namespace {

double diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return qmath::max_norm(ComplexMatrix(a - b));
}

DensityMatrix density_of(const ComplexMatrix& m, int n) {
  DensityMatrix rho;
  rho.n_qubits = n;
  rho.matrix = m;
  return rho;
}

} // namespace

TEST_CASE("cnz unitary") {
  CHECK(diff(cnz_unitary(1), qmath::pauli_z()) == 0.0);

  ComplexMatrix cz = qmath::identity(4);
  cz(3, 3) = -1;
  CHECK(diff(cnz_unitary(2), cz) == 0.0);

  ComplexMatrix ccz = qmath::identity(8);
  ccz(7, 7) = -1;
  CHECK(diff(cnz_unitary(3), ccz) == 0.0);

  CHECK_THROWS_AS(cnz_unitary(0), std::invalid_argument);

  for (int n = 1; n <= 5; ++n) {
    const ComplexMatrix u = cnz_unitary(n);
    CHECK(diff(ComplexMatrix(u * u), qmath::identity(u.rows())) == 0.0);
    int minus = 0;
    for (Eigen::Index r = 0; r < u.rows(); ++r)
      for (Eigen::Index c = 0; c < u.cols(); ++c) {
        if (r != c) CHECK(std::abs(u(r, c)) == 0.0);
        if (r == c && u(r, c).real() < 0) ++minus;
      }
    CHECK(minus == 1);
  }
}

TEST_CASE("toffoli unitary") {
  const ComplexMatrix t3 = toffoli_unitary(3);
  ComplexVector e110 = ComplexVector::Zero(8);
  e110(6) = 1.0;
  ComplexVector out = t3 * e110;
  CHECK(std::abs(out(7) - cxd(1.0, 0.0)) < 1e-14);  // |110> -> |111>

  ComplexVector e100 = ComplexVector::Zero(8);
  e100(4) = 1.0;
  out = t3 * e100;
  CHECK(std::abs(out(4) - cxd(1.0, 0.0)) < 1e-14);  // controls unsatisfied

  // Target = 1: the only moved basis states are |011> <-> |111>.
  const ComplexMatrix t1 = toffoli_unitary(1);
  for (Eigen::Index b = 0; b < 8; ++b) {
    ComplexVector e = ComplexVector::Zero(8);
    e(b) = 1.0;
    const ComplexVector o = t1 * e;
    const Eigen::Index want = (b == 3) ? 7 : (b == 7) ? 3 : b;
    CHECK(std::abs(o(want) - cxd(1.0, 0.0)) < 1e-14);
  }

  CHECK_THROWS_AS(toffoli_unitary(0), std::invalid_argument);
  CHECK_THROWS_AS(toffoli_unitary(4), std::invalid_argument);
}

TEST_CASE("sigma_m") {
  CHECK(diff(sigma_m(1, 1), qmath::pauli_z()) == 0.0);
  CHECK_THROWS_AS(sigma_m(2, 3), std::invalid_argument);

  // Sigma_m flips |+> and |-> on qubit m.
  const ComplexMatrix s2 = sigma_m(2, 2);
  const PureState plus = product_state("0+");
  const PureState minus = product_state("0-");
  CHECK((s2 * plus.amplitudes - minus.amplitudes).norm() < 1e-15);
}

TEST_CASE("choi of unitary") {
  // Identity on one qubit: 2 * projector onto the normalized Bell state.
  const ChoiMatrix chi_i = choi_of_unitary(qmath::identity(2));
  ComplexVector bell(4);
  bell << 1, 0, 0, 1;
  bell /= std::sqrt(2.0);
  CHECK(diff(chi_i.matrix, ComplexMatrix(2.0 * bell * bell.adjoint())) < 1e-15);

  // CCZ: trace 8, rank 1 (eigenvalue 8 once, 0 with multiplicity 63).
  const ChoiMatrix chi_ccz = choi_of_unitary(cnz_unitary(3));
  CHECK(chi_ccz.trace_real() == doctest::Approx(8.0).epsilon(1e-14));
  const RealVector w = qmath::eigh_values(chi_ccz.matrix);
  CHECK(w(63) == doctest::Approx(8.0).epsilon(1e-12));
  for (Eigen::Index i = 0; i < 63; ++i) CHECK(std::abs(w(i)) < 1e-10);

  // Choi of sigma_Z is orthogonal to the Choi of the identity.
  const ChoiMatrix chi_z = choi_of_unitary(qmath::pauli_z());
  CHECK(std::abs((chi_z.matrix * chi_i.matrix).trace()) < 1e-14);

  ComplexMatrix not_unitary = qmath::identity(2);
  not_unitary(0, 0) = 0.5;
  CHECK_THROWS_AS(choi_of_unitary(not_unitary), std::invalid_argument);
}

TEST_CASE("choi of kraus") {
  rng::Pcg32 gen = rng::derive_stream(21, {1});
  const ComplexMatrix u = testutil::random_unitary(gen, 4);
  const ChoiMatrix via_kraus = choi_of_kraus(KrausSet(2, {u}));
  const ChoiMatrix via_unitary = choi_of_unitary(u);
  CHECK(diff(via_kraus.matrix, via_unitary.matrix) < 1e-12);

  // One-qubit dephasing Kraus set: direct expansion of the Choi matrix.
  const double q = 0.3;
  const ComplexMatrix k0 = std::sqrt(1.0 - q) * qmath::identity(2);
  const ComplexMatrix k1 = std::sqrt(q) * qmath::pauli_z();
  const ChoiMatrix chi = choi_of_kraus(KrausSet(1, {k0, k1}));
  CHECK(chi.trace_real() == doctest::Approx(2.0).epsilon(1e-14));
  ComplexMatrix want = ComplexMatrix::Zero(4, 4);
  want(0, 0) = 1.0;
  want(3, 3) = 1.0;
  want(0, 3) = 1.0 - 2.0 * q;  // coherence shrinks by (1-q) - q
  want(3, 0) = 1.0 - 2.0 * q;
  CHECK(diff(chi.matrix, want) < 1e-14);

  CHECK_THROWS_AS(KrausSet(1, {}), std::invalid_argument);
  CHECK_THROWS_AS(KrausSet(1, {ComplexMatrix(ComplexMatrix::Zero(2, 2))}),
                  std::invalid_argument);
  // Over-complete set violates trace-nonincreasing.
  CHECK_THROWS_AS(KrausSet(1, {qmath::identity(2), qmath::pauli_z()}),
                  std::domain_error);
}

TEST_CASE("apply channel") {
  const ComplexMatrix u = cnz_unitary(3);
  const ChoiMatrix chi = choi_of_unitary(u);

  // |111> is an eigenstate up to phase, so the density matrix is fixed.
  const DensityMatrix in = density_of(basis_state(3, 7).projector(), 3);
  const DensityMatrix out = apply_channel(chi, in);
  CHECK(out.trace_real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(diff(out.matrix, in.matrix) < 1e-13);

  // Scaled Kraus {U/3}: success probability 1/9 on every input.
  const ChoiMatrix chi_third = choi_of_kraus(KrausSet(3, {ComplexMatrix(u / 3.0)}));
  rng::Pcg32 gen = rng::derive_stream(22, {1});
  const ComplexMatrix rho = testutil::random_density(gen, 8);
  const DensityMatrix out_third = apply_channel(chi_third, density_of(rho, 3));
  CHECK(out_third.trace_real() == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
  CHECK(diff(out_third.matrix, ComplexMatrix(u * rho * u.adjoint() / 9.0)) < 1e-12);

  // Full dephasing maps |+><+| to I/2.
  const ChoiMatrix deph = choi_of_kraus(
      KrausSet(1, {ComplexMatrix(std::sqrt(0.5) * qmath::identity(2)),
                   ComplexMatrix(std::sqrt(0.5) * qmath::pauli_z())}));
  const DensityMatrix plus_out =
      apply_channel(deph, density_of(product_state("+").projector(), 1));
  CHECK(diff(plus_out.matrix, ComplexMatrix(0.5 * qmath::identity(2))) < 1e-14);

  CHECK_THROWS_AS(apply_channel(deph, density_of(rho, 3)), std::invalid_argument);
}

TEST_CASE("channel application equals conjugation for random unitaries") {
  for (std::uint64_t s = 0; s < 200; ++s) {
    rng::Pcg32 gen = rng::derive_stream(23, {s});
    const int n = 1 + static_cast<int>(s % 3);
    const Eigen::Index d = Eigen::Index(1) << n;
    const ComplexMatrix u = testutil::random_unitary(gen, d);
    const ComplexMatrix rho = testutil::random_density(gen, d);
    const DensityMatrix out = apply_channel(choi_of_unitary(u), density_of(rho, n));
    CHECK(diff(out.matrix, ComplexMatrix(u * rho * u.adjoint())) <= 1e-10);
  }
}

TEST_CASE("process fidelity") {
  const ComplexMatrix u = cnz_unitary(3);
  const ChoiMatrix chi = choi_of_unitary(u);
  CHECK(process_fidelity(chi, u) == doctest::Approx(1.0).epsilon(1e-12));

  // U preceded by a single-qubit phase flip is orthogonal in process space.
  for (int m = 1; m <= 3; ++m) {
    const ChoiMatrix chi_vm = choi_of_unitary(ComplexMatrix(u * sigma_m(3, m)));
    CHECK(std::abs(process_fidelity(chi_vm, u)) < 1e-12);
  }

  // C^nZ versus identity reproduces the closed form.
  for (int n = 1; n <= 6; ++n) {
    const ChoiMatrix chi_cnz = choi_of_unitary(cnz_unitary(n));
    CHECK(std::abs(process_fidelity(chi_cnz, qmath::identity(Eigen::Index(1) << n)) -
                   identity_fidelity(n)) <= 1e-10);
  }
  CHECK(identity_fidelity(1) == doctest::Approx(0.0));
  CHECK(identity_fidelity(3) == doctest::Approx(0.5625));
  for (int n = 2; n <= 12; ++n)
    CHECK(identity_fidelity(n) > identity_fidelity(n - 1));
}

TEST_CASE("process fidelity is linear in the Choi matrix") {
  rng::Pcg32 gen = rng::derive_stream(24, {7});
  const ComplexMatrix u = testutil::random_unitary(gen, 4);
  const ChoiMatrix a = testutil::random_channel(gen, 2);
  const ChoiMatrix b = testutil::random_channel(gen, 2);
  const double alpha = 0.3, beta = 0.6;
  const ChoiMatrix mix(2, ComplexMatrix(alpha * a.matrix + beta * b.matrix));
  const double via_traces =
      (alpha * a.trace_real() * process_fidelity(a, u) +
       beta * b.trace_real() * process_fidelity(b, u)) /
      (alpha * a.trace_real() + beta * b.trace_real());
  CHECK(std::abs(process_fidelity(mix, u) - via_traces) <= 1e-10);
}

TEST_CASE("process fidelity of unitary pairs equals |Tr U+V|^2 / 4^n") {
  for (std::uint64_t s = 0; s < 50; ++s) {
    rng::Pcg32 gen = rng::derive_stream(25, {s});
    const int n = 1 + static_cast<int>(s % 3);
    const Eigen::Index d = Eigen::Index(1) << n;
    const ComplexMatrix u = testutil::random_unitary(gen, d);
    const ComplexMatrix v = testutil::random_unitary(gen, d);
    const double oracle =
        std::norm((u.adjoint() * v).trace()) / std::pow(4.0, n);
    CHECK(std::abs(process_fidelity(choi_of_unitary(v), u) - oracle) <= 1e-10);
  }
  CHECK_THROWS_AS(
      process_fidelity(ChoiMatrix(1, ComplexMatrix(ComplexMatrix::Zero(4, 4))),
                       qmath::identity(2)),
      std::invalid_argument);
}

TEST_CASE("noise constructors") {
  const ComplexMatrix u = cnz_unitary(3);
  const ChoiMatrix chi = choi_of_unitary(u);

  CHECK(diff(depolarizing(chi, 0.0).matrix, chi.matrix) == 0.0);
  const ChoiMatrix dep = depolarizing(chi, 0.4);
  CHECK(dep.trace_real() == doctest::Approx(chi.trace_real()).epsilon(1e-12));
  CHECK_THROWS_AS(depolarizing(chi, 1.5), std::invalid_argument);

  // Uniform phase-flip mixture: F_chi = 1/(n+1).
  const ChoiMatrix mix = phase_flip_mixture(u, {0.25, 0.25, 0.25, 0.25});
  CHECK(process_fidelity(mix, u) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK_THROWS_AS(phase_flip_mixture(u, {0.5, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(phase_flip_mixture(u, {0.7, 0.1, 0.1, 0.2}), std::invalid_argument);

  // Loss only on |111>: success probabilities spread out.
  std::vector<double> att(8, 1.0);
  att[7] = 0.5;
  const ChoiMatrix lossy = state_dependent_loss(chi, att);
  const DensityMatrix p111 =
      apply_channel(lossy, density_of(basis_state(3, 7).projector(), 3));
  const DensityMatrix p000 =
      apply_channel(lossy, density_of(basis_state(3, 0).projector(), 3));
  CHECK(p111.trace_real() == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(p000.trace_real() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(state_dependent_loss(chi, {0.5}), std::invalid_argument);

  // Coherent superpositions of the phase-flip family stay physical.
  rng::Pcg32 gen = rng::derive_stream(26, {1});
  std::vector<cxd> amps(4);
  double norm2 = 0.0;
  for (auto& a : amps) {
    a = cxd(gen.normal(), gen.normal());
    norm2 += std::norm(a);
  }
  for (auto& a : amps) a /= std::sqrt(norm2);
  const ChoiMatrix coh = coherent_vm_superposition(u, amps);
  CHECK(coh.trace_real() <= 8.0 + 1e-9);
}

TEST_CASE("serialization round-trips bit-exactly") {
  rng::Pcg32 gen = rng::derive_stream(27, {1});
  const ChoiMatrix chi = testutil::random_channel(gen, 2);
  const ChoiMatrix back = choi_from_json(choi_to_json(chi));
  CHECK(back.n_qubits == chi.n_qubits);
  REQUIRE(back.matrix.rows() == chi.matrix.rows());
  CHECK(std::memcmp(back.matrix.data(), chi.matrix.data(),
                    sizeof(cxd) * chi.matrix.size()) == 0);

  const DensityMatrix rho = density_of(testutil::random_density(gen, 4), 2);
  const DensityMatrix rho_back = density_from_json(density_to_json(rho));
  CHECK(std::memcmp(rho_back.matrix.data(), rho.matrix.data(),
                    sizeof(cxd) * rho.matrix.size()) == 0);

  CHECK(choi_to_json(chi).find("unnormalized-phi-plus") != std::string::npos);
}
