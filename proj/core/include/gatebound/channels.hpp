// SPDX-License-Identifier: Apache-2.0
//
// Quantum states, gates, Choi matrices and channel application.
//
// Choi convention: chi is built from the unnormalized maximally entangled
// vector |Phi+> = sum_j |j>_in |j>_out, so Tr[chi_U] = 2^n for a unitary U
// and Tr[apply_channel(chi, rho)] is the success probability of rho.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gatebound/qmath.hpp"

namespace gatebound {
namespace channels {

struct PureState {
  int n_qubits = 0;
  ComplexVector amplitudes;
  // |Phi+> style vectors are carried unnormalized with this flag cleared.
  bool normalized = true;

  PureState() = default;
  PureState(int n, ComplexVector amp, bool norm = true);

  Eigen::Index dim() const { return amplitudes.size(); }
  ComplexMatrix projector() const;
};

struct DensityMatrix {
  int n_qubits = 0;
  ComplexMatrix matrix;

  DensityMatrix() = default;
  DensityMatrix(int n, ComplexMatrix m);  // validates Hermitian/PSD/trace

  double trace_real() const { return matrix.trace().real(); }
};

struct ChoiMatrix {
  int n_qubits = 0;
  ComplexMatrix matrix;  // dim 4^n, input (x) output ordering
  static constexpr const char* kConvention = "unnormalized-phi-plus";

  ChoiMatrix() = default;
  ChoiMatrix(int n, ComplexMatrix m);  // validates Hermitian/PSD/trace bound

  // For matrices positive semidefinite by construction (outer products,
  // convex mixtures, congruences); skips the eigensolve validation.
  static ChoiMatrix unchecked(int n, ComplexMatrix m);

  double trace_real() const { return matrix.trace().real(); }
};

struct KrausSet {
  int n_qubits = 0;
  std::vector<ComplexMatrix> operators;

  KrausSet() = default;
  KrausSet(int n, std::vector<ComplexMatrix> ops);  // validates sum K^dag K <= I
};

// --- states -----------------------------------------------------------

// Computational basis state |index> on n qubits (qubit 1 = MSB).
PureState basis_state(int n, int index);

// Product state from per-qubit labels drawn from {'0','1','+','-'}.
PureState product_state(const std::string& labels);

// Unnormalized |Phi+> = sum_j |j>_in |j>_out on 2n qubits.
ComplexVector phi_plus_vector(int n);

// |<a|b>|^2-style comparison that ignores global phase.
double projector_distance(const PureState& a, const PureState& b);

// --- gates ------------------------------------------------------------

// N-qubit controlled-Z: -1 on the all-ones state, +1 elsewhere.
ComplexMatrix cnz_unitary(int n);

// Toffoli with the given target qubit (1-based), as H_t . CCZ . H_t.
ComplexMatrix toffoli_unitary(int target);

// Pi phase flip on qubit m (1-based): I ... sigma_Z ... I.
ComplexMatrix sigma_m(int n, int m);

// Single-qubit gate embedded at qubit position m (1-based) of n qubits.
ComplexMatrix embed_single_qubit(const ComplexMatrix& g, int n, int m);

bool is_unitary(const ComplexMatrix& u, double tol = 1e-10);

// --- Choi machinery ----------------------------------------------------

ChoiMatrix choi_of_unitary(const ComplexMatrix& u);
ChoiMatrix choi_of_kraus(const KrausSet& ks);

// rho_out = Tr_in[(rho_in^T (x) I) chi]; output trace = success probability.
DensityMatrix apply_channel(const ChoiMatrix& chi, const DensityMatrix& rho_in);

// Same linear action on an arbitrary (not necessarily positive) operator,
// e.g. Pauli inputs in transfer-matrix expansions.
ComplexMatrix apply_channel_matrix(const ChoiMatrix& chi, const ComplexMatrix& op);

// F_chi = Tr[chi chi_U] / (2^n Tr[chi]).
double process_fidelity(const ChoiMatrix& chi, const ComplexMatrix& u);

// Fidelity between C^nZ and the identity: 1 - 2^(2-n) + 2^(2-2n).
double identity_fidelity(int n);

// --- noise constructors -------------------------------------------------

// (1-q) chi + q * (Tr chi / 4^n) * I  (trace preserved).
ChoiMatrix depolarizing(const ChoiMatrix& chi, double q);

// Mixture sum_m w_m chi(U Sigma_m), with Sigma_0 = I. weights has n+1 entries.
ChoiMatrix phase_flip_mixture(const ComplexMatrix& u, const std::vector<double>& weights);

// Single-Kraus map from K = sum_m alpha_m U Sigma_m, rescaled to be
// trace-nonincreasing. amplitudes has n+1 entries, l2-normalized.
ChoiMatrix coherent_vm_superposition(const ComplexMatrix& u, const std::vector<cxd>& amplitudes);

// Compose chi with an input-side diagonal attenuator: success probability of
// computational input |j> is multiplied by attenuation[j].
ChoiMatrix state_dependent_loss(const ChoiMatrix& chi, const std::vector<double>& attenuation);

// --- serialization ------------------------------------------------------

// {n_qubits, convention, entries: [[re, im], ...]} row-major; doubles
// round-trip bit-exactly.
std::string choi_to_json(const ChoiMatrix& chi, int indent = -1);
ChoiMatrix choi_from_json(const std::string& text);
std::string density_to_json(const DensityMatrix& rho, int indent = -1);
DensityMatrix density_from_json(const std::string& text);

} // namespace channels
} // namespace gatebound
