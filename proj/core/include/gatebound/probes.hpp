// SPDX-License-Identifier: Apache-2.0
//
// Partially conjugate product probe bases, the R_k operators and the
// process-fidelity bounds built from weighted average state fidelities,
// plus the numerical certification of the operator inequalities behind
// them (R >= 0, R' >= 0, R - R' >= 0, R_k - chi_U/2^n >= 0).

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gatebound/channels.hpp"

namespace gatebound {
namespace probes {

// Basis k: qubit k in {|+>,|->}, the rest in {|0>,|1>}; state j is built
// from the binary digits of j-1 (qubit 1 = MSB) before the Hadamard
// insertion. The primed variant applies H on every qubit afterwards.
struct ProbeBasis {
  int n_qubits = 0;
  int k = 0;
  bool primed = false;
  std::vector<channels::PureState> states;

  std::string label() const;  // "1", "2", ..., "3p"
};

struct HofmannEntry {
  std::string basis_a;
  std::string basis_b;
  double value = 0.0;
};

struct BoundReport {
  int n_qubits = 0;
  std::vector<double> fidelities;     // F_k, k = 1..n
  double lower_bound = 0.0;           // sum F_k - n + 1
  double upper_bound = 0.0;           // min F_k
  std::optional<HofmannEntry> hofmann;
  std::optional<double> exact;        // F_chi when the Choi matrix is known
  // Propagated uncertainties (filled by the estimation pipeline).
  std::optional<std::vector<double>> sigma;       // per-basis 1 sigma
  std::optional<double> lower_bound_sigma;        // 1 sigma on the sum
};

struct StateFidelities {
  double average = 0.0;                        // F_k
  std::vector<std::optional<double>> f;        // per-probe output fidelity
  std::vector<double> p;                       // per-probe success probability
};

ProbeBasis probe_basis(int n, int k);
// H^(x)n applied to basis k, probe by probe.
ProbeBasis probe_basis_primed(int n, int k);
// The fully conjugate partner of basis n (column 3' of the three-qubit table).
ProbeBasis probe_basis_all_hadamard(int n);

// Human-readable probe labels, e.g. "+00", "-11" for basis 1 of 3 qubits.
std::vector<std::string> probe_labels(const ProbeBasis& basis);

// R_k = sum_j psi^T (x) U psi U^dag.
ComplexMatrix r_k_operator(const ComplexMatrix& u, const ProbeBasis& basis);

// Weighted mean of output fidelities, weights = success probabilities.
// With strict = false, probes with p = 0 drop out of the mean and their f
// is left unset; with strict = true they raise.
StateFidelities average_state_fidelity(const channels::ChoiMatrix& chi,
                                       const ComplexMatrix& u,
                                       const ProbeBasis& basis,
                                       bool strict = false);

double lower_bound_nqubit(const std::vector<double>& fidelities);
double hofmann_bound(double f_a, double f_b);
double upper_bound(const std::vector<double>& fidelities);

// R = chi_U / 2^n - sum_k R_k + (n-1) I.
ComplexMatrix r_operator(const ComplexMatrix& u, int n);
// R' = chi_U / 8 - R_3 - R_3' + I (three qubits).
ComplexMatrix r_prime_operator(const ComplexMatrix& u);

// Integer spectrum of the Bell-regrouped bound operator, computed both by
// enumerating Bell-string labels and by an explicit eigendecomposition.
struct TTildeSpectrum {
  std::map<long, long> analytic;   // eigenvalue -> multiplicity
  std::map<long, long> numeric;
  bool match = false;
};
TTildeSpectrum t_tilde_spectrum(int n);

// The regrouped operator itself (for spectral tests); dim 4^n.
ComplexMatrix t_tilde_matrix(int n);

// Choi matrices of the operations saturating the lower bound: U and
// U Sigma_m for each qubit m; for n = 2 also U composed with the four
// extra generators sigma_X(x)I, I(x)sigma_X, sigma_X(x)sigma_Z,
// sigma_Z(x)sigma_X.
struct TightnessState {
  std::string label;
  channels::ChoiMatrix chi;
};
std::vector<TightnessState> tightness_states(const ComplexMatrix& u, int n);

// gap = F_chi - sum F_k + n - 1, cap = (n-1)(1 - F_chi); asserts
// -1e-9 <= gap <= cap + 1e-9.
struct GapCheck {
  double gap = 0.0;
  double cap = 0.0;
};
GapCheck infidelity_gap_check(const channels::ChoiMatrix& chi,
                              const ComplexMatrix& u, int n);

bool is_diagonal_unitary(const ComplexMatrix& u, double tol = 1e-10);

// True when every U|psi_{j,k}> is a product state across every
// single-qubit bipartition (largest Schmidt coefficient 1 within 1e-10).
bool product_output_check(const ComplexMatrix& u, const ProbeBasis& basis);

// Full bound pipeline for a channel: F_k for k = 1..n, bounds, exact
// fidelity, optional Hofmann pair (basis index and its primed partner).
BoundReport bound_report(const channels::ChoiMatrix& chi,
                         const ComplexMatrix& u,
                         std::optional<int> hofmann_k = std::nullopt);

// {n, F, lower_bound, upper_bound, hofmann, exact} (+ sigma fields when set).
std::string bound_report_to_json(const BoundReport& report, int indent = -1);

} // namespace probes
} // namespace gatebound
