// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo gate-fidelity estimation over the Pauli-pair expansion of
// the process fidelity, and the measurement-settings accounting used to
// compare it with the direct bound protocol.
//
// For a unitary target U and a channel E (success-normalized so that its
// Choi trace is 2^n), with u = Tr[Q U P U^dag]/2^n and
// m = Tr[Q E(P)]/2^n, the exact identity F_chi = sum_pairs Pr(pair) m/u
// holds with the relevance distribution Pr = u^2 / sum u^2.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gatebound/channels.hpp"
#include "gatebound/rng.hpp"

namespace gatebound {
namespace sampling {

struct PauliLabel {
  int n = 0;
  std::string letters;  // over {I,X,Y,Z}, qubit 1 first

  static PauliLabel from_code(int n, std::uint32_t code);
  std::uint32_t code() const;  // base-4, I=0 X=1 Y=2 Z=3, qubit 1 most significant
};

// Dense Pauli operator for a label code.
ComplexMatrix pauli_matrix(int n, std::uint32_t code);

struct PauliPair {
  std::uint32_t in_code = 0;
  std::uint32_t out_code = 0;
  double coefficient = 0.0;  // u
};

struct PauliPairExpansion {
  int n = 0;
  std::vector<PauliPair> pairs;  // |u| > 1e-10 retained
  double sum_u_squared = 0.0;    // 4^n for unitary targets

  std::vector<double> relevance() const;  // u^2 / sum u^2 per retained pair
};

PauliPairExpansion pauli_expansion(const ComplexMatrix& u);

// Measurement-settings bookkeeping. Averages involving the identity are
// recoverable from identity-free ones, so the distinct averages are the
// identity-free nonzero pairs; each requires 2^n input eigenstates, and
// single-outcome detection multiplies by 2^n again. The direct bound
// protocol needs n 2^n settings.
struct SettingsAccount {
  long nonzero_pairs = 0;
  long nontrivial_averages = 0;       // identity-free nonzero pairs
  long settings = 0;                  // nontrivial * 2^n
  long settings_single_outcome = 0;   // settings * 2^n
  long protocol_settings = 0;         // n * 2^n
  long protocol_single_outcome = 0;   // protocol * 2^n
};
SettingsAccount settings_account(const PauliPairExpansion& exp);

// sum_pairs Pr(pair) * m/u over the full expansion; equals the process
// fidelity of chi with respect to u.
double exact_resummation(const channels::ChoiMatrix& chi, const ComplexMatrix& u);

struct McOptions {
  std::int64_t shots_per_setting = 0;  // 0 = noiseless expectation values
};

struct McEstimate {
  double estimate = 0.0;
  std::int64_t settings_used = 0;
  double epsilon = 0.0;
  double confidence = 0.0;
  std::uint64_t seed = 0;
};

// Number of sampled settings for accuracy epsilon at confidence p.
std::int64_t required_settings(double epsilon, double p);

McEstimate mc_estimate(const channels::ChoiMatrix& chi, const ComplexMatrix& u,
                       double epsilon, double p, std::uint64_t seed,
                       const McOptions& opts = {});

// Identity-beating thresholds: certifying a C^nZ gate against doing
// nothing needs infidelity below 2^(2-n)(1 - 2^-n), or that divided by n
// when measured through the n-basis bound; the Monte Carlo error target
// 2^-n implies a settings count growing as 2^(2n).
struct CertificationScaling {
  double infidelity_threshold = 0.0;
  double per_basis_threshold = 0.0;
  double epsilon_order = 0.0;      // 2^-n
  double settings_scaling = 0.0;   // 2^(2n)
};
CertificationScaling certification_scaling(int n);

} // namespace sampling
} // namespace gatebound
