// SPDX-License-Identifier: Apache-2.0
//
// End-to-end experiment simulation: Poissonian coincidence tables for the
// probe-basis protocol, the counting estimators with their uncertainties,
// truth tables, GHZ generation, maximum-likelihood state tomography and
// single-site phase compensation.

#pragma once

#include <cstdint>
#include <optional>

#include "gatebound/probes.hpp"
#include "gatebound/rng.hpp"

namespace gatebound {
namespace expsim {

// Coincidence counts C[j][j'] for input probe j measured against output
// projector j'. Sampled tables hold integers; expectation mode stores the
// exact Poisson means so estimators can be checked against the analytic
// fidelities.
struct CoincidenceTable {
  int n_qubits = 0;
  std::string basis_label;             // "1".."n" or primed, e.g. "3p"
  Eigen::MatrixXd counts;              // 2^n x 2^n, nonnegative
  double duration_s = 100.0;           // bookkeeping only

  double row_total(Eigen::Index j) const { return counts.row(j).sum(); }
  double total() const { return counts.sum(); }
};

struct EstimatedFidelities {
  double average = 0.0;               // F_k = sum_j C_jj / S
  double sigma = 0.0;                 // sqrt(F(1-F)/S)
  std::vector<double> f;              // C_jj / S_j
  std::vector<double> p;              // 2^n S_j / S
};

struct SimulateOptions {
  bool expectation = false;  // store exact means instead of Poisson draws
};

CoincidenceTable simulate_counts(const channels::ChoiMatrix& chi,
                                 const ComplexMatrix& u,
                                 const probes::ProbeBasis& basis,
                                 double mean_total, std::uint64_t seed,
                                 const SimulateOptions& opts = {});

EstimatedFidelities estimate_from_counts(const CoincidenceTable& table);

struct ProtocolOptions {
  bool expectation = false;
  std::optional<int> hofmann_k;  // also measure the primed partner of k
  int max_threads = 0;           // 0 = GATEBOUND_THREADS or hardware default
};

// Runs all n probe bases, estimates F_k with uncertainties and combines
// them into the bound report (3 sigma on the bound = 3 sqrt(sum sigma_k^2)).
probes::BoundReport full_protocol(const channels::ChoiMatrix& chi,
                                  const ComplexMatrix& u, int n,
                                  double mean_total, std::uint64_t seed,
                                  const ProtocolOptions& opts = {});

// Bound arithmetic on externally supplied per-basis fidelities, with
// Poissonian error propagation from the per-basis coincidence totals.
probes::BoundReport bound_report_from_values(const std::vector<double>& fidelities,
                                             const std::vector<double>& totals);

// Row-stochastic outcome probabilities for each probe input.
Eigen::MatrixXd truth_table(const channels::ChoiMatrix& chi,
                            const ComplexMatrix& u,
                            const probes::ProbeBasis& basis);

// --- GHZ generation ------------------------------------------------------

struct GhzReport {
  channels::PureState output;
  double fidelity_to_ideal = 1.0;          // vs U_CCZ applied to the input
  std::array<int, 3> schmidt_rank = {1, 1, 1};
  std::array<double, 3> largest_schmidt = {1.0, 1.0, 1.0};
  bool entangled_all_bipartitions = false;
};

// Applies the ideal CCZ to a three-qubit input state and reports the
// entanglement across every single-qubit bipartition.
GhzReport ghz_output(const channels::PureState& input);

// --- tomography ----------------------------------------------------------

struct TomoSetting {
  std::string basis;                          // e.g. "XZY", one letter per qubit
  std::vector<channels::PureState> projectors;  // complete orthonormal set
  Eigen::VectorXd counts;
};

struct TomoData {
  int n_qubits = 0;
  std::vector<TomoSetting> settings;
};

// All 3^n Pauli product bases with 2^n outcomes each.
std::vector<TomoSetting> pauli_settings(int n);

// Counts for measuring the (success-normalized) channel output on `input`.
TomoData simulate_tomography_counts(const channels::ChoiMatrix& chi,
                                    const channels::PureState& input,
                                    double mean_per_setting, std::uint64_t seed,
                                    bool expectation = false);

struct TomographyResult {
  channels::DensityMatrix rho;     // trace 1
  double fidelity_vs_target = 0.0; // NaN when no target supplied
  double purity = 0.0;
  int iterations = 0;
  double final_log_likelihood = 0.0;
  bool informationally_complete = true;
  bool likelihood_monotone = true;
};

struct MleOptions {
  int max_iterations = 5000;
  double relative_tolerance = 1e-10;
  // Seeded random deviation of the starting state away from I/2^n; useful
  // for probing flat likelihood directions of incomplete data.
  double start_jitter = 0.0;
};

// Iterative multiplicative fixed-point maximum-likelihood reconstruction
// with a diluted step whenever the plain update would lower the
// likelihood. The seed only enters through the start_jitter option.
TomographyResult tomography_mle(const TomoData& data,
                                std::optional<channels::PureState> target,
                                std::uint64_t seed,
                                const MleOptions& opts = {});

// --- phase compensation ---------------------------------------------------

struct PhaseCompensation {
  double phi_opt = 0.0;
  double fidelity_before = 0.0;
  double fidelity_after = 0.0;
};

// Optimizes a single phase e^{i phi} on `site` (1-based qubit; the
// interferometer arm is qubit 1) to maximize overlap with `target`.
// Closed form: the fidelity is A + 2 Re(B e^{i phi}).
PhaseCompensation phase_compensate(const channels::DensityMatrix& rho,
                                   const channels::PureState& target,
                                   int site);

// --- serialization ---------------------------------------------------------

// CSV with header "j,jprime,count,k"; 1-based indices, counts with 17
// significant digits.
std::string table_to_csv(const CoincidenceTable& table);
CoincidenceTable table_from_csv(const std::string& text);

std::string estimates_to_json(const EstimatedFidelities& est, int indent = -1);
std::string tomography_to_json(const TomographyResult& result, int indent = -1);

// Shortest-form decimal with up to 17 significant digits.
std::string format_double(double x);

} // namespace expsim
} // namespace gatebound
