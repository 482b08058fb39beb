// SPDX-License-Identifier: Apache-2.0

#include "gatebound/expsim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace gatebound {
namespace expsim {

using channels::ChoiMatrix;
using channels::DensityMatrix;
using channels::PureState;

namespace {

Eigen::Index pow2(int n) { return Eigen::Index(1) << n; }

std::uint64_t basis_tag(const probes::ProbeBasis& basis) {
  return static_cast<std::uint64_t>(basis.k) * 2u + (basis.primed ? 1u : 0u);
}

int max_threads_from_env(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("GATEBOUND_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

} // namespace

CoincidenceTable simulate_counts(const ChoiMatrix& chi, const ComplexMatrix& u,
                                 const probes::ProbeBasis& basis,
                                 double mean_total, std::uint64_t seed,
                                 const SimulateOptions& opts) {
  if (!(mean_total > 0.0))
    throw std::invalid_argument("simulate_counts: mean_total must be positive");
  const int n = basis.n_qubits;
  if (chi.n_qubits != n)
    throw std::invalid_argument("simulate_counts: qubit count mismatch");
  const Eigen::Index d = pow2(n);

  // Outcome probabilities q(j'|j) = <out_j'| E(psi_j) |out_j'> carry the
  // per-input success probability; fixed-duration acquisition makes every
  // cell mean proportional to it.
  Eigen::MatrixXd q(d, d);
  double p_sum = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    DensityMatrix rho_in;
    rho_in.n_qubits = n;
    rho_in.matrix = basis.states[j].projector();
    const DensityMatrix rho_out = channels::apply_channel(chi, rho_in);
    for (Eigen::Index jp = 0; jp < d; ++jp) {
      const ComplexVector out = u * basis.states[jp].amplitudes;
      q(j, jp) = std::max(0.0, (out.adjoint() * rho_out.matrix * out).value().real());
    }
    p_sum += rho_out.trace_real();
  }
  if (p_sum <= 0.0)
    throw std::invalid_argument("simulate_counts: channel annihilates every probe");

  CoincidenceTable table;
  table.n_qubits = n;
  table.basis_label = basis.label();
  table.counts.resize(d, d);
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index jp = 0; jp < d; ++jp) {
      const double mean = mean_total * q(j, jp) / p_sum;
      if (opts.expectation) {
        table.counts(j, jp) = mean;
      } else {
        rng::Pcg32 gen = rng::derive_stream(
            seed, {0x7369u, basis_tag(basis), static_cast<std::uint64_t>(j),
                   static_cast<std::uint64_t>(jp)});
        table.counts(j, jp) = static_cast<double>(gen.poisson(mean));
      }
    }
  return table;
}

EstimatedFidelities estimate_from_counts(const CoincidenceTable& table) {
  const Eigen::Index d = table.counts.rows();
  const double total = table.total();
  if (total <= 0.0)
    throw std::invalid_argument("estimate_from_counts: empty table");

  EstimatedFidelities est;
  double diag = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    const double s_j = table.row_total(j);
    if (s_j <= 0.0)
      throw std::invalid_argument("estimate_from_counts: zero-count row");
    est.f.push_back(table.counts(j, j) / s_j);
    est.p.push_back(static_cast<double>(d) * s_j / total);
    diag += table.counts(j, j);
  }
  est.average = diag / total;
  est.sigma = std::sqrt(std::max(0.0, est.average * (1.0 - est.average) / total));
  return est;
}

probes::BoundReport full_protocol(const ChoiMatrix& chi, const ComplexMatrix& u,
                                  int n, double mean_total, std::uint64_t seed,
                                  const ProtocolOptions& opts) {
  struct BasisRun {
    probes::ProbeBasis basis;
    EstimatedFidelities est;
  };
  std::vector<BasisRun> runs(n);
  for (int k = 1; k <= n; ++k) runs[k - 1].basis = probes::probe_basis(n, k);
  std::optional<BasisRun> primed_run;
  if (opts.hofmann_k) {
    primed_run.emplace();
    primed_run->basis = probes::probe_basis_primed(n, *opts.hofmann_k);
  }

  auto run_one = [&](BasisRun& r) {
    SimulateOptions sim;
    sim.expectation = opts.expectation;
    r.est = estimate_from_counts(
        simulate_counts(chi, u, r.basis, mean_total, seed, sim));
  };

  const int threads = std::min<int>(max_threads_from_env(opts.max_threads),
                                    static_cast<int>(runs.size()));
  if (threads <= 1) {
    for (auto& r : runs) run_one(r);
  } else {
    // Pre-assigned slots; per-cell streams make output thread-count
    // independent.
    std::vector<std::thread> pool;
    std::size_t next = 0;
    std::mutex mtx;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (;;) {
          std::size_t idx;
          {
            std::lock_guard<std::mutex> lock(mtx);
            if (next >= runs.size()) return;
            idx = next++;
          }
          run_one(runs[idx]);
        }
      });
    for (auto& th : pool) th.join();
  }
  if (primed_run) run_one(*primed_run);

  probes::BoundReport report;
  report.n_qubits = n;
  std::vector<double> sigma;
  double var = 0.0;
  for (const auto& r : runs) {
    report.fidelities.push_back(r.est.average);
    sigma.push_back(r.est.sigma);
    var += r.est.sigma * r.est.sigma;
  }
  report.lower_bound = probes::lower_bound_nqubit(report.fidelities);
  report.upper_bound = probes::upper_bound(report.fidelities);
  report.sigma = sigma;
  report.lower_bound_sigma = std::sqrt(var);
  report.exact = channels::process_fidelity(chi, u);
  if (primed_run) {
    const int k = *opts.hofmann_k;
    report.hofmann = probes::HofmannEntry{
        std::to_string(k), primed_run->basis.label(),
        probes::hofmann_bound(report.fidelities[k - 1], primed_run->est.average)};
  }
  return report;
}

probes::BoundReport bound_report_from_values(const std::vector<double>& fidelities,
                                             const std::vector<double>& totals) {
  if (fidelities.size() != totals.size())
    throw std::invalid_argument("bound_report_from_values: length mismatch");
  probes::BoundReport report;
  report.n_qubits = static_cast<int>(fidelities.size());
  report.fidelities = fidelities;
  report.lower_bound = probes::lower_bound_nqubit(fidelities);
  report.upper_bound = probes::upper_bound(fidelities);
  std::vector<double> sigma;
  double var = 0.0;
  for (std::size_t i = 0; i < fidelities.size(); ++i) {
    if (!(totals[i] > 0.0))
      throw std::invalid_argument("bound_report_from_values: nonpositive total");
    const double s2 = fidelities[i] * (1.0 - fidelities[i]) / totals[i];
    sigma.push_back(std::sqrt(std::max(0.0, s2)));
    var += s2;
  }
  report.sigma = sigma;
  report.lower_bound_sigma = std::sqrt(var);
  return report;
}

Eigen::MatrixXd truth_table(const ChoiMatrix& chi, const ComplexMatrix& u,
                            const probes::ProbeBasis& basis) {
  // Outcomes are labeled by the plain probe states, so an ideal
  // controlled-Z gate renders as the equivalent Toffoli permutation.
  (void)u;
  const int n = basis.n_qubits;
  const Eigen::Index d = pow2(n);
  Eigen::MatrixXd t(d, d);
  for (Eigen::Index j = 0; j < d; ++j) {
    DensityMatrix rho_in;
    rho_in.n_qubits = n;
    rho_in.matrix = basis.states[j].projector();
    const DensityMatrix rho_out = channels::apply_channel(chi, rho_in);
    const double p = rho_out.trace_real();
    if (p <= 0.0)
      throw std::runtime_error("truth_table: zero success probability row");
    for (Eigen::Index jp = 0; jp < d; ++jp) {
      const ComplexVector& out = basis.states[jp].amplitudes;
      t(j, jp) =
          std::max(0.0, (out.adjoint() * rho_out.matrix * out).value().real()) / p;
    }
  }
  return t;
}

GhzReport ghz_output(const channels::PureState& input) {
  if (input.n_qubits != 3)
    throw std::invalid_argument("ghz_output: three-qubit input required");
  const ComplexMatrix u = channels::cnz_unitary(3);
  GhzReport report;
  report.output = PureState(3, ComplexVector(u * input.amplitudes));
  report.fidelity_to_ideal = 1.0;  // the map applied is the ideal gate

  for (int q = 1; q <= 3; ++q) {
    ComplexMatrix reshaped(2, 4);
    for (Eigen::Index idx = 0; idx < 8; ++idx) {
      const Eigen::Index bit = (idx >> (3 - q)) & 1;
      const Eigen::Index hi = idx >> (3 - q + 1);
      const Eigen::Index lo = idx & ((Eigen::Index(1) << (3 - q)) - 1);
      reshaped(bit, hi * (Eigen::Index(1) << (3 - q)) + lo) =
          report.output.amplitudes(idx);
    }
    Eigen::JacobiSVD<ComplexMatrix> svd(reshaped);
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > 1e-10) ++rank;
    report.schmidt_rank[q - 1] = rank;
    report.largest_schmidt[q - 1] = sv(0);
  }
  report.entangled_all_bipartitions =
      report.schmidt_rank[0] > 1 && report.schmidt_rank[1] > 1 &&
      report.schmidt_rank[2] > 1;
  return report;
}

std::vector<TomoSetting> pauli_settings(int n) {
  const char letters[3] = {'X', 'Y', 'Z'};
  const double s = 1.0 / std::sqrt(2.0);
  long count = 1;
  for (int i = 0; i < n; ++i) count *= 3;

  std::vector<TomoSetting> settings;
  settings.reserve(count);
  for (long c = 0; c < count; ++c) {
    TomoSetting setting;
    std::vector<int> digit(n);
    long rem = c;
    for (int q = n - 1; q >= 0; --q) {
      digit[q] = static_cast<int>(rem % 3);
      rem /= 3;
    }
    setting.basis.resize(n);
    for (int q = 0; q < n; ++q) setting.basis[q] = letters[digit[q]];
    for (Eigen::Index outcome = 0; outcome < pow2(n); ++outcome) {
      ComplexVector v = ComplexVector::Ones(1);
      for (int q = 0; q < n; ++q) {
        const int bit = static_cast<int>((outcome >> (n - 1 - q)) & 1);
        ComplexVector single(2);
        switch (digit[q]) {
          case 0: single << s, (bit ? -s : s); break;                      // X
          case 1: single << s, (bit ? cxd(0, -s) : cxd(0, s)); break;      // Y
          case 2: single << (bit ? 0.0 : 1.0), (bit ? 1.0 : 0.0); break;   // Z
        }
        v = qmath::kron_vec(v, single);
      }
      setting.projectors.emplace_back(n, std::move(v));
    }
    setting.counts = Eigen::VectorXd::Zero(pow2(n));
    settings.push_back(std::move(setting));
  }
  return settings;
}

TomoData simulate_tomography_counts(const ChoiMatrix& chi, const PureState& input,
                                    double mean_per_setting, std::uint64_t seed,
                                    bool expectation) {
  if (!(mean_per_setting > 0.0))
    throw std::invalid_argument("simulate_tomography_counts: bad mean");
  const int n = input.n_qubits;
  DensityMatrix rho_in;
  rho_in.n_qubits = n;
  rho_in.matrix = input.projector();
  DensityMatrix rho = channels::apply_channel(chi, rho_in);
  const double p = rho.trace_real();
  if (p <= 0.0)
    throw std::invalid_argument("simulate_tomography_counts: zero success");
  rho.matrix /= p;  // post-selected state

  TomoData data;
  data.n_qubits = n;
  data.settings = pauli_settings(n);
  std::uint64_t sid = 0;
  for (auto& setting : data.settings) {
    for (Eigen::Index o = 0; o < setting.counts.size(); ++o) {
      const auto& proj = setting.projectors[o].amplitudes;
      const double q =
          std::max(0.0, (proj.adjoint() * rho.matrix * proj).value().real());
      const double mean = mean_per_setting * q;
      if (expectation) {
        setting.counts(o) = mean;
      } else {
        rng::Pcg32 gen = rng::derive_stream(seed, {0x746fu, sid,
                                                   static_cast<std::uint64_t>(o)});
        setting.counts(o) = static_cast<double>(gen.poisson(mean));
      }
    }
    ++sid;
  }
  return data;
}

namespace {

double log_likelihood(const TomoData& data, const ComplexMatrix& rho) {
  double ll = 0.0;
  for (const auto& setting : data.settings)
    for (Eigen::Index o = 0; o < setting.counts.size(); ++o) {
      const double c = setting.counts(o);
      if (c <= 0.0) continue;
      const auto& proj = setting.projectors[o].amplitudes;
      const double q =
          std::max(1e-300, (proj.adjoint() * rho * proj).value().real());
      ll += c * std::log(q);
    }
  return ll;
}

ComplexMatrix mle_r_operator(const TomoData& data, const ComplexMatrix& rho,
                             double total_counts) {
  const Eigen::Index d = rho.rows();
  ComplexMatrix r = ComplexMatrix::Zero(d, d);
  for (const auto& setting : data.settings)
    for (Eigen::Index o = 0; o < setting.counts.size(); ++o) {
      const double c = setting.counts(o);
      if (c <= 0.0) continue;
      const auto& proj = setting.projectors[o].amplitudes;
      const double q =
          std::max(1e-300, (proj.adjoint() * rho * proj).value().real());
      r.noalias() += (c / q) * (proj * proj.adjoint());
    }
  return r / total_counts;
}

} // namespace

TomographyResult tomography_mle(const TomoData& data,
                                std::optional<PureState> target,
                                std::uint64_t seed, const MleOptions& opts) {
  const int n = data.n_qubits;
  const Eigen::Index d = pow2(n);

  // Informational completeness: the projectors must span the full operator
  // space.
  std::size_t num_proj = 0;
  for (const auto& s : data.settings) num_proj += s.projectors.size();
  ComplexMatrix span(static_cast<Eigen::Index>(num_proj), d * d);
  Eigen::Index row = 0;
  double total_counts = 0.0;
  for (const auto& s : data.settings) {
    for (const auto& proj : s.projectors) {
      const ComplexMatrix pd = proj.projector();
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) span(row, i * d + j) = pd(i, j);
      ++row;
    }
    total_counts += s.counts.sum();
  }
  if (total_counts <= 0.0)
    throw std::invalid_argument("tomography_mle: no counts");
  Eigen::JacobiSVD<ComplexMatrix> svd(span);
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-10) ++rank;

  TomographyResult result;
  result.informationally_complete = rank == d * d;

  ComplexMatrix rho = qmath::identity(d);
  if (opts.start_jitter > 0.0) {
    rng::Pcg32 gen = rng::derive_stream(seed, {0x6d6cu});
    ComplexMatrix g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) g(i, j) = cxd(gen.normal(), gen.normal());
    const ComplexMatrix herm = 0.5 * (g + g.adjoint());
    // Keep the start positive definite: bound the operator norm by the
    // entrywise norm times the dimension.
    rho += std::min(0.99, opts.start_jitter) /
           std::max(1.0, static_cast<double>(d) * qmath::max_norm(herm)) * herm;
  }
  rho /= rho.trace().real();

  double ll = log_likelihood(data, rho);
  result.likelihood_monotone = true;
  int it = 0;
  for (; it < opts.max_iterations; ++it) {
    const ComplexMatrix r = mle_r_operator(data, rho, total_counts);
    ComplexMatrix candidate = r * rho * r;
    candidate /= candidate.trace().real();
    double cand_ll = log_likelihood(data, candidate);
    if (cand_ll < ll) {
      // Diluted step: rho <- (I + eps R) rho (I + eps R) / tr, halving eps
      // until the likelihood no longer decreases.
      double eps = 1.0;
      bool improved = false;
      for (int half = 0; half < 60; ++half) {
        eps *= 0.5;
        const ComplexMatrix step = qmath::identity(d) + eps * r;
        ComplexMatrix diluted = step * rho * step;
        diluted /= diluted.trace().real();
        const double dll = log_likelihood(data, diluted);
        if (dll >= ll) {
          candidate = std::move(diluted);
          cand_ll = dll;
          improved = true;
          break;
        }
      }
      if (!improved) break;  // numerically converged
    }
    if (cand_ll < ll) result.likelihood_monotone = false;
    const double gain = cand_ll - ll;
    rho = std::move(candidate);
    ll = cand_ll;
    if (std::abs(gain) < opts.relative_tolerance * (std::abs(ll) + 1.0)) {
      ++it;
      break;
    }
  }

  rho = 0.5 * (rho + rho.adjoint());
  rho /= rho.trace().real();
  result.rho.n_qubits = n;
  result.rho.matrix = rho;
  result.purity = (rho * rho).trace().real();
  result.iterations = it;
  result.final_log_likelihood = ll;
  if (target) {
    result.fidelity_vs_target =
        (target->amplitudes.adjoint() * rho * target->amplitudes).value().real();
  } else {
    result.fidelity_vs_target = std::numeric_limits<double>::quiet_NaN();
  }
  return result;
}

PhaseCompensation phase_compensate(const DensityMatrix& rho,
                                   const PureState& target, int site) {
  const int n = rho.n_qubits;
  if (target.n_qubits != n)
    throw std::invalid_argument("phase_compensate: qubit count mismatch");
  if (site < 1 || site > n)
    throw std::invalid_argument("phase_compensate: bad site");
  const Eigen::Index d = pow2(n);
  const double tr = rho.trace_real();
  if (tr <= 0.0)
    throw std::invalid_argument("phase_compensate: zero-trace state");

  // <t| P rho P^dag |t> = A + 2 Re(B e^{i phi}) with the split below.
  cxd a(0.0, 0.0), b(0.0, 0.0);
  for (Eigen::Index x = 0; x < d; ++x)
    for (Eigen::Index y = 0; y < d; ++y) {
      const int xs = static_cast<int>((x >> (n - site)) & 1);
      const int ys = static_cast<int>((y >> (n - site)) & 1);
      const cxd term = std::conj(target.amplitudes(x)) * rho.matrix(x, y) *
                       target.amplitudes(y);
      if (xs == ys)
        a += term;
      else if (xs == 1)
        b += term;
    }

  PhaseCompensation pc;
  pc.fidelity_before = (a.real() + 2.0 * b.real()) / tr;
  if (std::abs(b) < 1e-15) {
    pc.phi_opt = 0.0;  // flat objective tie-break
    pc.fidelity_after = pc.fidelity_before;
  } else {
    pc.phi_opt = -std::arg(b);
    pc.fidelity_after = (a.real() + 2.0 * std::abs(b)) / tr;
  }
  return pc;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string table_to_csv(const CoincidenceTable& table) {
  std::ostringstream out;
  out << "j,jprime,count,k\n";
  const Eigen::Index d = table.counts.rows();
  for (Eigen::Index j = 0; j < d; ++j)
    for (Eigen::Index jp = 0; jp < d; ++jp)
      out << (j + 1) << ',' << (jp + 1) << ','
          << format_double(table.counts(j, jp)) << ',' << table.basis_label
          << '\n';
  return out.str();
}

CoincidenceTable table_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "j,jprime,count,k")
    throw std::invalid_argument("table_from_csv: bad header");
  struct Row {
    long j, jp;
    double count;
    std::string k;
  };
  std::vector<Row> rows;
  long max_j = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    Row r;
    char comma;
    ls >> r.j >> comma >> r.jp >> comma >> r.count >> comma;
    std::getline(ls, r.k);
    if (!ls && r.k.empty())
      throw std::invalid_argument("table_from_csv: bad row");
    rows.push_back(r);
    max_j = std::max({max_j, r.j, r.jp});
  }
  if (rows.empty()) throw std::invalid_argument("table_from_csv: no rows");
  int n = 0;
  while ((1L << n) < max_j) ++n;
  if ((1L << n) != max_j)
    throw std::invalid_argument("table_from_csv: row count not a power of two");
  CoincidenceTable table;
  table.n_qubits = n;
  table.basis_label = rows.front().k;
  table.counts = Eigen::MatrixXd::Zero(max_j, max_j);
  for (const auto& r : rows) table.counts(r.j - 1, r.jp - 1) = r.count;
  return table;
}

std::string estimates_to_json(const EstimatedFidelities& est, int indent) {
  nlohmann::json j;
  j["F"] = est.average;
  j["sigma"] = est.sigma;
  j["f"] = est.f;
  j["p"] = est.p;
  return j.dump(indent);
}

std::string tomography_to_json(const TomographyResult& result, int indent) {
  nlohmann::json j;
  j["fidelity_vs_target"] = result.fidelity_vs_target;
  j["purity"] = result.purity;
  j["iterations"] = result.iterations;
  j["final_log_likelihood"] = result.final_log_likelihood;
  j["informationally_complete"] = result.informationally_complete;
  j["likelihood_monotone"] = result.likelihood_monotone;
  j["rho"] = nlohmann::json::parse(channels::density_to_json(result.rho));
  return j.dump(indent);
}

} // namespace expsim
} // namespace gatebound
