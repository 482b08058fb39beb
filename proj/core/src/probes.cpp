// SPDX-License-Identifier: Apache-2.0

#include "gatebound/probes.hpp"

#include <cmath>

#include "json.hpp"

namespace gatebound {
namespace probes {

using channels::ChoiMatrix;
using channels::PureState;
using qmath::identity;
using qmath::kron;

namespace {

Eigen::Index pow2(int n) { return Eigen::Index(1) << n; }

} // namespace

std::string ProbeBasis::label() const {
  return std::to_string(k) + (primed ? "p" : "");
}

ProbeBasis probe_basis(int n, int k) {
  if (n < 1 || k < 1 || k > n)
    throw std::invalid_argument("probe_basis: bad basis index");
  const double s = 1.0 / std::sqrt(2.0);
  ProbeBasis basis{n, k, false, {}};
  basis.states.reserve(pow2(n));
  for (Eigen::Index j = 0; j < pow2(n); ++j) {
    ComplexVector v = ComplexVector::Ones(1);
    for (int q = 1; q <= n; ++q) {
      const int bit = static_cast<int>((j >> (n - q)) & 1);
      ComplexVector single(2);
      if (q == k)
        single << s, (bit ? -s : s);  // H|bit>
      else
        single << (bit ? 0.0 : 1.0), (bit ? 1.0 : 0.0);
      v = qmath::kron_vec(v, single);
    }
    basis.states.emplace_back(n, std::move(v));
  }
  return basis;
}

ProbeBasis probe_basis_primed(int n, int k) {
  ProbeBasis basis = probe_basis(n, k);
  const ComplexMatrix hn = qmath::kron_pow(qmath::hadamard(), n);
  for (auto& st : basis.states)
    st = PureState(n, ComplexVector(hn * st.amplitudes));
  basis.primed = true;
  return basis;
}

ProbeBasis probe_basis_all_hadamard(int n) {
  return probe_basis_primed(n, n);
}

std::vector<std::string> probe_labels(const ProbeBasis& basis) {
  const int n = basis.n_qubits;
  std::vector<std::string> labels;
  labels.reserve(basis.states.size());
  for (Eigen::Index j = 0; j < static_cast<Eigen::Index>(basis.states.size()); ++j) {
    std::string s(n, '?');
    for (int q = 1; q <= n; ++q) {
      const int bit = static_cast<int>((j >> (n - q)) & 1);
      const bool conjugate = (q == basis.k) != basis.primed;  // H applied once
      s[q - 1] = conjugate ? (bit ? '-' : '+') : (bit ? '1' : '0');
    }
    labels.push_back(std::move(s));
  }
  return labels;
}

ComplexMatrix r_k_operator(const ComplexMatrix& u, const ProbeBasis& basis) {
  const int n = basis.n_qubits;
  if (!channels::is_unitary(u) || u.rows() != pow2(n))
    throw std::invalid_argument("r_k_operator: operator not unitary / wrong size");
  const Eigen::Index d4 = pow2(2 * n);
  ComplexMatrix r = ComplexMatrix::Zero(d4, d4);
  for (const auto& st : basis.states) {
    const ComplexMatrix proj = st.projector();
    const ComplexMatrix out = u * proj * u.adjoint();
    r += kron(proj.transpose(), out);
  }
  return r;
}

StateFidelities average_state_fidelity(const ChoiMatrix& chi,
                                       const ComplexMatrix& u,
                                       const ProbeBasis& basis,
                                       bool strict) {
  const int n = basis.n_qubits;
  if (chi.n_qubits != n)
    throw std::invalid_argument("average_state_fidelity: qubit count mismatch");
  if (chi.trace_real() <= 0.0)
    throw std::invalid_argument("average_state_fidelity: zero-trace Choi matrix");

  StateFidelities result;
  double num = 0.0, den = 0.0;
  for (const auto& st : basis.states) {
    channels::DensityMatrix rho_in;
    rho_in.n_qubits = n;
    rho_in.matrix = st.projector();
    const channels::DensityMatrix rho_out = channels::apply_channel(chi, rho_in);
    const double p = rho_out.trace_real();
    const ComplexVector ideal = u * st.amplitudes;
    result.p.push_back(p);
    if (p <= 0.0) {
      if (strict)
        throw std::runtime_error(
            "average_state_fidelity: zero success probability in strict mode");
      result.f.push_back(std::nullopt);
      continue;
    }
    const double overlap = (ideal.adjoint() * rho_out.matrix * ideal).value().real();
    const double f = overlap / p;
    result.f.push_back(f);
    num += p * f;
    den += p;
  }
  if (den <= 0.0)
    throw std::runtime_error("average_state_fidelity: all probes have zero success");
  result.average = num / den;
  return result;
}

double lower_bound_nqubit(const std::vector<double>& fidelities) {
  if (fidelities.empty())
    throw std::invalid_argument("lower_bound_nqubit: empty fidelity list");
  double sum = 0.0;
  for (double f : fidelities) {
    if (f < -1e-12 || f > 1.0 + 1e-12)
      throw std::invalid_argument("lower_bound_nqubit: fidelity outside [0,1]");
    sum += f;
  }
  return sum - static_cast<double>(fidelities.size()) + 1.0;
}

double hofmann_bound(double f_a, double f_b) {
  for (double f : {f_a, f_b})
    if (f < -1e-12 || f > 1.0 + 1e-12)
      throw std::invalid_argument("hofmann_bound: fidelity outside [0,1]");
  return f_a + f_b - 1.0;
}

double upper_bound(const std::vector<double>& fidelities) {
  if (fidelities.empty())
    throw std::invalid_argument("upper_bound: empty fidelity list");
  double m = fidelities.front();
  for (double f : fidelities) m = std::min(m, f);
  return m;
}

ComplexMatrix r_operator(const ComplexMatrix& u, int n) {
  if (!channels::is_unitary(u) || u.rows() != pow2(n))
    throw std::invalid_argument("r_operator: operator not unitary / wrong size");
  const Eigen::Index d4 = pow2(2 * n);
  ComplexMatrix r = channels::choi_of_unitary(u).matrix / static_cast<double>(pow2(n));
  for (int k = 1; k <= n; ++k) r -= r_k_operator(u, probe_basis(n, k));
  r += static_cast<double>(n - 1) * identity(d4);
  return r;
}

ComplexMatrix r_prime_operator(const ComplexMatrix& u) {
  if (u.rows() != 8)
    throw std::invalid_argument("r_prime_operator: three-qubit operator required");
  ComplexMatrix r = channels::choi_of_unitary(u).matrix / 8.0;
  r -= r_k_operator(u, probe_basis(3, 3));
  r -= r_k_operator(u, probe_basis_all_hadamard(3));
  r += identity(64);
  return r;
}

ComplexMatrix t_tilde_matrix(int n) {
  if (n < 2 || n > 7)
    throw std::invalid_argument("t_tilde_matrix: n must be in 2..7");
  const Eigen::Index d = pow2(n);
  const Eigen::Index d4 = d * d;

  // T = (n-1) I + Phi+/2^n - sum_{k,j} psi^T (x) psi.
  ComplexMatrix t = static_cast<double>(n - 1) * identity(d4);
  const ComplexVector phi = channels::phi_plus_vector(n);
  t.noalias() += (phi * phi.adjoint()) / static_cast<double>(d);
  for (int k = 1; k <= n; ++k) {
    for (const auto& st : probe_basis(n, k).states) {
      const ComplexMatrix proj = st.projector();
      t -= kron(proj.transpose(), proj);
    }
  }

  // Regroup input/output qubit pairs: |x>|y> -> |x1 y1>...|xn yn|.
  std::vector<Eigen::Index> w(d4);
  for (Eigen::Index x = 0; x < d; ++x)
    for (Eigen::Index y = 0; y < d; ++y) {
      Eigen::Index grouped = 0;
      for (int l = 1; l <= n; ++l) {
        const Eigen::Index xl = (x >> (n - l)) & 1;
        const Eigen::Index yl = (y >> (n - l)) & 1;
        grouped = (grouped << 2) | (xl << 1) | yl;
      }
      w[x * d + y] = grouped;
    }
  ComplexMatrix tt(d4, d4);
  for (Eigen::Index i = 0; i < d4; ++i)
    for (Eigen::Index j = 0; j < d4; ++j) tt(w[i], w[j]) = t(i, j);
  return tt;
}

TTildeSpectrum t_tilde_spectrum(int n) {
  if (n < 2 || n > 7)
    throw std::invalid_argument("t_tilde_spectrum: n must be in 2..7");
  TTildeSpectrum spec;

  // Analytic path: score each Bell-product string. Letters per two-qubit
  // block: 0 = Phi+, 1 = Phi-, 2 = Psi+, 3 = Psi-. A block passes the
  // minus-term filter for index k when letter_k is in {Phi+, Psi+} and all
  // other letters are in {Phi+, Phi-}; the all-Phi+ string additionally
  // picks up the +1 from the maximally entangled projector.
  Eigen::Index strings = 1;
  for (int i = 0; i < n; ++i) strings *= 4;
  for (Eigen::Index s = 0; s < strings; ++s) {
    std::vector<int> letter(n);
    Eigen::Index rem = s;
    for (int l = n - 1; l >= 0; --l) {
      letter[l] = static_cast<int>(rem & 3);
      rem >>= 2;
    }
    bool all_phi_plus = true;
    for (int l = 0; l < n; ++l)
      if (letter[l] != 0) all_phi_plus = false;
    long score = n - 1 + (all_phi_plus ? 1 : 0);
    for (int k = 0; k < n; ++k) {
      if (letter[k] != 0 && letter[k] != 2) continue;
      bool rest_ok = true;
      for (int l = 0; l < n; ++l)
        if (l != k && letter[l] != 0 && letter[l] != 1) rest_ok = false;
      if (rest_ok) --score;
    }
    spec.analytic[score] += 1;
  }

  // Numeric path: eigenvalues of the explicitly regrouped operator.
  const RealVector w = qmath::eigh_values(t_tilde_matrix(n));
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    const long rounded = std::lround(w(i));
    if (std::abs(w(i) - static_cast<double>(rounded)) > 1e-8)
      throw std::runtime_error("t_tilde_spectrum: non-integer numeric eigenvalue");
    spec.numeric[rounded] += 1;
  }

  spec.match = spec.analytic == spec.numeric;
  return spec;
}

std::vector<TightnessState> tightness_states(const ComplexMatrix& u, int n) {
  if (!channels::is_unitary(u) || u.rows() != pow2(n))
    throw std::invalid_argument("tightness_states: operator not unitary / wrong size");
  std::vector<TightnessState> out;
  out.push_back({"V0", channels::choi_of_unitary(u)});
  for (int m = 1; m <= n; ++m)
    out.push_back({"V" + std::to_string(m),
                   channels::choi_of_unitary(ComplexMatrix(u * channels::sigma_m(n, m)))});
  if (n == 2) {
    const ComplexMatrix x = qmath::pauli_x();
    const ComplexMatrix z = qmath::pauli_z();
    const ComplexMatrix i2 = qmath::pauli_i();
    const std::vector<std::pair<std::string, ComplexMatrix>> extras = {
        {"XI", kron(x, i2)}, {"IX", kron(i2, x)}, {"XZ", kron(x, z)}, {"ZX", kron(z, x)}};
    for (const auto& [label, g] : extras)
      out.push_back({label, channels::choi_of_unitary(ComplexMatrix(u * g))});
  }
  return out;
}

GapCheck infidelity_gap_check(const ChoiMatrix& chi, const ComplexMatrix& u, int n) {
  if (chi.n_qubits != n)
    throw std::invalid_argument("infidelity_gap_check: qubit count mismatch");
  const double f_chi = channels::process_fidelity(chi, u);
  double sum = 0.0;
  for (int k = 1; k <= n; ++k)
    sum += average_state_fidelity(chi, u, probe_basis(n, k)).average;
  GapCheck g;
  g.gap = f_chi - sum + static_cast<double>(n) - 1.0;
  g.cap = static_cast<double>(n - 1) * (1.0 - f_chi);
  if (g.gap < -1e-9 || g.gap > g.cap + 1e-9)
    throw std::runtime_error("infidelity_gap_check: gap outside [0, cap]");
  return g;
}

bool is_diagonal_unitary(const ComplexMatrix& u, double tol) {
  if (!channels::is_unitary(u, tol)) return false;
  for (Eigen::Index r = 0; r < u.rows(); ++r)
    for (Eigen::Index c = 0; c < u.cols(); ++c)
      if (r != c && std::abs(u(r, c)) > tol) return false;
  return true;
}

bool product_output_check(const ComplexMatrix& u, const ProbeBasis& basis) {
  const int n = basis.n_qubits;
  for (const auto& st : basis.states) {
    const ComplexVector out = u * st.amplitudes;
    for (int q = 1; q <= n; ++q) {
      // Reshape across the (qubit q | rest) bipartition and take the top
      // singular value.
      const Eigen::Index rest = pow2(n - 1);
      ComplexMatrix reshaped(2, rest);
      for (Eigen::Index idx = 0; idx < out.size(); ++idx) {
        const Eigen::Index bit = (idx >> (n - q)) & 1;
        const Eigen::Index hi = idx >> (n - q + 1);
        const Eigen::Index lo = idx & ((Eigen::Index(1) << (n - q)) - 1);
        reshaped(bit, hi * (Eigen::Index(1) << (n - q)) + lo) = out(idx);
      }
      Eigen::JacobiSVD<ComplexMatrix> svd(reshaped);
      if (svd.singularValues()(0) < 1.0 - 1e-10) return false;
    }
  }
  return true;
}

BoundReport bound_report(const ChoiMatrix& chi, const ComplexMatrix& u,
                         std::optional<int> hofmann_k) {
  const int n = chi.n_qubits;
  BoundReport report;
  report.n_qubits = n;
  for (int k = 1; k <= n; ++k)
    report.fidelities.push_back(
        average_state_fidelity(chi, u, probe_basis(n, k)).average);
  report.lower_bound = lower_bound_nqubit(report.fidelities);
  report.upper_bound = upper_bound(report.fidelities);
  report.exact = channels::process_fidelity(chi, u);
  if (hofmann_k) {
    const int k = *hofmann_k;
    if (k < 1 || k > n)
      throw std::invalid_argument("bound_report: bad Hofmann basis index");
    const ProbeBasis primed = probe_basis_primed(n, k);
    const double f_k = report.fidelities[k - 1];
    const double f_kp = average_state_fidelity(chi, u, primed).average;
    report.hofmann = HofmannEntry{std::to_string(k), primed.label(),
                                  hofmann_bound(f_k, f_kp)};
  }
  return report;
}

std::string bound_report_to_json(const BoundReport& report, int indent) {
  nlohmann::json j;
  j["n"] = report.n_qubits;
  j["F"] = report.fidelities;
  j["lower_bound"] = report.lower_bound;
  j["upper_bound"] = report.upper_bound;
  if (report.hofmann) {
    j["hofmann"] = {{"pair", {report.hofmann->basis_a, report.hofmann->basis_b}},
                    {"value", report.hofmann->value}};
  } else {
    j["hofmann"] = nullptr;
  }
  if (report.exact)
    j["exact"] = *report.exact;
  else
    j["exact"] = nullptr;
  if (report.sigma) j["sigma"] = *report.sigma;
  if (report.lower_bound_sigma) j["lower_bound_sigma"] = *report.lower_bound_sigma;
  return j.dump(indent);
}

} // namespace probes
} // namespace gatebound
