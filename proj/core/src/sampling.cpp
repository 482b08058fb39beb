// SPDX-License-Identifier: Apache-2.0

#include "gatebound/sampling.hpp"

#include <cmath>

namespace gatebound {
namespace sampling {

namespace {

Eigen::Index pow2(int n) { return Eigen::Index(1) << n; }

constexpr double kCoeffTol = 1e-10;

const char kLetters[4] = {'I', 'X', 'Y', 'Z'};

ComplexMatrix single_pauli(int digit) {
  switch (digit) {
    case 0: return qmath::pauli_i();
    case 1: return qmath::pauli_x();
    case 2: return qmath::pauli_y();
    case 3: return qmath::pauli_z();
    default: throw std::invalid_argument("single_pauli: bad digit");
  }
}

int pauli_digit(std::uint32_t code, int n, int qubit) {
  return static_cast<int>((code >> (2 * (n - qubit))) & 3u);
}

bool identity_free(std::uint32_t code, int n) {
  for (int q = 1; q <= n; ++q)
    if (pauli_digit(code, n, q) == 0) return false;
  return true;
}

int qubits_of_dim(Eigen::Index d) {
  int n = 0;
  while ((Eigen::Index(1) << n) < d) ++n;
  if ((Eigen::Index(1) << n) != d)
    throw std::invalid_argument("sampling: dimension not a power of two");
  return n;
}

} // namespace

PauliLabel PauliLabel::from_code(int n, std::uint32_t code) {
  PauliLabel label;
  label.n = n;
  label.letters.resize(n);
  for (int q = 1; q <= n; ++q)
    label.letters[q - 1] = kLetters[pauli_digit(code, n, q)];
  return label;
}

std::uint32_t PauliLabel::code() const {
  std::uint32_t c = 0;
  for (char ch : letters) {
    int d = 0;
    switch (ch) {
      case 'I': d = 0; break;
      case 'X': d = 1; break;
      case 'Y': d = 2; break;
      case 'Z': d = 3; break;
      default: throw std::invalid_argument("PauliLabel: bad letter");
    }
    c = (c << 2) | static_cast<std::uint32_t>(d);
  }
  return c;
}

ComplexMatrix pauli_matrix(int n, std::uint32_t code) {
  ComplexMatrix m = qmath::identity(1);
  for (int q = 1; q <= n; ++q)
    m = qmath::kron(m, single_pauli(pauli_digit(code, n, q)));
  return m;
}

std::vector<double> PauliPairExpansion::relevance() const {
  std::vector<double> pr;
  pr.reserve(pairs.size());
  for (const auto& p : pairs) pr.push_back(p.coefficient * p.coefficient / sum_u_squared);
  return pr;
}

PauliPairExpansion pauli_expansion(const ComplexMatrix& u) {
  const int n = qubits_of_dim(u.rows());
  if (!channels::is_unitary(u))
    throw std::invalid_argument("pauli_expansion: operator not unitary");
  const Eigen::Index d = pow2(n);
  const std::uint32_t num = 1u << (2 * n);

  std::vector<ComplexMatrix> paulis(num);
  for (std::uint32_t c = 0; c < num; ++c) paulis[c] = pauli_matrix(n, c);

  PauliPairExpansion exp;
  exp.n = n;
  double sum2 = 0.0;
  for (std::uint32_t pin = 0; pin < num; ++pin) {
    const ComplexMatrix conj = u * paulis[pin] * u.adjoint();
    for (std::uint32_t pout = 0; pout < num; ++pout) {
      const double coeff =
          (paulis[pout] * conj).trace().real() / static_cast<double>(d);
      sum2 += coeff * coeff;
      if (std::abs(coeff) > kCoeffTol)
        exp.pairs.push_back({pin, pout, coeff});
    }
  }
  exp.sum_u_squared = sum2;
  return exp;
}

SettingsAccount settings_account(const PauliPairExpansion& exp) {
  const int n = exp.n;
  SettingsAccount acc;
  acc.nonzero_pairs = static_cast<long>(exp.pairs.size());
  for (const auto& pr : exp.pairs)
    if (identity_free(pr.in_code, n) && identity_free(pr.out_code, n))
      ++acc.nontrivial_averages;
  const long d = static_cast<long>(pow2(n));
  acc.settings = acc.nontrivial_averages * d;
  acc.settings_single_outcome = acc.settings * d;
  acc.protocol_settings = static_cast<long>(n) * d;
  acc.protocol_single_outcome = acc.protocol_settings * d;
  return acc;
}

namespace {

// Normalized transfer coefficients m = Tr[Q Ehat(P)]/2^n for the retained
// pairs, with Ehat the success-normalized channel.
std::vector<double> transfer_coefficients(const channels::ChoiMatrix& chi,
                                          const PauliPairExpansion& exp) {
  const int n = exp.n;
  const Eigen::Index d = pow2(n);
  const double tr = chi.trace_real();
  if (tr <= 0.0)
    throw std::invalid_argument("sampling: zero-trace Choi matrix");
  const double norm = static_cast<double>(d) / tr;

  // Cache E(P_in) per distinct input label.
  std::vector<ComplexMatrix> image(1u << (2 * n));
  std::vector<bool> have(1u << (2 * n), false);
  std::vector<double> m(exp.pairs.size());
  for (std::size_t i = 0; i < exp.pairs.size(); ++i) {
    const std::uint32_t pin = exp.pairs[i].in_code;
    if (!have[pin]) {
      image[pin] = channels::apply_channel_matrix(chi, pauli_matrix(n, pin));
      have[pin] = true;
    }
    const ComplexMatrix q = pauli_matrix(n, exp.pairs[i].out_code);
    m[i] = norm * (q * image[pin]).trace().real() / static_cast<double>(d);
  }
  return m;
}

} // namespace

double exact_resummation(const channels::ChoiMatrix& chi, const ComplexMatrix& u) {
  const PauliPairExpansion exp = pauli_expansion(u);
  const std::vector<double> m = transfer_coefficients(chi, exp);
  const std::vector<double> pr = exp.relevance();
  double f = 0.0;
  for (std::size_t i = 0; i < exp.pairs.size(); ++i)
    f += pr[i] * m[i] / exp.pairs[i].coefficient;
  return f;
}

std::int64_t required_settings(double epsilon, double p) {
  if (!(epsilon > 0.0 && epsilon < 1.0) || !(p > 0.0 && p < 1.0))
    throw std::invalid_argument("required_settings: epsilon and p must be in (0,1)");
  return static_cast<std::int64_t>(std::llround(1.0 / ((1.0 - p) * epsilon * epsilon)));
}

namespace {

// Eigenvector of the single-qubit Pauli `digit` with outcome bit `bit`
// (0 -> +1 eigenvalue); the identity uses the Z eigenbasis with both
// outcomes counted as +1.
ComplexVector pauli_eigvec(int digit, int bit) {
  const double s = 1.0 / std::sqrt(2.0);
  ComplexVector v(2);
  switch (digit) {
    case 0:
    case 3: v << (bit ? 0.0 : 1.0), (bit ? 1.0 : 0.0); break;
    case 1: v << s, (bit ? -s : s); break;
    case 2: v << s, (bit ? cxd(0.0, -s) : cxd(0.0, s)); break;
    default: throw std::invalid_argument("pauli_eigvec: bad digit");
  }
  return v;
}

// Per-input-eigenstate measurement data for one pair: the deterministic
// weight lambda * s * norm / 2^n and the conditioned +1 probability.
struct EigenstateMeasurement {
  double weight = 0.0;
  double p_plus = 0.5;
};

std::vector<EigenstateMeasurement> measurement_data(
    const channels::ChoiMatrix& chi, int n, const PauliPair& pair, double norm) {
  const Eigen::Index d = pow2(n);
  const ComplexMatrix q = pauli_matrix(n, pair.out_code);
  std::vector<EigenstateMeasurement> data;
  data.reserve(d);
  for (Eigen::Index e = 0; e < d; ++e) {
    ComplexVector vec = ComplexVector::Ones(1);
    double lambda = 1.0;
    for (int qubit = 1; qubit <= n; ++qubit) {
      const int digit = pauli_digit(pair.in_code, n, qubit);
      const int bit = static_cast<int>((e >> (n - qubit)) & 1);
      vec = qmath::kron_vec(vec, pauli_eigvec(digit, bit));
      if (digit != 0 && bit) lambda = -lambda;
    }
    const ComplexMatrix rho_out =
        channels::apply_channel_matrix(chi, ComplexMatrix(vec * vec.adjoint()));
    const double s = rho_out.trace().real();
    EigenstateMeasurement em;
    if (s > 0.0) {
      const double cond = (q * rho_out).trace().real() / s;
      em.weight = lambda * s * norm / static_cast<double>(d);
      em.p_plus = std::min(1.0, std::max(0.0, 0.5 * (1.0 + cond)));
    }
    data.push_back(em);
  }
  return data;
}

double noisy_transfer(const std::vector<EigenstateMeasurement>& data,
                      std::int64_t shots, rng::Pcg32& gen) {
  double acc = 0.0;
  for (const auto& em : data) {
    if (em.weight == 0.0) continue;
    const double hits = static_cast<double>(gen.binomial(shots, em.p_plus));
    acc += em.weight * (2.0 * hits / static_cast<double>(shots) - 1.0);
  }
  return acc;
}

} // namespace

McEstimate mc_estimate(const channels::ChoiMatrix& chi, const ComplexMatrix& u,
                       double epsilon, double p, std::uint64_t seed,
                       const McOptions& opts) {
  const std::int64_t m_settings = required_settings(epsilon, p);
  const PauliPairExpansion exp = pauli_expansion(u);
  if (chi.n_qubits != exp.n)
    throw std::invalid_argument("mc_estimate: qubit count mismatch");
  const std::vector<double> m = transfer_coefficients(chi, exp);
  const double tr = chi.trace_real();
  const double norm = static_cast<double>(pow2(exp.n)) / tr;

  std::vector<double> ratios(exp.pairs.size());
  for (std::size_t i = 0; i < exp.pairs.size(); ++i)
    ratios[i] = m[i] / exp.pairs[i].coefficient;

  const rng::AliasTable table(exp.relevance());

  // Shot-noise mode reuses the deterministic per-pair measurement data;
  // only the binomial draws differ between samples.
  std::vector<std::vector<EigenstateMeasurement>> cache;
  if (opts.shots_per_setting > 0) cache.resize(exp.pairs.size());

  // Per-sample streams derived from (seed, index): the reduction result is
  // independent of evaluation order and thread count.
  double total = 0.0;
  for (std::int64_t i = 0; i < m_settings; ++i) {
    rng::Pcg32 gen = rng::derive_stream(seed, {0x6d63u, static_cast<std::uint64_t>(i)});
    const std::size_t pair_idx = table.sample(gen);
    double value = ratios[pair_idx];
    if (opts.shots_per_setting > 0) {
      if (cache[pair_idx].empty())
        cache[pair_idx] = measurement_data(chi, exp.n, exp.pairs[pair_idx], norm);
      value = noisy_transfer(cache[pair_idx], opts.shots_per_setting, gen) /
              exp.pairs[pair_idx].coefficient;
    }
    total += value;
  }

  McEstimate est;
  est.estimate = total / static_cast<double>(m_settings);
  est.settings_used = m_settings;
  est.epsilon = epsilon;
  est.confidence = p;
  est.seed = seed;
  return est;
}

CertificationScaling certification_scaling(int n) {
  if (n < 2) throw std::invalid_argument("certification_scaling: n must be >= 2");
  CertificationScaling cs;
  cs.infidelity_threshold =
      std::pow(2.0, 2 - n) * (1.0 - std::pow(2.0, -n));
  cs.per_basis_threshold = cs.infidelity_threshold / static_cast<double>(n);
  cs.epsilon_order = std::pow(2.0, -n);
  cs.settings_scaling = std::pow(2.0, 2 * n);
  return cs;
}

} // namespace sampling
} // namespace gatebound
