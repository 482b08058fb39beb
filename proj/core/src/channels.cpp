// SPDX-License-Identifier: Apache-2.0

#include "gatebound/channels.hpp"

#include <cmath>

#include "json.hpp"

namespace gatebound {
namespace channels {

using qmath::identity;
using qmath::kron;

namespace {

Eigen::Index pow2(int n) { return Eigen::Index(1) << n; }

// Physics-validation failures use std::domain_error so callers can
// distinguish them from configuration errors.
void check_psd(const ComplexMatrix& m, double tol, const char* what) {
  const RealVector w = qmath::eigh_values(m);
  const double scale = std::max(1.0, qmath::max_norm(m));
  if (w(0) < -tol * scale)
    throw std::domain_error(std::string(what) + ": not positive semidefinite");
}

} // namespace

PureState::PureState(int n, ComplexVector amp, bool norm)
    : n_qubits(n), amplitudes(std::move(amp)), normalized(norm) {
  if (n < 0 || amplitudes.size() != pow2(n))
    throw std::invalid_argument("PureState: dimension mismatch");
  if (normalized) {
    const double nrm = amplitudes.norm();
    if (std::abs(nrm - 1.0) > 1e-12)
      throw std::invalid_argument("PureState: amplitudes not normalized");
  }
}

ComplexMatrix PureState::projector() const {
  return amplitudes * amplitudes.adjoint();
}

DensityMatrix::DensityMatrix(int n, ComplexMatrix m)
    : n_qubits(n), matrix(std::move(m)) {
  if (matrix.rows() != pow2(n) || matrix.cols() != pow2(n))
    throw std::invalid_argument("DensityMatrix: dimension mismatch");
  if (!qmath::is_hermitian(matrix))
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  check_psd(matrix, 1e-10, "DensityMatrix");
  const double tr = matrix.trace().real();
  if (tr <= 0.0 || tr > 1.0 + 1e-10)
    throw std::invalid_argument("DensityMatrix: trace outside (0, 1]");
}

ChoiMatrix::ChoiMatrix(int n, ComplexMatrix m)
    : n_qubits(n), matrix(std::move(m)) {
  const Eigen::Index d = pow2(2 * n);
  if (matrix.rows() != d || matrix.cols() != d)
    throw std::invalid_argument("ChoiMatrix: dimension mismatch");
  if (!qmath::is_hermitian(matrix))
    throw std::invalid_argument("ChoiMatrix: not Hermitian");
  check_psd(matrix, 1e-10, "ChoiMatrix");
  const double tr = matrix.trace().real();
  if (tr > static_cast<double>(pow2(n)) * (1.0 + 1e-10))
    throw std::invalid_argument("ChoiMatrix: trace exceeds 2^n");
}

ChoiMatrix ChoiMatrix::unchecked(int n, ComplexMatrix m) {
  ChoiMatrix chi;
  chi.n_qubits = n;
  chi.matrix = std::move(m);
  return chi;
}

KrausSet::KrausSet(int n, std::vector<ComplexMatrix> ops)
    : n_qubits(n), operators(std::move(ops)) {
  if (operators.empty())
    throw std::invalid_argument("KrausSet: empty operator list");
  const Eigen::Index d = pow2(n);
  ComplexMatrix sum = ComplexMatrix::Zero(d, d);
  for (const auto& k : operators) {
    if (k.rows() != d || k.cols() != d)
      throw std::invalid_argument("KrausSet: operator dimension mismatch");
    sum += k.adjoint() * k;
  }
  if (sum.cwiseAbs().maxCoeff() == 0.0)
    throw std::invalid_argument("KrausSet: all operators vanish");
  check_psd(ComplexMatrix(identity(d) - sum), 1e-10, "KrausSet completeness deficit");
}

PureState basis_state(int n, int index) {
  if (n < 1 || index < 0 || index >= pow2(n))
    throw std::invalid_argument("basis_state: bad index");
  ComplexVector v = ComplexVector::Zero(pow2(n));
  v(index) = 1.0;
  return PureState(n, std::move(v));
}

PureState product_state(const std::string& labels) {
  if (labels.empty()) throw std::invalid_argument("product_state: empty label");
  const double s = 1.0 / std::sqrt(2.0);
  ComplexVector v = ComplexVector::Ones(1);
  for (char c : labels) {
    ComplexVector q(2);
    switch (c) {
      case '0': q << 1, 0; break;
      case '1': q << 0, 1; break;
      case '+': q << s, s; break;
      case '-': q << s, -s; break;
      default: throw std::invalid_argument("product_state: bad label char");
    }
    v = qmath::kron_vec(v, q);
  }
  return PureState(static_cast<int>(labels.size()), std::move(v));
}

ComplexVector phi_plus_vector(int n) {
  if (n < 1) throw std::invalid_argument("phi_plus_vector: n must be >= 1");
  const Eigen::Index d = pow2(n);
  ComplexVector v = ComplexVector::Zero(d * d);
  for (Eigen::Index j = 0; j < d; ++j) v(j * d + j) = 1.0;
  return v;
}

double projector_distance(const PureState& a, const PureState& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("projector_distance: dimension mismatch");
  return qmath::max_norm(ComplexMatrix(a.projector() - b.projector()));
}

ComplexMatrix cnz_unitary(int n) {
  if (n < 1) throw std::invalid_argument("cnz_unitary: n must be >= 1");
  const Eigen::Index d = pow2(n);
  ComplexMatrix u = identity(d);
  u(d - 1, d - 1) = -1.0;
  return u;
}

ComplexMatrix toffoli_unitary(int target) {
  if (target < 1 || target > 3)
    throw std::invalid_argument("toffoli_unitary: target must be 1..3");
  const ComplexMatrix h = embed_single_qubit(qmath::hadamard(), 3, target);
  return h * cnz_unitary(3) * h;
}

ComplexMatrix sigma_m(int n, int m) {
  if (m < 1 || m > n) throw std::invalid_argument("sigma_m: bad qubit index");
  return embed_single_qubit(qmath::pauli_z(), n, m);
}

ComplexMatrix embed_single_qubit(const ComplexMatrix& g, int n, int m) {
  if (g.rows() != 2 || g.cols() != 2)
    throw std::invalid_argument("embed_single_qubit: gate must be 2x2");
  if (m < 1 || m > n)
    throw std::invalid_argument("embed_single_qubit: bad qubit index");
  ComplexMatrix out = identity(1);
  for (int q = 1; q <= n; ++q)
    out = kron(out, q == m ? g : identity(2));
  return out;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  const ComplexMatrix d = u.adjoint() * u - identity(u.rows());
  return d.cwiseAbs().maxCoeff() <= tol;
}

namespace {

int qubits_of_dim(Eigen::Index d, const char* what) {
  int n = 0;
  Eigen::Index x = d;
  while (x > 1) {
    if (x % 2 != 0) throw std::invalid_argument(std::string(what) + ": dim not a power of two");
    x /= 2;
    ++n;
  }
  if (n < 1) throw std::invalid_argument(std::string(what) + ": empty operator");
  return n;
}

ComplexMatrix choi_matrix_of_ops(int n, const std::vector<ComplexMatrix>& ops) {
  const Eigen::Index d = pow2(n);
  ComplexMatrix chi = ComplexMatrix::Zero(d * d, d * d);
  for (const auto& k : ops) {
    // (I (x) K) |Phi+> has entries K(y, x) at index x*d + y.
    ComplexVector v(d * d);
    for (Eigen::Index x = 0; x < d; ++x)
      for (Eigen::Index y = 0; y < d; ++y) v(x * d + y) = k(y, x);
    chi.noalias() += v * v.adjoint();
  }
  return chi;
}

} // namespace

ChoiMatrix choi_of_unitary(const ComplexMatrix& u) {
  const int n = qubits_of_dim(u.rows(), "choi_of_unitary");
  if (!is_unitary(u))
    throw std::invalid_argument("choi_of_unitary: operator not unitary");
  return ChoiMatrix::unchecked(n, choi_matrix_of_ops(n, {u}));
}

ChoiMatrix choi_of_kraus(const KrausSet& ks) {
  return ChoiMatrix::unchecked(ks.n_qubits,
                               choi_matrix_of_ops(ks.n_qubits, ks.operators));
}

ComplexMatrix apply_channel_matrix(const ChoiMatrix& chi, const ComplexMatrix& op) {
  const Eigen::Index d = pow2(chi.n_qubits);
  if (op.rows() != d || op.cols() != d)
    throw std::invalid_argument("apply_channel_matrix: dimension mismatch");
  ComplexMatrix out = ComplexMatrix::Zero(d, d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b) {
      cxd acc(0.0, 0.0);
      for (Eigen::Index j = 0; j < d; ++j)
        for (Eigen::Index jp = 0; jp < d; ++jp)
          acc += op(j, jp) * chi.matrix(j * d + a, jp * d + b);
      out(a, b) = acc;
    }
  return out;
}

DensityMatrix apply_channel(const ChoiMatrix& chi, const DensityMatrix& rho_in) {
  if (chi.n_qubits != rho_in.n_qubits)
    throw std::invalid_argument("apply_channel: qubit count mismatch");
  // Output is subnormalized; bypass the trace<=1 density validation by
  // constructing through the struct directly.
  DensityMatrix rho;
  rho.n_qubits = chi.n_qubits;
  rho.matrix = apply_channel_matrix(chi, rho_in.matrix);
  return rho;
}

double process_fidelity(const ChoiMatrix& chi, const ComplexMatrix& u) {
  const int n = chi.n_qubits;
  if (u.rows() != pow2(n) || u.cols() != pow2(n))
    throw std::invalid_argument("process_fidelity: dimension mismatch");
  const double tr = chi.trace_real();
  if (tr <= 0.0)
    throw std::invalid_argument("process_fidelity: zero-trace Choi matrix");
  const Eigen::Index d = pow2(n);
  ComplexVector v(d * d);
  for (Eigen::Index x = 0; x < d; ++x)
    for (Eigen::Index y = 0; y < d; ++y) v(x * d + y) = u(y, x);
  const double overlap = (v.adjoint() * chi.matrix * v).value().real();
  return overlap / (static_cast<double>(d) * tr);
}

double identity_fidelity(int n) {
  if (n < 1) throw std::invalid_argument("identity_fidelity: n must be >= 1");
  return 1.0 - std::pow(2.0, 2 - n) + std::pow(2.0, 2 - 2 * n);
}

ChoiMatrix depolarizing(const ChoiMatrix& chi, double q) {
  if (q < 0.0 || q > 1.0) throw std::invalid_argument("depolarizing: q outside [0,1]");
  const Eigen::Index d4 = chi.matrix.rows();
  const double tr = chi.trace_real();
  ComplexMatrix m = (1.0 - q) * chi.matrix +
                    (q * tr / static_cast<double>(d4)) * identity(d4);
  return ChoiMatrix::unchecked(chi.n_qubits, std::move(m));
}

ChoiMatrix phase_flip_mixture(const ComplexMatrix& u, const std::vector<double>& weights) {
  const int n = qubits_of_dim(u.rows(), "phase_flip_mixture");
  if (!is_unitary(u))
    throw std::invalid_argument("phase_flip_mixture: operator not unitary");
  if (weights.size() != static_cast<std::size_t>(n + 1))
    throw std::invalid_argument("phase_flip_mixture: need n+1 weights");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("phase_flip_mixture: negative weight");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-10)
    throw std::invalid_argument("phase_flip_mixture: weights must sum to 1");
  const Eigen::Index d4 = pow2(2 * n);
  ComplexMatrix m = ComplexMatrix::Zero(d4, d4);
  for (int v = 0; v <= n; ++v) {
    if (weights[v] == 0.0) continue;
    const ComplexMatrix vm = v == 0 ? u : ComplexMatrix(u * sigma_m(n, v));
    m += weights[v] * choi_matrix_of_ops(n, {vm});
  }
  return ChoiMatrix::unchecked(n, std::move(m));
}

ChoiMatrix coherent_vm_superposition(const ComplexMatrix& u, const std::vector<cxd>& amplitudes) {
  const int n = qubits_of_dim(u.rows(), "coherent_vm_superposition");
  if (!is_unitary(u))
    throw std::invalid_argument("coherent_vm_superposition: operator not unitary");
  if (amplitudes.size() != static_cast<std::size_t>(n + 1))
    throw std::invalid_argument("coherent_vm_superposition: need n+1 amplitudes");
  double norm2 = 0.0;
  for (cxd a : amplitudes) norm2 += std::norm(a);
  if (std::abs(norm2 - 1.0) > 1e-10)
    throw std::invalid_argument("coherent_vm_superposition: amplitudes not normalized");
  const Eigen::Index d = pow2(n);
  ComplexMatrix k = ComplexMatrix::Zero(d, d);
  for (int v = 0; v <= n; ++v) {
    if (amplitudes[v] == cxd(0.0, 0.0)) continue;
    k += amplitudes[v] * (v == 0 ? u : ComplexMatrix(u * sigma_m(n, v)));
  }
  // K = U D with D diagonal; rescale by the largest singular value so the
  // map is trace-nonincreasing.
  double smax = 0.0;
  for (Eigen::Index j = 0; j < d; ++j) {
    cxd diag(0.0, 0.0);
    for (int v = 0; v <= n; ++v) {
      double sign = 1.0;
      if (v > 0 && ((j >> (n - v)) & 1)) sign = -1.0;
      diag += amplitudes[v] * sign;
    }
    smax = std::max(smax, std::abs(diag));
  }
  if (smax <= 0.0)
    throw std::invalid_argument("coherent_vm_superposition: superposition vanishes");
  k /= smax;
  return ChoiMatrix::unchecked(n, choi_matrix_of_ops(n, {k}));
}

ChoiMatrix state_dependent_loss(const ChoiMatrix& chi, const std::vector<double>& attenuation) {
  const Eigen::Index d = pow2(chi.n_qubits);
  if (attenuation.size() != static_cast<std::size_t>(d))
    throw std::invalid_argument("state_dependent_loss: need 2^n attenuation factors");
  for (double a : attenuation)
    if (a < 0.0 || a > 1.0)
      throw std::invalid_argument("state_dependent_loss: attenuation outside [0,1]");
  // chi' = (M (x) I) chi (M (x) I) with M = diag(sqrt(a)) on the input slot.
  ComplexMatrix m = chi.matrix;
  for (Eigen::Index j = 0; j < d; ++j) {
    const double sj = std::sqrt(attenuation[j]);
    m.middleRows(j * d, d) *= sj;
    m.middleCols(j * d, d) *= sj;
  }
  return ChoiMatrix::unchecked(chi.n_qubits, std::move(m));
}

// --- serialization ------------------------------------------------------

namespace {

nlohmann::json matrix_to_json(int n, const ComplexMatrix& m, const char* convention) {
  nlohmann::json j;
  j["n_qubits"] = n;
  j["convention"] = convention;
  nlohmann::json entries = nlohmann::json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      entries.push_back({m(r, c).real(), m(r, c).imag()});
  j["entries"] = std::move(entries);
  return j;
}

ComplexMatrix matrix_from_json(const nlohmann::json& j, int* n_out) {
  const int n = j.at("n_qubits").get<int>();
  const auto& entries = j.at("entries");
  const Eigen::Index dim = static_cast<Eigen::Index>(std::llround(
      std::sqrt(static_cast<double>(entries.size()))));
  if (dim * dim != static_cast<Eigen::Index>(entries.size()))
    throw std::invalid_argument("matrix_from_json: entry count not square");
  ComplexMatrix m(dim, dim);
  Eigen::Index i = 0;
  for (Eigen::Index r = 0; r < dim; ++r)
    for (Eigen::Index c = 0; c < dim; ++c) {
      m(r, c) = cxd(entries[i][0].get<double>(), entries[i][1].get<double>());
      ++i;
    }
  *n_out = n;
  return m;
}

} // namespace

std::string choi_to_json(const ChoiMatrix& chi, int indent) {
  return matrix_to_json(chi.n_qubits, chi.matrix, ChoiMatrix::kConvention).dump(indent);
}

ChoiMatrix choi_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  if (j.at("convention").get<std::string>() != ChoiMatrix::kConvention)
    throw std::invalid_argument("choi_from_json: unexpected convention");
  int n = 0;
  ComplexMatrix m = matrix_from_json(j, &n);
  return ChoiMatrix(n, std::move(m));
}

std::string density_to_json(const DensityMatrix& rho, int indent) {
  return matrix_to_json(rho.n_qubits, rho.matrix, "density-matrix").dump(indent);
}

DensityMatrix density_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  int n = 0;
  ComplexMatrix m = matrix_from_json(j, &n);
  DensityMatrix rho;
  rho.n_qubits = n;
  rho.matrix = std::move(m);
  return rho;
}

} // namespace channels
} // namespace gatebound
