// SPDX-License-Identifier: Apache-2.0

#include "gatebound/optics.hpp"

#include <cmath>

#include "json.hpp"

namespace gatebound {
namespace optics {

void OpticsParams::validate() const {
  for (double t : {t_h, t_v, balance[0], balance[1]})
    if (!(t >= 0.0 && t <= 1.0))
      throw std::invalid_argument("OpticsParams: transmittance outside [0,1]");
  if (!(visibility >= 0.0 && visibility <= 1.0))
    throw std::invalid_argument("OpticsParams: visibility outside [0,1]");
  if (!std::isfinite(phi0))
    throw std::invalid_argument("OpticsParams: phi0 not finite");
}

OpticsParams OpticsParams::ideal() { return OpticsParams{}; }

const char* mode_name(int mode) {
  static const char* names[kModeCount] = {
      "sig-upper-H", "sig-upper-V", "sig-lower-H", "sig-lower-V",
      "idler-H",     "idler-V",     "loss-central-H", "loss-central-V",
      "loss-balance-upper", "loss-balance-lower", "loss-balance-idler"};
  if (mode < 0 || mode >= kModeCount)
    throw std::invalid_argument("mode_name: bad mode index");
  return names[mode];
}

namespace {

// Left-multiply by a lossless two-mode coupler with transmission t and
// reflection i*sqrt(1 - t^2) (symmetric convention).
void couple(ComplexMatrix& u, int m, int n, double t) {
  const cxd ir(0.0, std::sqrt(std::max(0.0, 1.0 - t * t)));
  const Eigen::Index cols = u.cols();
  for (Eigen::Index c = 0; c < cols; ++c) {
    const cxd am = u(m, c);
    const cxd an = u(n, c);
    u(m, c) = t * am + ir * an;
    u(n, c) = ir * am + t * an;
  }
}

int input_mode_signal(int basis_input) {
  const int arm = (basis_input >> 2) & 1;  // qubit 1
  const int pol = (basis_input >> 1) & 1;  // qubit 2
  return arm ? (pol ? kSigLowerV : kSigLowerH) : (pol ? kSigUpperV : kSigUpperH);
}

int input_mode_idler(int basis_input) {
  return (basis_input & 1) ? kIdlerV : kIdlerH;
}

bool signal_side(int mode) { return mode >= kSigUpperH && mode <= kSigLowerV; }
bool idler_side(int mode) { return mode == kIdlerH || mode == kIdlerV; }

// Logical 3-qubit index of a (signal-side mode, idler mode) coincidence.
int logical_index(int sig_mode, int idl_mode) {
  const int arm = (sig_mode == kSigLowerH || sig_mode == kSigLowerV) ? 1 : 0;
  const int pol = (sig_mode == kSigUpperV || sig_mode == kSigLowerV) ? 1 : 0;
  const int idl = (idl_mode == kIdlerV) ? 1 : 0;
  return (arm << 2) | (pol << 1) | idl;
}

} // namespace

ComplexMatrix network_unitary(const OpticsParams& p) {
  p.validate();
  ComplexMatrix u = qmath::identity(kModeCount);
  // Central PPBS: lower-arm signal interferes with the idler; the upper
  // arm sees the same plate at a displaced spot, reflecting into loss.
  couple(u, kSigLowerH, kIdlerH, p.t_h);
  couple(u, kSigLowerV, kIdlerV, p.t_v);
  couple(u, kSigUpperH, kLossCentralH, p.t_h);
  couple(u, kSigUpperV, kLossCentralV, p.t_v);
  // Balancing PPBSs attenuate horizontal components only.
  couple(u, kSigUpperH, kLossBalanceUpper, p.balance[0]);
  couple(u, kSigLowerH, kLossBalanceLower, p.balance[0]);
  couple(u, kIdlerH, kLossBalanceIdler, p.balance[1]);
  // Residual interferometer phase on the lower arm.
  for (int m : {kSigLowerH, kSigLowerV})
    u.row(m) *= std::polar(1.0, p.phi0);
  return u;
}

FockAmplitudeMap propagate_pair(const OpticsParams& p, int basis_input) {
  if (basis_input < 0 || basis_input >= 8)
    throw std::invalid_argument("propagate_pair: bad basis input");
  const ComplexMatrix u = network_unitary(p);
  FockAmplitudeMap map;
  map.network_column_signal = u.col(input_mode_signal(basis_input));
  map.network_column_idler = u.col(input_mode_idler(basis_input));
  return map;
}

namespace {

// Builds the direct (photon roles kept) or exchange (photon roles swapped)
// conditional amplitude map on the 8-dimensional logical space.
ComplexMatrix conditional_map(const OpticsParams& p, bool exchange) {
  const ComplexMatrix u = network_unitary(p);
  ComplexMatrix a = ComplexMatrix::Zero(8, 8);
  for (int in = 0; in < 8; ++in) {
    const int m1 = input_mode_signal(in);
    const int m2 = input_mode_idler(in);
    for (int sig = kSigUpperH; sig <= kSigLowerV; ++sig)
      for (int idl : {kIdlerH, kIdlerV}) {
        const cxd amp = exchange ? u(idl, m1) * u(sig, m2)
                                 : u(sig, m1) * u(idl, m2);
        a(logical_index(sig, idl), in) += amp;
      }
  }
  return a;
}

} // namespace

ComplexMatrix direct_operator(const OpticsParams& p) {
  return conditional_map(p, false);
}

ComplexMatrix exchange_operator(const OpticsParams& p) {
  return conditional_map(p, true);
}

ComplexMatrix effective_operator(const OpticsParams& p) {
  p.validate();
  return direct_operator(p) + p.visibility * exchange_operator(p);
}

channels::ChoiMatrix choi_from_optics(const OpticsParams& p,
                                      double dephasing_between_arms) {
  p.validate();
  if (dephasing_between_arms < 0.0 || dephasing_between_arms > 1.0)
    throw std::invalid_argument("choi_from_optics: dephasing outside [0,1]");
  const double v = p.visibility;
  const ComplexMatrix a = direct_operator(p);
  const ComplexMatrix b = exchange_operator(p);
  std::vector<ComplexMatrix> kraus;
  if (v > 0.0) kraus.push_back(ComplexMatrix(std::sqrt(v) * (a + b)));
  if (v < 1.0) {
    kraus.push_back(ComplexMatrix(std::sqrt(1.0 - v) * a));
    kraus.push_back(ComplexMatrix(std::sqrt(1.0 - v) * b));
  }
  channels::ChoiMatrix chi = channels::choi_of_kraus(channels::KrausSet(3, kraus));
  if (dephasing_between_arms > 0.0) {
    // Mix with the version whose output arm coherence is destroyed:
    // output-side sigma_Z on qubit 1.
    const ComplexMatrix z1 =
        qmath::kron(qmath::identity(8), channels::sigma_m(3, 1));
    const ComplexMatrix dephased =
        0.5 * (chi.matrix + z1 * chi.matrix * z1);
    const double d = dephasing_between_arms;
    chi = channels::ChoiMatrix::unchecked(
        3, ComplexMatrix((1.0 - d) * chi.matrix + d * dephased));
  }
  return chi;
}

std::vector<CoincidenceEvents> coincidence_events(const OpticsParams& p) {
  p.validate();
  const double v = p.visibility;
  std::vector<CoincidenceEvents> out;
  out.reserve(8);
  for (int in = 0; in < 8; ++in) {
    const FockAmplitudeMap map = propagate_pair(p, in);
    CoincidenceEvents ev;
    ev.basis_input = in;
    for (int x = 0; x < kModeCount; ++x) {
      for (int y = x; y < kModeCount; ++y) {
        OutputPattern pat;
        pat.mode_a = x;
        pat.mode_b = y;
        if (x == y) {
          // Bunched pair; bosonic enhancement scales with the overlap.
          pat.mass = (1.0 + v) * std::norm(map.ordered_amplitude(x, x));
        } else {
          const cxd alpha = map.ordered_amplitude(x, y);
          const cxd beta = map.ordered_amplitude(y, x);
          pat.mass = std::norm(alpha) + std::norm(beta) +
                     2.0 * v * (alpha * std::conj(beta)).real();
        }
        pat.success = (signal_side(x) && idler_side(y)) ||
                      (signal_side(y) && idler_side(x));
        (pat.success ? ev.success_mass : ev.failure_mass) += pat.mass;
        if (pat.mass > 0.0 || pat.success) ev.patterns.push_back(pat);
      }
    }
    out.push_back(std::move(ev));
  }
  return out;
}

OpticsParams params_from_json(const std::string& text) {
  if (text == "ideal") return OpticsParams::ideal();
  const auto j = nlohmann::json::parse(text);
  OpticsParams p;
  p.t_h = j.at("t_H").get<double>();
  p.t_v = j.at("t_V").get<double>();
  const auto& bal = j.at("balance");
  p.balance = {bal.at(0).get<double>(), bal.at(1).get<double>()};
  p.visibility = j.at("visibility").get<double>();
  p.phi0 = j.at("phi0").get<double>();
  p.validate();
  return p;
}

std::string params_to_json(const OpticsParams& p, int indent) {
  nlohmann::json j;
  j["t_H"] = p.t_h;
  j["t_V"] = p.t_v;
  j["balance"] = {p.balance[0], p.balance[1]};
  j["visibility"] = p.visibility;
  j["phi0"] = p.phi0;
  return j.dump(indent);
}

} // namespace optics
} // namespace gatebound
