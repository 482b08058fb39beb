// SPDX-License-Identifier: Apache-2.0
//
// gatebound: fidelity bounds, certification and experiment simulation for
// N-qubit controlled-Z gates.
//
// Exit codes: 0 success, 2 usage/config error, 3 certification or
// validation failure, 4 I/O error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gatebound/channels.hpp"
#include "gatebound/expsim.hpp"
#include "gatebound/optics.hpp"
#include "gatebound/probes.hpp"
#include "gatebound/sampling.hpp"

using namespace gatebound;
using nlohmann::json;

namespace {

struct CertificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoFailure("cannot write " + path);
  out << text;
  if (!out) throw IoFailure("write failed for " + path);
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    values.push_back(std::stod(item));
  }
  return values;
}

// Channel selection shared by the pipeline commands.
struct ChannelOptions {
  std::string preset;
  std::string kraus_file;
  std::string optics_spec;
  double optics_dephasing = 0.0;
  std::vector<std::string> noise;
  int n = 3;

  void attach(CLI::App* cmd, bool with_noise = true) {
    cmd->add_option("--preset", preset,
                    "Unitary preset: ccz-ideal, cz-ideal, cnz (uses --n), "
                    "toffoli");
    cmd->add_option("--kraus", kraus_file, "Kraus set JSON file");
    cmd->add_option("--optics", optics_spec,
                    "Optics parameter JSON file, or 'ideal'");
    cmd->add_option("--dephasing", optics_dephasing,
                    "Arm dephasing for --optics channels")
        ->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--n", n, "Qubit count for the cnz preset")
        ->check(CLI::Range(1, 7));
    if (with_noise)
      cmd->add_option("--noise", noise,
                      "Noise transforms applied in order: depolarizing:q, "
                      "vm-mixture:uniform, vm-mixture:w0,..,wn, "
                      "state-loss:a0,..,a_{2^n-1}");
  }

  int source_count() const {
    return (preset.empty() ? 0 : 1) + (kraus_file.empty() ? 0 : 1) +
           (optics_spec.empty() ? 0 : 1);
  }
};

ComplexMatrix preset_unitary(const std::string& name, int n) {
  if (name == "ccz-ideal") return channels::cnz_unitary(3);
  if (name == "cz-ideal") return channels::cnz_unitary(2);
  if (name == "cnz") return channels::cnz_unitary(n);
  if (name == "toffoli") return channels::toffoli_unitary(3);
  throw std::invalid_argument("unknown preset: " + name);
}

channels::KrausSet kraus_from_json(const std::string& text) {
  const auto j = json::parse(text);
  const int n = j.at("n_qubits").get<int>();
  const Eigen::Index d = Eigen::Index(1) << n;
  std::vector<ComplexMatrix> ops;
  for (const auto& entry : j.at("operators")) {
    if (static_cast<Eigen::Index>(entry.size()) != d * d)
      throw std::invalid_argument("kraus operator has wrong entry count");
    ComplexMatrix k(d, d);
    Eigen::Index i = 0;
    for (Eigen::Index r = 0; r < d; ++r)
      for (Eigen::Index c = 0; c < d; ++c) {
        k(r, c) = cxd(entry[i][0].get<double>(), entry[i][1].get<double>());
        ++i;
      }
    ops.push_back(std::move(k));
  }
  return channels::KrausSet(n, std::move(ops));
}

struct ResolvedChannel {
  channels::ChoiMatrix chi;
  ComplexMatrix target;  // ideal unitary the bounds compare against
  int n = 0;
};

ResolvedChannel resolve_channel(const ChannelOptions& opts) {
  if (opts.source_count() != 1)
    throw std::invalid_argument(
        "exactly one of --preset/--kraus/--optics is required");

  ResolvedChannel rc;
  std::optional<ComplexMatrix> base_unitary;
  if (!opts.preset.empty()) {
    base_unitary = preset_unitary(opts.preset, opts.n);
    rc.target = *base_unitary;
    rc.chi = channels::choi_of_unitary(*base_unitary);
  } else if (!opts.kraus_file.empty()) {
    const channels::KrausSet ks = kraus_from_json(read_file(opts.kraus_file));
    rc.chi = channels::choi_of_kraus(ks);
    rc.target = channels::cnz_unitary(ks.n_qubits);
  } else {
    const std::string spec = opts.optics_spec == "ideal"
                                 ? std::string("ideal")
                                 : read_file(opts.optics_spec);
    const optics::OpticsParams p = optics::params_from_json(spec);
    rc.chi = optics::choi_from_optics(p, opts.optics_dephasing);
    rc.target = channels::cnz_unitary(3);
  }
  rc.n = rc.chi.n_qubits;

  for (const std::string& spec : opts.noise) {
    const auto colon = spec.find(':');
    const std::string kind = spec.substr(0, colon);
    const std::string arg =
        colon == std::string::npos ? "" : spec.substr(colon + 1);
    if (kind == "depolarizing") {
      rc.chi = channels::depolarizing(rc.chi, std::stod(arg));
    } else if (kind == "vm-mixture") {
      if (!base_unitary)
        throw std::invalid_argument("vm-mixture requires a unitary preset");
      std::vector<double> w;
      if (arg == "uniform")
        w.assign(rc.n + 1, 1.0 / (rc.n + 1));
      else
        w = parse_double_list(arg);
      rc.chi = channels::phase_flip_mixture(*base_unitary, w);
    } else if (kind == "state-loss") {
      rc.chi = channels::state_dependent_loss(rc.chi, parse_double_list(arg));
    } else {
      throw std::invalid_argument("unknown noise transform: " + kind);
    }
  }
  return rc;
}

std::optional<int> parse_hofmann(const std::string& arg, int n) {
  if (arg.empty()) return std::nullopt;
  // Accept "k" or "k,kp".
  const auto comma = arg.find(',');
  const int k = std::stoi(arg.substr(0, comma));
  if (k < 1 || k > n) throw std::invalid_argument("--hofmann: bad basis index");
  if (comma != std::string::npos) {
    const std::string partner = arg.substr(comma + 1);
    if (partner != std::to_string(k) + "p")
      throw std::invalid_argument("--hofmann: partner must be the primed basis " +
                                  std::to_string(k) + "p");
  }
  return k;
}

json bound_report_json(const probes::BoundReport& report) {
  return json::parse(probes::bound_report_to_json(report));
}

std::string report_csv(const probes::BoundReport& report) {
  std::ostringstream out;
  out << "k,F";
  if (report.sigma) out << ",sigma";
  out << '\n';
  for (std::size_t i = 0; i < report.fidelities.size(); ++i) {
    out << (i + 1) << ',' << expsim::format_double(report.fidelities[i]);
    if (report.sigma) out << ',' << expsim::format_double((*report.sigma)[i]);
    out << '\n';
  }
  out << "lower_bound," << expsim::format_double(report.lower_bound) << '\n';
  out << "upper_bound," << expsim::format_double(report.upper_bound) << '\n';
  return out.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty())
    std::cout << text << '\n';
  else
    write_file(out_path, text + "\n");
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fidelity bounds and experiment simulation for N-qubit "
               "controlled-Z gates"};
  app.set_version_flag("--version", "gatebound 1.0.0");
  app.require_subcommand(1);


  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out_path;
  std::string format = "json";
  bool expectation = false;
  app.add_option("--seed", seed, "PRNG seed (required for sampling runs)")
      ->each([&](const std::string&) { seed_given = true; });
  app.add_option("--out", out_path, "Write primary output to this file");
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--expectation", expectation,
               "Replace sampling with exact expectation values");

  // --- bound -------------------------------------------------------------
  auto* cmd_bound = app.add_subcommand("bound", "Fidelity bounds for a channel")->fallthrough();
  ChannelOptions bound_channel;
  bound_channel.attach(cmd_bound);
  std::string fk_arg, sk_arg, hofmann_arg;
  cmd_bound->add_option("--fk", fk_arg,
                        "Direct-values mode: comma-separated F_k list");
  cmd_bound->add_option("--sk", sk_arg,
                        "Coincidence totals per basis for --fk error bars");
  cmd_bound->add_option("--hofmann", hofmann_arg,
                        "Hofmann pair k,kp (e.g. 3,3p)");

  // --- certify -----------------------------------------------------------
  auto* cmd_certify = app.add_subcommand(
      "certify", "Numerically certify the bound operator inequalities")->fallthrough();
  int certify_n = 3;
  int certify_samples = 50;
  cmd_certify->add_option("--n", certify_n, "Qubit count")->check(CLI::Range(2, 6));
  cmd_certify->add_option("--random-unitaries", certify_samples,
                          "Random unitaries for the R >= 0 sweep")
      ->check(CLI::Range(0, 10000));

  // --- simulate ----------------------------------------------------------
  auto* cmd_simulate = app.add_subcommand(
      "simulate", "Simulate the probe-basis coincidence protocol")->fallthrough();
  ChannelOptions sim_channel;
  sim_channel.attach(cmd_simulate);
  double mean_total = 528000.0;
  std::string sim_hofmann;
  cmd_simulate->add_option("--mean-total", mean_total,
                           "Expected total coincidences per basis");
  cmd_simulate->add_option("--hofmann", sim_hofmann,
                           "Also measure the primed partner of basis k");

  // --- mc ----------------------------------------------------------------
  auto* cmd_mc = app.add_subcommand("mc", "Monte Carlo fidelity estimate")->fallthrough();
  ChannelOptions mc_channel;
  mc_channel.attach(cmd_mc);
  double mc_epsilon = 0.01, mc_p = 0.9;
  std::int64_t mc_shots = 100;
  cmd_mc->add_option("--epsilon", mc_epsilon, "Target accuracy")
      ->check(CLI::Range(1e-6, 0.999999));
  cmd_mc->add_option("--p", mc_p, "Target confidence")
      ->check(CLI::Range(1e-6, 0.999999));
  cmd_mc->add_option("--shots", mc_shots,
                     "Shots per sampled setting (0 = noiseless)");

  // --- optics ------------------------------------------------------------
  auto* cmd_optics = app.add_subcommand(
      "optics", "Coincidence-basis channel of the linear-optical gate")->fallthrough();
  std::string optics_params = "ideal";
  double optics_dephasing = 0.0;
  cmd_optics->add_option("--params", optics_params,
                         "Optics parameter JSON file or 'ideal'");
  cmd_optics->add_option("--dephasing", optics_dephasing,
                         "Arm dephasing in [0,1]")
      ->check(CLI::Range(0.0, 1.0));

  // --- ghz ---------------------------------------------------------------
  auto* cmd_ghz = app.add_subcommand(
      "ghz", "Generate, reconstruct and phase-compensate a GHZ-type state")->fallthrough();
  ChannelOptions ghz_channel;
  ghz_channel.attach(cmd_ghz);
  std::string ghz_input = "+++";
  double ghz_mean = 10000.0;
  int ghz_phase_site = 1;
  cmd_ghz->add_option("--input", ghz_input,
                      "Input product labels over {0,1,+,-}, or 'bell-plus' "
                      "for the Bell (x) |+> fusion input");
  cmd_ghz->add_option("--mean-per-setting", ghz_mean,
                      "Expected counts per tomography setting");
  cmd_ghz->add_option("--phase-site", ghz_phase_site,
                      "Qubit carrying the compensating phase")
      ->check(CLI::Range(1, 3));

  // --- settings-account ----------------------------------------------------
  auto* cmd_settings = app.add_subcommand(
      "settings-account", "Measurement-settings bookkeeping for a gate")->fallthrough();
  std::string settings_gate = "toffoli";
  int settings_n = 3;
  cmd_settings->add_option("--gate", settings_gate,
                           "toffoli, ccz-ideal, cz-ideal or cnz");
  cmd_settings->add_option("--n", settings_n, "Qubit count for cnz")
      ->check(CLI::Range(1, 4));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*cmd_bound) {
      json j;
      if (!fk_arg.empty()) {
        if (bound_channel.source_count() != 0)
          throw std::invalid_argument("--fk excludes channel sources");
        const std::vector<double> fk = parse_double_list(fk_arg);
        probes::BoundReport report;
        if (!sk_arg.empty()) {
          report = expsim::bound_report_from_values(fk, parse_double_list(sk_arg));
        } else {
          report.n_qubits = static_cast<int>(fk.size());
          report.fidelities = fk;
          report.lower_bound = probes::lower_bound_nqubit(fk);
          report.upper_bound = probes::upper_bound(fk);
        }
        if (format == "csv") {
          emit(report_csv(report), out_path);
          return 0;
        }
        j = bound_report_json(report);
        j["mode"] = "arithmetic-only";
      } else {
        const ResolvedChannel rc = resolve_channel(bound_channel);
        const auto hofmann_k = parse_hofmann(hofmann_arg, rc.n);
        const probes::BoundReport report =
            probes::bound_report(rc.chi, rc.target, hofmann_k);
        if (format == "csv") {
          emit(report_csv(report), out_path);
          return 0;
        }
        j = bound_report_json(report);
        j["mode"] = "channel";
        j["method"] = "bound";
        j["settings"] = static_cast<long>(rc.n) * (1L << rc.n);
      }
      emit(j.dump(2), out_path);
      return 0;
    }

    if (*cmd_certify) {
      const int n = certify_n;
      const ComplexMatrix u = channels::cnz_unitary(n);
      json j;
      j["n"] = n;
      bool pass = true;

      auto psd_floor = [](const ComplexMatrix& m) {
        return qmath::eigh_values(m)(0) / std::max(1.0, qmath::max_norm(m));
      };

      const double r_min = psd_floor(probes::r_operator(u, n));
      j["r_min_eigenvalue"] = r_min;
      pass = pass && r_min >= -1e-9;

      if (n == 3) {
        const ComplexMatrix r = probes::r_operator(u, 3);
        const ComplexMatrix rp = probes::r_prime_operator(u);
        const double rp_min = psd_floor(rp);
        const double diff_min = psd_floor(ComplexMatrix(r - rp));
        j["r_prime_min_eigenvalue"] = rp_min;
        j["r_minus_r_prime_min_eigenvalue"] = diff_min;
        pass = pass && rp_min >= -1e-9 && diff_min >= -1e-9;

        const ComplexMatrix chi_u = channels::choi_of_unitary(u).matrix;
        json rk = json::array();
        for (int k = 1; k <= 4; ++k) {
          const probes::ProbeBasis basis =
              k <= 3 ? probes::probe_basis(3, k) : probes::probe_basis_all_hadamard(3);
          const double m = psd_floor(ComplexMatrix(
              probes::r_k_operator(u, basis) - chi_u / 8.0));
          rk.push_back({{"basis", basis.label()}, {"min_eigenvalue", m}});
          pass = pass && m >= -1e-10;
        }
        j["r_k_minus_chi_over_8"] = rk;
      }

      // Random-unitary sweep: R stays positive semidefinite for any U.
      double sweep_min = 0.0;
      for (int s = 0; s < certify_samples; ++s) {
        rng::Pcg32 gen =
            rng::derive_stream(seed, {0x6365u, static_cast<std::uint64_t>(s)});
        const Eigen::Index d = Eigen::Index(1) << n;
        ComplexMatrix g(d, d);
        for (Eigen::Index r = 0; r < d; ++r)
          for (Eigen::Index c = 0; c < d; ++c)
            g(r, c) = cxd(gen.normal(), gen.normal());
        Eigen::HouseholderQR<ComplexMatrix> qr(g);
        ComplexMatrix q = qr.householderQ();
        const ComplexMatrix rmat = qr.matrixQR().triangularView<Eigen::Upper>();
        for (Eigen::Index c2 = 0; c2 < d; ++c2) {
          const cxd diag = rmat(c2, c2);
          if (std::abs(diag) > 0) q.col(c2) *= diag / std::abs(diag);
        }
        sweep_min = std::min(sweep_min, psd_floor(probes::r_operator(q, n)));
      }
      j["random_unitaries"] = certify_samples;
      j["random_r_min_eigenvalue"] = sweep_min;
      pass = pass && sweep_min >= -1e-9;

      const probes::TTildeSpectrum spec = probes::t_tilde_spectrum(n);
      json spectrum = json::array();
      for (const auto& [value, mult] : spec.analytic) {
        const auto it = spec.numeric.find(value);
        spectrum.push_back({{"eigenvalue", value},
                            {"multiplicity_analytic", mult},
                            {"multiplicity_numeric",
                             it == spec.numeric.end() ? 0 : it->second}});
      }
      j["t_tilde_spectrum"] = spectrum;
      j["t_tilde_dual_path_match"] = spec.match;
      pass = pass && spec.match && spec.analytic.begin()->first >= 0;

      json tight = json::array();
      for (const auto& ts : probes::tightness_states(u, n)) {
        const probes::BoundReport report = probes::bound_report(ts.chi, u);
        const double gap = std::abs(report.lower_bound - *report.exact);
        tight.push_back({{"label", ts.label},
                         {"lower_bound", report.lower_bound},
                         {"exact", *report.exact},
                         {"gap", gap}});
        pass = pass && gap <= 1e-9;
      }
      j["tightness"] = tight;
      j["pass"] = pass;
      emit(j.dump(2), out_path);
      if (!pass) throw CertificationFailure("certification failed");
      return 0;
    }

    if (*cmd_simulate) {
      if (!expectation && !seed_given)
        throw std::invalid_argument("simulate: --seed required unless --expectation");
      const ResolvedChannel rc = resolve_channel(sim_channel);
      expsim::ProtocolOptions opts;
      opts.expectation = expectation;
      opts.hofmann_k = parse_hofmann(sim_hofmann, rc.n);

      std::string csv;
      json bases = json::array();
      std::vector<probes::ProbeBasis> to_run;
      for (int k = 1; k <= rc.n; ++k) to_run.push_back(probes::probe_basis(rc.n, k));
      if (opts.hofmann_k)
        to_run.push_back(probes::probe_basis_primed(rc.n, *opts.hofmann_k));
      for (const auto& basis : to_run) {
        expsim::SimulateOptions sim;
        sim.expectation = expectation;
        const expsim::CoincidenceTable table =
            expsim::simulate_counts(rc.chi, rc.target, basis, mean_total, seed, sim);
        const std::string table_csv = expsim::table_to_csv(table);
        csv += csv.empty() ? table_csv : table_csv.substr(table_csv.find('\n') + 1);
        const expsim::EstimatedFidelities est = expsim::estimate_from_counts(table);
        json je = json::parse(expsim::estimates_to_json(est));
        je["k"] = table.basis_label;
        bases.push_back(je);
      }
      const probes::BoundReport report =
          expsim::full_protocol(rc.chi, rc.target, rc.n, mean_total, seed, opts);
      json j;
      j["bases"] = bases;
      j["bound"] = bound_report_json(report);
      if (!out_path.empty()) write_file(out_path, csv);
      std::cout << j.dump(2) << '\n';
      return 0;
    }

    if (*cmd_mc) {
      if (!seed_given && !expectation)
        throw std::invalid_argument("mc: --seed required");
      const ResolvedChannel rc = resolve_channel(mc_channel);
      sampling::McOptions opts;
      opts.shots_per_setting = expectation ? 0 : mc_shots;
      const sampling::McEstimate est =
          sampling::mc_estimate(rc.chi, rc.target, mc_epsilon, mc_p, seed, opts);
      json j;
      j["method"] = "mc";
      j["settings"] = est.settings_used;
      j["estimate"] = est.estimate;
      j["epsilon"] = est.epsilon;
      j["p"] = est.confidence;
      j["seed"] = est.seed;
      j["exact"] = channels::process_fidelity(rc.chi, rc.target);
      emit(j.dump(2), out_path);
      return 0;
    }

    if (*cmd_optics) {
      const std::string spec =
          optics_params == "ideal" ? std::string("ideal") : read_file(optics_params);
      const optics::OpticsParams p = optics::params_from_json(spec);
      const channels::ChoiMatrix chi = optics::choi_from_optics(p, optics_dephasing);
      json j;
      j["params"] = json::parse(optics::params_to_json(p));
      j["dephasing"] = optics_dephasing;
      j["process_fidelity"] = channels::process_fidelity(chi, channels::cnz_unitary(3));
      json table = json::array();
      for (const auto& ev : optics::coincidence_events(p)) {
        table.push_back({{"input", ev.basis_input},
                         {"success", ev.success_mass},
                         {"failure", ev.failure_mass}});
      }
      j["success_table"] = table;
      if (!out_path.empty()) {
        write_file(out_path, channels::choi_to_json(chi));
        j["choi_file"] = out_path;
      }
      std::cout << j.dump(2) << '\n';
      return 0;
    }

    if (*cmd_ghz) {
      if (!expectation && !seed_given)
        throw std::invalid_argument("ghz: --seed required unless --expectation");
      ResolvedChannel rc;
      if (ghz_channel.source_count() == 0) {
        rc.chi = channels::choi_of_unitary(channels::cnz_unitary(3));
        rc.target = channels::cnz_unitary(3);
        rc.n = 3;
      } else {
        rc = resolve_channel(ghz_channel);
      }
      if (rc.n != 3)
        throw std::invalid_argument("ghz: three-qubit channel required");

      channels::PureState input;
      if (ghz_input == "bell-plus") {
        ComplexVector v = ComplexVector::Zero(8);
        const double h = 0.5;
        v(0) = h; v(1) = h; v(6) = h; v(7) = h;  // (|00>+|11>)/sqrt2 (x) |+>
        input = channels::PureState(3, v);
      } else {
        input = channels::product_state(ghz_input);
      }

      const expsim::GhzReport ideal = expsim::ghz_output(input);
      const expsim::TomoData data = expsim::simulate_tomography_counts(
          rc.chi, input, ghz_mean, seed, expectation);
      const expsim::TomographyResult result =
          expsim::tomography_mle(data, ideal.output, seed);
      const expsim::PhaseCompensation pc =
          expsim::phase_compensate(result.rho, ideal.output, ghz_phase_site);

      json j = json::parse(expsim::tomography_to_json(result));
      j["input"] = ghz_input;
      j["ideal_schmidt_ranks"] = ideal.schmidt_rank;
      j["phase_compensation"] = {{"site", ghz_phase_site},
                                 {"phi_opt", pc.phi_opt},
                                 {"fidelity_before", pc.fidelity_before},
                                 {"fidelity_after", pc.fidelity_after}};
      emit(j.dump(2), out_path);
      return 0;
    }

    if (*cmd_settings) {
      const ComplexMatrix u = preset_unitary(settings_gate, settings_n);
      const sampling::PauliPairExpansion exp = sampling::pauli_expansion(u);
      const sampling::SettingsAccount acc = sampling::settings_account(exp);
      json j;
      j["gate"] = settings_gate;
      j["n"] = exp.n;
      j["nonzero_pairs"] = acc.nonzero_pairs;
      j["mc"] = {{"nontrivial_averages", acc.nontrivial_averages},
                 {"settings", acc.settings},
                 {"settings_single_outcome", acc.settings_single_outcome}};
      j["bound_protocol"] = {{"settings", acc.protocol_settings},
                             {"settings_single_outcome", acc.protocol_single_outcome}};
      emit(j.dump(2), out_path);
      return 0;
    }
  } catch (const CertificationFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const IoFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::domain_error& e) {
    // Physics validation failed (non-PSD matrix, bad Kraus completeness...).
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
