/**
 * This code is part of rblab.
 *
 * (C) Copyright 2026 rblab developers.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license in the LICENSE.txt file in the root
 * directory of this source tree or at
 * http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef RBLAB_CLI_HPP_
#define RBLAB_CLI_HPP_

#include <ctime>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "rblab/io.hpp"
#include "rblab/metrics.hpp"

namespace rblab::cli {

// exit codes
constexpr int kOk = 0;
constexpr int kUsage = 2;
constexpr int kContract = 3;
constexpr int kCapacity = 4;

namespace detail {

inline void error_json(std::ostream &err, const std::string &kind,
                       const std::string &message) {
  err << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << "\n";
}

}  // namespace detail

/// Full analysis report for a config: exact coefficients, noise-variation
/// diagnostics, perturbation bounds, pathology probe, flat-curve class.
inline json analyze_report(const RbConfig &cfg) {
  if (cfg.n > 2)
    throw capacity_error("analyze: exact diagnostics require n <= 2");
  auto mc = model_coefficients(cfg.noise, cfg.spam);
  const int m_max = cfg.m_list.back();
  auto gammas = gamma_per_step(cfg.noise, m_max);
  auto probe = pathology_probe(cfg.noise, cfg.spam);
  auto flat = classify_flat_curve(mc);

  json bounds;
  for (int k = 1; k <= 3; ++k)
    bounds["k" + std::to_string(k)] = perturbation_bound(k, gammas);

  json jg = json::array();
  for (double g : gammas) jg.push_back(g);

  json probabilities = json::array();
  for (double p : probe.probabilities) probabilities.push_back(p);

  return json{
      {"coefficients",
       {{"a0", mc.a0},
        {"b0", mc.b0},
        {"a1", mc.a1},
        {"b1", mc.b1},
        {"c1", mc.c1},
        {"p", mc.p},
        {"q", mc.q},
        {"q_minus_p_squared", mc.q - mc.p * mc.p},
        {"r", mc.error_rate()}}},
      {"gamma", jg},
      {"perturbation_bounds", bounds},
      {"pathology",
       {{"probabilities", probabilities},
        {"threshold", probe.threshold},
        {"flagged", probe.flagged}}},
      {"flat_curve",
       {{"class", to_string(flat.cls)},
        {"constant_value", flat.constant_value}}}};
}

inline int run(int argc, const char *const *argv, std::istream &in,
               std::ostream &out, std::ostream &err) {
  CLI::App app{"randomized benchmarking laboratory"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(0, 1);
  int threads = 1;
  app.add_option("--threads", threads, "max worker threads for simulation")
      ->check(CLI::PositiveNumber);

  // plan ---------------------------------------------------------------
  auto *plan = app.add_subcommand("plan", "sequence count for target accuracy");
  double eps = 1e-3, delta = 0.05, lo = 0.0, hi = 0.2;
  plan->add_option("--epsilon", eps, "target accuracy")->capture_default_str();
  plan->add_option("--delta", delta, "allowed failure probability")
      ->capture_default_str();
  plan->add_option("--a", lo, "lower end of the fidelity range")
      ->capture_default_str();
  plan->add_option("--b", hi, "upper end of the fidelity range")
      ->capture_default_str();

  // sample-clifford ------------------------------------------------------
  auto *sample = app.add_subcommand("sample-clifford",
                                    "uniform Clifford elements, hex encoded");
  int sc_n = 1, sc_count = 1;
  uint64_t sc_seed = 0;
  sample->add_option("--n", sc_n, "qubit count")->required();
  sample->add_option("--seed", sc_seed, "stream seed")->required();
  sample->add_option("--count", sc_count, "number of elements")
      ->capture_default_str();

  // decompose ------------------------------------------------------------
  auto *dec = app.add_subcommand(
      "decompose", "read hex elements on stdin, emit generator mnemonics");
  int dc_n = 1;
  dec->add_option("--n", dc_n, "qubit count")->required();

  // simulate ---------------------------------------------------------------
  auto *sim = app.add_subcommand("simulate", "run the benchmarking protocol");
  std::string sim_config, sim_out;
  sim->add_option("--config", sim_config, "config JSON path")->required();
  sim->add_option("--out", sim_out, "output CSV path")->required();

  // fit ----------------------------------------------------------------
  auto *fit = app.add_subcommand("fit", "fit decay models to a dataset");
  std::string fit_data, fit_model = "both", fit_out;
  int fit_n = 1;
  fit->add_option("--data", fit_data, "dataset CSV path")->required();
  fit->add_option("--model", fit_model, "zeroth | first | both")
      ->check(CLI::IsMember({"zeroth", "first", "both"}))
      ->capture_default_str();
  fit->add_option("--out", fit_out, "result JSON path")->required();
  fit->add_option("--n", fit_n, "qubit count of the data")
      ->capture_default_str();

  // analyze ---------------------------------------------------------------
  auto *ana = app.add_subcommand("analyze", "exact noise diagnostics");
  std::string ana_config, ana_out;
  ana->add_option("--config", ana_config, "config JSON path")->required();
  ana->add_option("--out", ana_out, "report JSON path (default stdout)");

  // diamond ---------------------------------------------------------------
  auto *dia = app.add_subcommand("diamond",
                                 "diamond distance between Pauli channels");
  std::string dia_a, dia_b;
  dia->add_option("--a", dia_a, "first channel JSON path")->required();
  dia->add_option("--b", dia_b, "second channel JSON path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion &) {
    out << kVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError &e) {
    detail::error_json(err, "usage", e.what());
    return kUsage;
  }

  try {
    if (*plan) {
      if (delta >= 1)
        out << "warning: delta >= 1 requests no confidence; k = 0\n";
      int64_t k = hoeffding_k(eps, delta, lo, hi);
      out << "k = " << k << "\n";
      out << "note: the sequence count is independent of the qubit number "
             "and sequence length; full process tomography needs 16^n "
             "settings (65536 already at n = 4)\n";
      return kOk;
    }
    if (*sample) {
      auto rng = derive_rng(sc_seed, static_cast<uint64_t>(sc_n));
      for (int i = 0; i < sc_count; ++i)
        out << to_hex(random_clifford(sc_n, rng)) << "\n";
      return kOk;
    }
    if (*dec) {
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto seq = decompose(from_hex(dc_n, line));
        bool first_tok = true;
        for (const Gate &g : seq) {
          if (!first_tok) out << ' ';
          first_tok = false;
          switch (g.kind) {
            case GateKind::X: out << "X " << g.q0; break;
            case GateKind::Y: out << "Y " << g.q0; break;
            case GateKind::Z: out << "Z " << g.q0; break;
            case GateKind::H: out << "H " << g.q0; break;
            case GateKind::S: out << "S " << g.q0; break;
            case GateKind::CNOT: out << "CNOT " << g.q0 << ' ' << g.q1; break;
          }
        }
        out << "\n";
      }
      return kOk;
    }
    if (*sim) {
      json cfg_json = json::parse(read_file(sim_config));
      RbConfig cfg = config_from_json(cfg_json);
      RbDataset data = run_experiment(cfg, threads);
      write_file(sim_out, dataset_to_csv(data));
      auto manifest = make_manifest(cfg_json, cfg.seed, {sim_out},
                                    static_cast<int64_t>(std::time(nullptr)));
      write_file(sim_out + ".manifest.json", manifest.to_json().dump(2) + "\n");
      out << "wrote " << data.records.size() << " records to " << sim_out
          << "\n";
      return kOk;
    }
    if (*fit) {
      std::istringstream csv(read_file(fit_data));
      RbDataset data = dataset_from_csv(csv, fit_n);
      json result;
      if (fit_model == "zeroth" || fit_model == "both")
        result["zeroth"] = fit_to_json(fit_zeroth(data), data.m_list);
      if (fit_model == "first" || fit_model == "both")
        result["first"] = fit_to_json(fit_first(data), data.m_list);
      if (fit_model == "both") {
        auto cmp = compare_models(data);
        result["comparison"] = {{"p_gap", cmp.p_gap},
                                {"combined_se", cmp.combined_se},
                                {"threshold", cmp.threshold},
                                {"flat_curve", cmp.flat_curve},
                                {"gate_dependent", cmp.gate_dependent}};
      }
      write_file(fit_out, result.dump(2) + "\n");
      out << "wrote fit result to " << fit_out << "\n";
      return kOk;
    }
    if (*ana) {
      RbConfig cfg = config_from_json(json::parse(read_file(ana_config)));
      json report = analyze_report(cfg);
      if (ana_out.empty())
        out << report.dump(2) << "\n";
      else {
        write_file(ana_out, report.dump(2) + "\n");
        out << "wrote analysis to " << ana_out << "\n";
      }
      return kOk;
    }
    if (*dia) {
      auto a = pauli_channel_from_json(json::parse(read_file(dia_a)));
      auto b = pauli_channel_from_json(json::parse(read_file(dia_b)));
      auto res = pauli_diamond_distance(a, b);
      out << json{{"distance", res.value},
                  {"certificate",
                   {{"primal", res.certificate.primal_lb},
                    {"dual", res.certificate.dual_ub},
                    {"dual_slack", res.certificate.dual_slack},
                    {"tight", res.certificate.tight()}}}}
                 .dump(2)
          << "\n";
      return kOk;
    }
    out << app.help();
    return kOk;
  } catch (const capacity_error &e) {
    detail::error_json(err, "capacity", e.what());
    return kCapacity;
  } catch (const json::exception &e) {
    detail::error_json(err, "contract", e.what());
    return kContract;
  } catch (const error &e) {
    detail::error_json(err, "contract", e.what());
    return kContract;
  } catch (const std::exception &e) {
    detail::error_json(err, "internal", e.what());
    return kContract;
  }
}

}  // namespace rblab::cli

#endif  // RBLAB_CLI_HPP_
