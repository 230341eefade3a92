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

#ifndef RBLAB_IO_HPP_
#define RBLAB_IO_HPP_

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rblab/engine.hpp"
#include "rblab/fitting.hpp"
#include "rblab/version.hpp"

namespace rblab {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Channel schema: {"d": int, "repr": "kraus"|"pauli"|"super", "data": ...}
// Complex entries are [re, im] pairs; "pauli" data is a plain probability
// vector over the Pauli basis.
// ---------------------------------------------------------------------------

namespace detail {

inline json complex_to_json(const cxd &z) { return json::array({z.real(), z.imag()}); }

inline cxd json_to_complex(const json &j) {
  if (!j.is_array() || j.size() != 2)
    throw contract_error("complex entries must be [re, im]");
  return cxd(j[0].get<double>(), j[1].get<double>());
}

inline json matrix_to_json(const Mat &m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Mat json_to_matrix(const json &j, int rows, int cols) {
  if (!j.is_array() || static_cast<int>(j.size()) != rows)
    throw contract_error("matrix row count mismatch");
  Mat m(rows, cols);
  for (int r = 0; r < rows; ++r) {
    if (static_cast<int>(j[r].size()) != cols)
      throw contract_error("matrix column count mismatch");
    for (int c = 0; c < cols; ++c) m(r, c) = json_to_complex(j[r][c]);
  }
  return m;
}

}  // namespace detail

inline json channel_to_json(const Superoperator &s) {
  return json{{"d", s.d}, {"repr", "super"}, {"data", detail::matrix_to_json(s.mat)}};
}

inline json channel_to_json(const PauliChannel &pc) {
  json data = json::array();
  for (int i = 0; i < pc.q.size(); ++i) data.push_back(pc.q[i]);
  return json{{"d", pc.d}, {"repr", "pauli"}, {"data", data}};
}

inline Superoperator channel_from_json(const json &j) {
  if (!j.contains("d") || !j.contains("repr") || !j.contains("data"))
    throw contract_error("channel JSON needs d, repr and data");
  const int d = j.at("d").get<int>();
  const std::string repr = j.at("repr").get<std::string>();
  const json &data = j.at("data");
  if (repr == "super") return Superoperator(d, detail::json_to_matrix(data, d * d, d * d));
  if (repr == "kraus") {
    KrausSet k;
    k.d = d;
    for (const auto &op : data) k.ops.push_back(detail::json_to_matrix(op, d, d));
    return kraus_to_super(k);
  }
  if (repr == "pauli") {
    Eigen::VectorXd q(d * d);
    if (static_cast<int>(data.size()) != d * d)
      throw contract_error("pauli channel needs d^2 weights");
    for (int i = 0; i < d * d; ++i) q[i] = data[i].get<double>();
    return pauli_channel_to_super(PauliChannel(d, std::move(q)));
  }
  throw contract_error("unknown channel repr: " + repr);
}

/// Reads any channel representation and projects it onto the Pauli form;
/// throws if the channel is not Pauli-diagonal.
inline PauliChannel pauli_channel_from_json(const json &j) {
  const std::string repr = j.at("repr").get<std::string>();
  if (repr == "pauli") {
    const int d = j.at("d").get<int>();
    Eigen::VectorXd q(d * d);
    for (int i = 0; i < d * d; ++i) q[i] = j.at("data")[i].get<double>();
    return PauliChannel(d, std::move(q));
  }
  return super_to_pauli_channel(channel_from_json(j));
}

// ---------------------------------------------------------------------------
// SPAM and noise specs
// ---------------------------------------------------------------------------

inline SpamSpec spam_from_json(const json &j, int n) {
  if (j.is_null() || (j.contains("ideal") && j.at("ideal").get<bool>()))
    return SpamSpec::ideal(n);
  const int d = 1 << n;
  SpamSpec spam;
  spam.rho = DensityMatrix(d, detail::json_to_matrix(j.at("rho"), d, d));
  spam.effect = detail::json_to_matrix(j.at("effect"), d, d);
  spam.validate();
  return spam;
}

inline int axis_from_string(const std::string &s) {
  if (s == "x") return 0;
  if (s == "y") return 1;
  if (s == "z") return 2;
  throw contract_error("axis must be x, y or z");
}

inline NoiseModel noise_from_json(const json &j, int n) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "depolarizing")
    return NoiseModel::depolarizing_noise(n, j.at("p").get<double>());
  if (kind == "amplitude_damping") {
    if (n != 1) throw contract_error("amplitude_damping noise is single-qubit");
    return NoiseModel::amplitude_damping_noise(j.at("gamma").get<double>());
  }
  if (kind == "gate_dependent_unitary") {
    std::vector<double> angles = j.at("angles").get<std::vector<double>>();
    int axis = j.contains("axis") ? axis_from_string(j.at("axis").get<std::string>()) : 2;
    return NoiseModel::gate_dependent_unitary(n, angles, axis);
  }
  if (kind == "over_rotation") {
    if (n != 1) throw contract_error("over_rotation noise is single-qubit");
    return NoiseModel::over_rotation(j.at("delta").get<double>());
  }
  if (kind == "inverse_gate_pathology") return NoiseModel::inverse_gate_pathology(n);
  if (kind == "custom") {
    std::vector<Superoperator> table;
    for (const auto &cj : j.at("channels")) table.push_back(channel_from_json(cj));
    return NoiseModel::gate_dependent(n, std::move(table));
  }
  throw contract_error("unknown noise kind: " + kind);
}

inline RbConfig config_from_json(const json &j) {
  const int n = j.at("n").get<int>();
  RbConfig cfg(noise_from_json(j.at("noise"), n),
               spam_from_json(j.contains("spam") ? j.at("spam") : json(), n));
  cfg.m_list = j.at("m_list").get<std::vector<int>>();
  cfg.sequences_per_length = j.value("sequences_per_length", 100);
  cfg.shots = j.value("shots", 0);
  cfg.seed = j.value("seed", uint64_t{0});
  cfg.validate();
  return cfg;
}

// ---------------------------------------------------------------------------
// CSV dataset format: m,seq,survival,successes,shots
// ---------------------------------------------------------------------------

namespace detail {

inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline std::string dataset_to_csv(const RbDataset &data) {
  std::ostringstream out;
  out << "m,seq,survival,successes,shots\n";
  for (const auto &r : data.records)
    out << r.m << ',' << r.seq << ',' << detail::format_double(r.survival)
        << ',' << r.successes << ',' << r.shots << '\n';
  return out.str();
}

inline RbDataset dataset_from_csv(std::istream &in, int n = 1) {
  RbDataset data;
  data.n = n;
  std::string line;
  if (!std::getline(in, line) || line.rfind("m,seq,survival", 0) != 0)
    throw contract_error("CSV must start with header m,seq,survival,successes,shots");
  std::vector<int> seen_m;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    RbRecord rec;
    std::istringstream row(line);
    std::string cell;
    auto next = [&](const char *what) {
      if (!std::getline(row, cell, ','))
        throw contract_error(std::string("CSV row missing column: ") + what);
      return cell;
    };
    rec.m = std::stoi(next("m"));
    rec.seq = std::stoi(next("seq"));
    rec.survival = std::stod(next("survival"));
    rec.successes = std::stoi(next("successes"));
    rec.shots = std::stoi(next("shots"));
    if (rec.survival < -1e-9 || rec.survival > 1 + 1e-9)
      throw contract_error("CSV survival outside [0,1]");
    data.records.push_back(rec);
    if (std::find(seen_m.begin(), seen_m.end(), rec.m) == seen_m.end())
      seen_m.push_back(rec.m);
  }
  std::sort(seen_m.begin(), seen_m.end());
  data.m_list = seen_m;
  if (!data.records.empty()) data.shots = data.records.front().shots;
  return data;
}

// ---------------------------------------------------------------------------
// Fit and analysis reports
// ---------------------------------------------------------------------------

inline json fit_to_json(const FitResult &fit,
                        const std::vector<int> &m_grid = {}) {
  json out;
  out["model"] = fit.model == FitModel::Zeroth ? "zeroth" : "first";
  out["flags"] = {{"converged", fit.converged},
                  {"boundary_hit", fit.boundary_hit},
                  {"flat_curve", fit.flat_curve}};
  if (fit.flat_curve) return out;
  out["params"] = {{"p", fit.p}, {"a", fit.a}, {"b", fit.b}};
  out["std_errors"] = {{"p", fit.se_p}, {"a", fit.se_a}, {"b", fit.se_b}};
  if (fit.model == FitModel::First) {
    out["params"]["d"] = fit.dcoef;
    out["std_errors"]["d"] = fit.se_d;
  }
  out["r"] = fit.error_rate();
  out["residual_sum"] = fit.residual_sum;
  if (!m_grid.empty()) {
    json curve = json::array();
    for (int m : m_grid)
      curve.push_back({{"m", m}, {"value", fit.predict(m)}});
    out["predicted_curve"] = std::move(curve);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Run manifest: identical (config, seed, version) give byte-identical CSVs
// ---------------------------------------------------------------------------

inline uint64_t fnv1a64(const std::string &s) {
  uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct RunManifest {
  std::string config_hash;
  uint64_t seed = 0;
  std::string version;
  int64_t created_unix = 0;
  std::vector<std::string> outputs;

  json to_json() const {
    return json{{"config_hash", config_hash},
                {"seed", seed},
                {"version", version},
                {"created_unix", created_unix},
                {"outputs", outputs}};
  }
};

inline RunManifest make_manifest(const json &config, uint64_t seed,
                                 std::vector<std::string> outputs,
                                 int64_t created_unix) {
  RunManifest m;
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(config.dump())));
  m.config_hash = buf;
  m.seed = seed;
  m.version = kVersion;
  m.created_unix = created_unix;
  m.outputs = std::move(outputs);
  return m;
}

inline void write_file(const std::string &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw contract_error("cannot open for writing: " + path);
  out << content;
}

inline std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw contract_error("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace rblab

#endif  // RBLAB_IO_HPP_
