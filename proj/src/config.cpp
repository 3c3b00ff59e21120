// config.cpp - config parsing, JSON conventions, report envelope, CSV.

#include "eventum/config.hpp"

#include <cstdio>
#include <fstream>
#include <set>

#include "eventum/version.hpp"

namespace eventum {

// ===== JSON value conventions =====

nlohmann::json complex_to_json(const Complex& z) {
  return nlohmann::json::array({z.real(), z.imag()});
}

Complex complex_from_json(const nlohmann::json& j) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw ConfigError("complex entries are numbers or [re, im] pairs");
}

nlohmann::json matrix_to_json(const Operator& a) {
  nlohmann::json rows = nlohmann::json::array();
  for (long i = 0; i < a.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (long j = 0; j < a.cols(); ++j) row.push_back(complex_to_json(a(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Operator matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty())
    throw ConfigError("matrices are nonempty arrays of rows");
  const long rows = static_cast<long>(j.size());
  const long cols = static_cast<long>(j[0].size());
  Operator a(rows, cols);
  for (long i = 0; i < rows; ++i) {
    if (!j[i].is_array() || static_cast<long>(j[i].size()) != cols)
      throw ConfigError("matrix rows have unequal lengths");
    for (long c = 0; c < cols; ++c) a(i, c) = complex_from_json(j[i][c]);
  }
  return a;
}

nlohmann::json vector_to_json(const StateVector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (long i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

StateVector vector_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.empty())
    throw ConfigError("vectors are nonempty arrays");
  StateVector v(static_cast<long>(j.size()));
  for (long i = 0; i < v.size(); ++i) v(i) = complex_from_json(j[i]);
  return v;
}

nlohmann::json family_to_json(const ReductionFamily& fam) {
  nlohmann::json j;
  j["system_dim"] = fam.system_dim;
  j["labels"] = fam.outcomes.labels;
  j["weights"] = fam.outcomes.weights;
  nlohmann::json kraus = nlohmann::json::array();
  for (const auto& branch : fam.kraus) {
    nlohmann::json per_z = nlohmann::json::array();
    for (const Operator& v : branch) per_z.push_back(matrix_to_json(v));
    kraus.push_back(std::move(per_z));
  }
  j["kraus"] = std::move(kraus);
  return j;
}

ReductionFamily family_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("family must be a JSON object");
  if (!j.contains("system_dim"))
    throw ConfigError("family needs system_dim");
  int d = j.at("system_dim").get<int>();

  try {
    // shorthand: "operators": [V1, V2, ...] with singleton z
    if (j.contains("operators")) {
      std::vector<Operator> vs;
      for (const auto& m : j.at("operators")) vs.push_back(matrix_from_json(m));
      std::vector<double> weights;
      if (j.contains("weights"))
        weights = j.at("weights").get<std::vector<double>>();
      return make_family(d, vs, weights);
    }

    if (!j.contains("kraus"))
      throw ConfigError("family needs operators or kraus");
    std::vector<std::vector<Operator>> kraus;
    for (const auto& branch : j.at("kraus")) {
      std::vector<Operator> per_z;
      for (const auto& m : branch) per_z.push_back(matrix_from_json(m));
      kraus.push_back(std::move(per_z));
    }
    std::vector<int> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<int>>();
    std::vector<double> weights;
    if (j.contains("weights"))
      weights = j.at("weights").get<std::vector<double>>();
    return make_family_hidden(d, kraus, labels, weights);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("invalid family: ") + e.what());
  }
}

// ===== run configuration =====

nlohmann::json RunConfig::canonical() const {
  nlohmann::json j;
  j["scenario"] = scenario;
  j["params"] = params.is_null() ? nlohmann::json::object() : params;
  j["family"] = family ? *family : nlohmann::json();
  j["initial_state"] = initial_state ? *initial_state : nlohmann::json();
  j["hamiltonian"] = hamiltonian ? *hamiltonian : nlohmann::json();
  j["steps"] = steps;
  j["horizon"] = horizon;
  j["samples"] = samples;
  j["seed"] = seed;
  j["tol"] = tol;
  j["dim_cap"] = dim_cap;
  j["out"] = out;
  j["format"] = format;
  return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::set<std::string> known = {
      "scenario", "params",  "family", "initial_state", "hamiltonian",
      "steps",    "horizon", "samples", "seed",          "tol",
      "dim_cap",  "out",     "format"};
  for (const auto& [key, value] : j.items())
    if (!known.count(key)) throw ConfigError("unknown config key: " + key);

  RunConfig cfg;
  try {
    if (j.contains("scenario")) cfg.scenario = j.at("scenario").get<std::string>();
    if (j.contains("params")) {
      if (!j.at("params").is_object())
        throw ConfigError("params must be an object");
      cfg.params = j.at("params");
    }
    if (j.contains("family") && !j.at("family").is_null())
      cfg.family = j.at("family");
    if (j.contains("initial_state") && !j.at("initial_state").is_null())
      cfg.initial_state = j.at("initial_state");
    if (j.contains("hamiltonian") && !j.at("hamiltonian").is_null())
      cfg.hamiltonian = j.at("hamiltonian");
    if (j.contains("steps")) cfg.steps = j.at("steps").get<int>();
    if (j.contains("horizon")) cfg.horizon = j.at("horizon").get<int>();
    if (j.contains("samples")) cfg.samples = j.at("samples").get<long>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("tol")) cfg.tol = j.at("tol").get<double>();
    if (j.contains("dim_cap")) cfg.dim_cap = j.at("dim_cap").get<long>();
    if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
    if (j.contains("format")) cfg.format = j.at("format").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config type error: ") + e.what());
  }

  if (cfg.format != "json" && cfg.format != "csv")
    throw ConfigError("format must be json or csv");
  if (cfg.samples < 0) throw ConfigError("samples must be >= 0");
  if (cfg.tol <= 0) throw ConfigError("tol must be positive");
  if (cfg.dim_cap < 1) throw ConfigError("dim_cap must be >= 1");
  return cfg;
}

RunConfig config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return config_from_json(j);
}

std::string config_hash(const RunConfig& cfg) {
  const std::string dump = cfg.canonical().dump();
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : dump) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(buf);
}

nlohmann::json report_header(const RunConfig& cfg,
                             const std::string& command) {
  nlohmann::json j;
  j["tool"] = "eventum";
  j["version"] = EVENTUM_VERSION;
  j["command"] = command;
  j["config_hash"] = config_hash(cfg);
  j["seed"] = cfg.seed;
  j["tolerance"] = cfg.tol;
  j["config"] = cfg.canonical();
  return j;
}

// ===== CSV =====

std::string csv_quote(const std::string& field) {
  bool needs = false;
  for (char c : field)
    if (c == ',' || c == '"' || c == '\n' || c == '\r') needs = true;
  if (!needs) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string csv_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf);
}

}  // namespace eventum
