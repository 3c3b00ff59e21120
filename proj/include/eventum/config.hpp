// config.hpp - run configuration, JSON serialization conventions, and
// report helpers for the CLI.
//
// Serialization conventions (shared by configs and reports):
//   * complex scalars are two-element arrays [re, im]
//   * matrices are arrays of rows, vectors are arrays of entries
//   * distributions are sorted arrays of {"sequence": [...],
//     "probability": p}
// A parsed config round-trips to an identical canonical form, and the
// canonical dump is what the config hash covers.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "eventum/linalg.hpp"
#include "eventum/reduction.hpp"

namespace eventum {

// config-file or flag errors; mapped to exit code 2 by the CLI
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// ===== JSON value conventions =====

nlohmann::json complex_to_json(const Complex& z);
Complex complex_from_json(const nlohmann::json& j);
nlohmann::json matrix_to_json(const Operator& a);
Operator matrix_from_json(const nlohmann::json& j);
nlohmann::json vector_to_json(const StateVector& v);
StateVector vector_from_json(const nlohmann::json& j);

nlohmann::json family_to_json(const ReductionFamily& fam);
ReductionFamily family_from_json(const nlohmann::json& j);

// ===== run configuration =====

struct RunConfig {
  std::string scenario = "cat";        // ignored when family is given
  nlohmann::json params = nlohmann::json::object();
  std::optional<nlohmann::json> family;         // explicit matrices
  std::optional<nlohmann::json> initial_state;  // overrides scenario's
  std::optional<nlohmann::json> hamiltonian;
  int steps = -1;    // -1: scenario default
  int horizon = -1;
  long samples = 10000;
  std::uint64_t seed = 42;
  double tol = 1e-9;
  long dim_cap = 8192;
  std::string out;   // empty: stdout only
  std::string format = "json";

  nlohmann::json canonical() const;  // all defaults materialized
};

RunConfig config_from_json(const nlohmann::json& j);
RunConfig config_from_file(const std::string& path);

// FNV-1a 64-bit over the canonical dump, as a hex string
std::string config_hash(const RunConfig& cfg);

// report envelope: tool version, config hash, seed, tolerances
nlohmann::json report_header(const RunConfig& cfg, const std::string& command);

// ===== CSV =====

// RFC-4180 field quoting; '.' decimal separator
std::string csv_quote(const std::string& field);
// shortest-faithful double rendering at 17 significant digits
std::string csv_double(double x);

}  // namespace eventum
