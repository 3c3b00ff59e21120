// scenarios.cpp - the named experiment configurations.

#include "eventum/scenarios.hpp"

#include <cmath>
#include <stdexcept>

#include "eventum/config.hpp"

namespace eventum {

namespace {

const double kPi = 3.14159265358979323846;

StateVector default_or_param_state(const nlohmann::json& params,
                                   const StateVector& fallback) {
  if (params.contains("initial_state"))
    return vector_from_json(params.at("initial_state"));
  return fallback;
}

void apply_common(Scenario& sc, const nlohmann::json& params) {
  if (params.contains("steps")) sc.steps = params.at("steps").get<int>();
  if (params.contains("horizon")) sc.horizon = params.at("horizon").get<int>();
  if (sc.steps < 0 || sc.horizon < 1 || sc.steps > sc.horizon)
    throw ConfigError("need 0 <= steps <= horizon and horizon >= 1");
}

Scenario build_cat(const nlohmann::json& params) {
  Scenario sc;
  sc.name = "cat";
  sc.system_dim = 2;
  Operator p0 = Operator::Zero(2, 2), p1 = Operator::Zero(2, 2);
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  sc.family = make_family(2, {p0, p1});
  sc.hamiltonian = Operator::Zero(2, 2);
  StateVector psi(2);
  psi << 3.0 / 5.0, 4.0 / 5.0;
  sc.initial_state = default_or_param_state(params, psi);
  return sc;
}

Scenario build_weak_qubit(const nlohmann::json& params) {
  Scenario sc;
  sc.name = "weak-qubit";
  sc.system_dim = 2;
  double theta = kPi / 6.0;
  if (params.contains("theta")) theta = params.at("theta").get<double>();
  Operator v1 = Operator::Zero(2, 2), v2 = Operator::Zero(2, 2);
  v1(0, 0) = std::cos(theta);
  v1(1, 1) = 1.0;
  v2(0, 0) = std::sin(theta);
  sc.family = make_family(2, {v1, v2});
  sc.hamiltonian = Operator::Zero(2, 2);
  StateVector psi(2);
  psi << 3.0 / 5.0, 4.0 / 5.0;
  sc.initial_state = default_or_param_state(params, psi);
  return sc;
}

Scenario build_pointer_zn(const nlohmann::json& params) {
  Scenario sc;
  sc.name = "pointer-Zn";
  int n = 2;
  if (params.contains("n")) n = params.at("n").get<int>();
  if (n < 1) throw ConfigError("pointer-Zn needs n >= 1");

  Operator x;
  if (params.contains("X")) {
    x = matrix_from_json(params.at("X"));
  } else {
    x = Operator::Zero(n, n);
    for (int c = 0; c < n; ++c) x(c, c) = static_cast<double>(c);
  }
  sc.system_dim = static_cast<int>(x.rows());

  StateVector phi;
  if (params.contains("phi")) {
    phi = vector_from_json(params.at("phi"));
  } else {
    phi = StateVector::Zero(n);
    if (n == 1) {
      phi(0) = 1.0;
    } else {
      phi(0) = std::sqrt(0.8);
      phi(1) = std::sqrt(0.2);
    }
  }
  if (phi.size() != n) throw ConfigError("phi must have n entries");

  sc.hamiltonian = Operator::Zero(sc.system_dim, sc.system_dim);
  if (params.contains("E")) sc.hamiltonian = matrix_from_json(params.at("E"));

  sc.family = pointer_family(x, phi, sc.hamiltonian);

  StateVector psi = StateVector::Zero(sc.system_dim);
  if (sc.system_dim >= 2) {
    psi(0) = 3.0 / 5.0;
    psi(1) = 4.0 / 5.0;
  } else {
    psi(0) = 1.0;
  }
  sc.initial_state = default_or_param_state(params, psi);
  return sc;
}

Scenario build_sequential_observable(const nlohmann::json& params) {
  Scenario sc;
  sc.name = "sequential-observable";
  Operator b0 = pauli_z();
  if (params.contains("B0")) b0 = matrix_from_json(params.at("B0"));
  sc.system_dim = static_cast<int>(b0.rows());

  sc.hamiltonian = (kPi / 4.0) * pauli_x();
  if (params.contains("E")) sc.hamiltonian = matrix_from_json(params.at("E"));
  if (sc.hamiltonian.rows() != sc.system_dim)
    throw ConfigError("E and B0 dimensions differ");

  // V(y) = (projector of B0 onto its y-th eigenvalue) e^{-iE}:
  // evolve one step, then reduce
  Operator expe = exp_minus_i(sc.hamiltonian);
  std::vector<EigenCluster> clusters = cluster_spectrum(b0);
  std::vector<Operator> vs;
  vs.reserve(clusters.size());
  for (const EigenCluster& c : clusters) vs.push_back(c.projector * expe);
  sc.family = make_family(sc.system_dim, vs);

  StateVector psi = StateVector::Zero(sc.system_dim);
  if (sc.system_dim >= 2) {
    psi(0) = 3.0 / 5.0;
    psi(1) = 4.0 / 5.0;
  } else {
    psi(0) = 1.0;
  }
  sc.initial_state = default_or_param_state(params, psi);
  return sc;
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {
      "cat", "weak-qubit", "pointer-Zn", "sequential-observable"};
  return names;
}

Scenario build_scenario(const std::string& name,
                        const nlohmann::json& params) {
  if (!params.is_object() && !params.is_null())
    throw ConfigError("scenario params must be a JSON object");
  nlohmann::json p = params.is_null() ? nlohmann::json::object() : params;

  Scenario sc;
  if (name == "cat")
    sc = build_cat(p);
  else if (name == "weak-qubit")
    sc = build_weak_qubit(p);
  else if (name == "pointer-Zn")
    sc = build_pointer_zn(p);
  else if (name == "sequential-observable")
    sc = build_sequential_observable(p);
  else
    throw ConfigError("unknown scenario: " + name);

  if (std::abs(sc.initial_state.norm() - 1.0) > 1e-9)
    throw ConfigError("initial state is not normalized");
  sc.initial_state /= sc.initial_state.norm();
  apply_common(sc, p);
  return sc;
}

}  // namespace eventum
