// scenarios.hpp - named experiment configurations wiring the modules
// together.  Parameters arrive as the same JSON schema the CLI config
// file uses; missing keys take the documented defaults.

#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "eventum/linalg.hpp"
#include "eventum/reduction.hpp"

namespace eventum {

struct Scenario {
  std::string name;
  int system_dim = 0;
  ReductionFamily family;
  Operator hamiltonian;      // E, zero matrix when absent
  StateVector initial_state;
  int horizon = 3;  // T
  int steps = 3;    // t
};

// names: "cat", "weak-qubit", "pointer-Zn", "sequential-observable"
//   cat:        d=2 projectors onto |0>,|1>, psi=(3/5,4/5)
//   weak-qubit: V(1)=diag(cos theta,1), V(2)=diag(sin theta,0);
//               params: "theta" (default pi/6)
//   pointer-Zn: pointer_family(X, phi, E); params: "n" (default 2),
//               "X", "phi", "E"
//   sequential-observable: V(y) = (eigenprojector of B0 at value y)
//               e^{-iE}; params: "B0" (default PauliZ),
//               "E" (default (pi/4) PauliX)
// common params: "initial_state", "steps", "horizon"
Scenario build_scenario(const std::string& name,
                        const nlohmann::json& params = {});

const std::vector<std::string>& scenario_names();

}  // namespace eventum
