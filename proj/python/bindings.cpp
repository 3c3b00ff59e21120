// bindings.cpp - the _core extension module: reduction families,
// dilations, string models, filtering, scenarios, and the CLI commands
// as library calls.  Matrices cross the boundary as numpy arrays.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "eventum/config.hpp"
#include "eventum/dilation.hpp"
#include "eventum/filtering.hpp"
#include "eventum/linalg.hpp"
#include "eventum/reduction.hpp"
#include "eventum/run.hpp"
#include "eventum/scenarios.hpp"
#include "eventum/string_model.hpp"
#include "eventum/version.hpp"

namespace py = pybind11;
using namespace eventum;

namespace {

nlohmann::json parse_json_arg(const std::string& text,
                              const char* what) {
  if (text.empty()) return nlohmann::json::object();
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "quantum measurement chains: reduction families, unitary dilation, "
      "string dynamics, filtering";
  m.attr("__version__") = EVENTUM_VERSION;

  py::register_exception<ZeroProbabilityBranch>(m, "ZeroProbabilityBranch");
  py::register_exception<ConfigError>(m, "ConfigError");

  // ----- linalg -----
  m.def("spectral_norm", &spectral_norm, py::arg("a"));
  m.def("commutator_norm", &commutator_norm, py::arg("a"), py::arg("b"));
  m.def("check_isometry", &check_isometry, py::arg("a"));
  m.def("exp_minus_i", &exp_minus_i, py::arg("hermitian"));
  m.def("tensor_product", &tensor_product, py::arg("a"), py::arg("b"));

  // ----- reduction -----
  py::class_<OutcomeSet>(m, "OutcomeSet")
      .def_readonly("labels", &OutcomeSet::labels)
      .def_readonly("weights", &OutcomeSet::weights);

  py::class_<ReductionFamily>(m, "ReductionFamily")
      .def_readonly("system_dim", &ReductionFamily::system_dim)
      .def_readonly("outcomes", &ReductionFamily::outcomes)
      .def_readonly("kraus", &ReductionFamily::kraus)
      .def("complete_observation", &ReductionFamily::complete_observation)
      .def("kraus_for", &ReductionFamily::kraus_for, py::arg("y"),
           py::return_value_policy::copy);

  m.def("make_family", &make_family, py::arg("system_dim"), py::arg("vs"),
        py::arg("weights") = std::vector<double>{});
  m.def("make_family_hidden", &make_family_hidden, py::arg("system_dim"),
        py::arg("kraus"), py::arg("labels") = std::vector<int>{},
        py::arg("weights") = std::vector<double>{});
  m.def("validate_completeness", &validate_completeness, py::arg("fam"));
  m.def("projection_family", &projection_family, py::arg("y_obs"),
        py::arg("cluster_tol") = 1e-8);
  m.def("projection_eigenvalues", &projection_eigenvalues, py::arg("y_obs"),
        py::arg("cluster_tol") = 1e-8);
  m.def("pointer_family", &pointer_family, py::arg("x_obs"), py::arg("phi"),
        py::arg("e_action"));
  m.def("apply_reduction", &apply_reduction, py::arg("fam"), py::arg("psi"),
        py::arg("y"));
  m.def("decohere", &decohere, py::arg("rho"), py::arg("fam"));
  m.def("operation_map", &operation_map, py::arg("fam"), py::arg("y"),
        py::arg("b"));
  m.def("instrument_map", &instrument_map, py::arg("fam"), py::arg("y"),
        py::arg("sigma"));

  // ----- dilation -----
  py::class_<Dilation>(m, "Dilation")
      .def_readonly("system_dim", &Dilation::system_dim)
      .def_readonly("pointer_dim", &Dilation::pointer_dim)
      .def_readonly("W", &Dilation::W)
      .def_readonly("E", &Dilation::E)
      .def_readonly("weights", &Dilation::weights)
      .def("num_outcomes", &Dilation::num_outcomes);

  py::class_<PointerShiftDilation>(m, "PointerShiftDilation")
      .def_readonly("W", &PointerShiftDilation::W)
      .def_readonly("phi", &PointerShiftDilation::phi);

  py::class_<DilationReport>(m, "DilationReport")
      .def_readonly("unitarity_left", &DilationReport::unitarity_left)
      .def_readonly("unitarity_right", &DilationReport::unitarity_right)
      .def_readonly("vacuum_block", &DilationReport::vacuum_block)
      .def_readonly("extraction_max", &DilationReport::extraction_max)
      .def("max_residual", &DilationReport::max_residual);

  m.def("dilation_block", &dilation_block, py::arg("w"),
        py::arg("system_dim"), py::arg("pointer_dim"), py::arg("row"),
        py::arg("col"));
  m.def("canonical_dilation",
        py::overload_cast<const ReductionFamily&, const Operator&>(
            &canonical_dilation),
        py::arg("fam"), py::arg("e_action"));
  m.def("canonical_dilation",
        py::overload_cast<const ReductionFamily&>(&canonical_dilation),
        py::arg("fam"));
  m.def("pointer_shift_dilation", &pointer_shift_dilation, py::arg("x_obs"),
        py::arg("phi"), py::arg("e_action"));
  m.def("verify_dilation", &verify_dilation, py::arg("dil"), py::arg("fam"));
  m.def("reversed_family", &reversed_family, py::arg("dil"));

  // ----- distributions -----
  py::class_<SequenceMass>(m, "SequenceMass")
      .def_readonly("sequence", &SequenceMass::sequence)
      .def_readonly("mass", &SequenceMass::mass);

  py::class_<SequenceDistribution>(m, "SequenceDistribution")
      .def_readonly("steps", &SequenceDistribution::steps)
      .def_readonly("entries", &SequenceDistribution::entries)
      .def_readonly("pruned_mass", &SequenceDistribution::pruned_mass)
      .def("total_mass", &SequenceDistribution::total_mass)
      .def("mass_of", &SequenceDistribution::mass_of, py::arg("sequence"));

  m.def("total_variation_distance", &total_variation_distance, py::arg("p"),
        py::arg("q"));

  // ----- string model -----
  py::class_<Site>(m, "Site")
      .def_static("minus", &Site::minus, py::arg("k"))
      .def_static("plus", &Site::plus, py::arg("k"))
      .def_readonly("past", &Site::past)
      .def_readonly("k", &Site::k);

  py::class_<StringModel>(m, "StringModel")
      .def_readonly("horizon", &StringModel::horizon)
      .def_readonly("step_unitary", &StringModel::step_unitary)
      .def_property_readonly("system_dim", &StringModel::system_dim)
      .def_property_readonly("pointer_dim", &StringModel::pointer_dim)
      .def_property_readonly("total_dim", &StringModel::total_dim);

  py::class_<NondemolitionGrid>(m, "NondemolitionGrid")
      .def_readonly("max_res_by", &NondemolitionGrid::max_res_by)
      .def_readonly("max_res_yy", &NondemolitionGrid::max_res_yy);

  py::class_<ReflectionReport>(m, "ReflectionReport")
      .def_readonly("involution", &ReflectionReport::involution)
      .def_readonly("reflect_identity", &ReflectionReport::reflect_identity)
      .def_readonly("reversed_causality",
                    &ReflectionReport::reversed_causality);

  m.def("build_step_unitary", &build_step_unitary, py::arg("dil"),
        py::arg("horizon"), py::arg("dim_cap") = kDefaultDimCap);
  m.def("build_free_shift", &build_free_shift, py::arg("model"));
  m.def("pointer_observable", &pointer_observable, py::arg("model"),
        py::arg("site"));
  m.def("initial_state", &initial_state, py::arg("model"), py::arg("psi"));
  m.def("evolve", &evolve, py::arg("model"), py::arg("psi"), py::arg("t"));
  m.def("heisenberg_transform", &heisenberg_transform, py::arg("model"),
        py::arg("a"), py::arg("t"));
  m.def("check_shift_reversal", &check_shift_reversal, py::arg("model"),
        py::arg("t"), py::arg("s_past"));
  m.def("check_nondemolition", &check_nondemolition, py::arg("model"),
        py::arg("b_sys"), py::arg("t"), py::arg("r"));
  m.def("nondemolition_grid", &nondemolition_grid, py::arg("model"),
        py::arg("t_max"));
  m.def("check_algebra_invariance", &check_algebra_invariance,
        py::arg("model"), py::arg("generators"));
  m.def("default_invariance_generators", &default_invariance_generators,
        py::arg("model"));
  m.def("future_pauli_x_generator", &future_pauli_x_generator,
        py::arg("model"));
  m.def("joint_outcome_distribution", &joint_outcome_distribution,
        py::arg("model"), py::arg("psi"), py::arg("t"));
  m.def("extract_conditioned_state", &extract_conditioned_state,
        py::arg("model"), py::arg("psi_t"), py::arg("outcomes"));
  m.def("vacuum_persistence_residual", &vacuum_persistence_residual,
        py::arg("model"), py::arg("psi"), py::arg("t"));
  m.def("reflect_and_reverse", &reflect_and_reverse, py::arg("model"));

  // ----- filtering -----
  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("outcomes", &Trajectory::outcomes)
      .def_readonly("filtered", &Trajectory::filtered)
      .def_readonly("weight", &Trajectory::weight)
      .def_readonly("posterior", &Trajectory::posterior);

  py::class_<SampleResult>(m, "SampleResult")
      .def_readonly("trajectories", &SampleResult::trajectories)
      .def_readonly("empirical", &SampleResult::empirical)
      .def_readonly("seed", &SampleResult::seed)
      .def_readonly("generator", &SampleResult::generator);

  m.def("filter_step", &filter_step, py::arg("fam"), py::arg("psi_prev"),
        py::arg("y"));
  m.def("posterior_step", &posterior_step, py::arg("fam"),
        py::arg("post_prev"), py::arg("y"));
  m.def("prior_distribution", &prior_distribution, py::arg("fam"),
        py::arg("psi"), py::arg("t"), py::arg("sequence_cap") = 4096L);
  m.def("make_trajectory", &make_trajectory, py::arg("fam"), py::arg("psi"),
        py::arg("outcomes"));
  m.def("sample_trajectories", &sample_trajectories, py::arg("fam"),
        py::arg("psi"), py::arg("t"), py::arg("n"), py::arg("seed"));
  m.def("conditional_expectation", &conditional_expectation, py::arg("fam"),
        py::arg("psi"), py::arg("b"), py::arg("t"), py::arg("observed"));

  // ----- scenarios and commands -----
  py::class_<Scenario>(m, "Scenario")
      .def_readonly("name", &Scenario::name)
      .def_readonly("system_dim", &Scenario::system_dim)
      .def_readonly("family", &Scenario::family)
      .def_readonly("hamiltonian", &Scenario::hamiltonian)
      .def_readonly("initial_state", &Scenario::initial_state)
      .def_readonly("horizon", &Scenario::horizon)
      .def_readonly("steps", &Scenario::steps);

  m.def(
      "build_scenario",
      [](const std::string& name, const std::string& params_json) {
        return build_scenario(name,
                              parse_json_arg(params_json, "scenario params"));
      },
      py::arg("name"), py::arg("params_json") = std::string());
  m.def("scenario_names", [] { return scenario_names(); });

  // returns (exit_code, report_json, csv, summary)
  m.def(
      "run_command",
      [](const std::string& command, const std::string& config_json) {
        RunConfig cfg =
            config_from_json(parse_json_arg(config_json, "config"));
        CommandResult res = run_command(command, cfg);
        return py::make_tuple(res.exit_code, res.report.dump(2), res.csv,
                              res.summary);
      },
      py::arg("command"), py::arg("config_json") = std::string());
}
