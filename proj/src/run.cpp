// run.cpp - the CLI commands as library calls.
//
// Every command returns a CommandResult whose report is a fully
// deterministic JSON document (sorted keys, no timestamps): identical
// config + seed reproduce identical bytes.

#include "eventum/run.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "eventum/dilation.hpp"
#include "eventum/filtering.hpp"
#include "eventum/string_model.hpp"

namespace eventum {

namespace {

nlohmann::json sequence_json(const std::vector<int>& seq) {
  return nlohmann::json(seq);
}

std::string sequence_csv(const std::vector<int>& seq) {
  std::string s;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(seq[i]);
  }
  return csv_quote(s);
}

nlohmann::json distribution_json(const SequenceDistribution& dist) {
  nlohmann::json entries = nlohmann::json::array();
  for (const SequenceMass& e : dist.entries)
    entries.push_back(
        {{"sequence", sequence_json(e.sequence)}, {"probability", e.mass}});
  return entries;
}

nlohmann::json check_row(const std::string& name, double value,
                         double threshold, bool& all_pass) {
  bool pass = value <= threshold;
  if (!pass) all_pass = false;
  return {{"name", name},
          {"value", value},
          {"threshold", threshold},
          {"pass", pass}};
}

// scenario steps/horizon after config overrides
void apply_overrides(Scenario& sc, const RunConfig& cfg) {
  if (cfg.steps >= 0) sc.steps = cfg.steps;
  if (cfg.horizon >= 0) sc.horizon = cfg.horizon;
  if (cfg.horizon >= 0 && cfg.horizon < 1)
    throw ConfigError("horizon must be >= 1");
  if (sc.steps < 0 || sc.steps > sc.horizon)
    throw ConfigError("need 0 <= steps <= horizon");
  if (cfg.initial_state) {
    StateVector psi = vector_from_json(*cfg.initial_state);
    if (psi.size() != sc.system_dim)
      throw ConfigError("initial_state dimension mismatch");
    if (std::abs(psi.norm() - 1.0) > 1e-9)
      throw ConfigError("initial state is not normalized");
    sc.initial_state = psi / psi.norm();
  }
  if (cfg.hamiltonian) {
    Operator e = matrix_from_json(*cfg.hamiltonian);
    if (e.rows() != sc.system_dim || e.cols() != sc.system_dim)
      throw ConfigError("hamiltonian dimension mismatch");
    if ((e - e.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
      throw ConfigError("hamiltonian is not Hermitian");
    sc.hamiltonian = e;
  }
}

StringModel scenario_model(const Scenario& sc, const RunConfig& cfg) {
  Dilation dil = canonical_dilation(sc.family, sc.hamiltonian);
  return build_step_unitary(dil, sc.horizon, cfg.dim_cap);
}

}  // namespace

Scenario resolve_scenario(const RunConfig& cfg) {
  Scenario sc;
  if (cfg.family) {
    sc.name = "custom";
    sc.family = family_from_json(*cfg.family);
    sc.system_dim = sc.family.system_dim;
    sc.hamiltonian = Operator::Zero(sc.system_dim, sc.system_dim);
    if (!cfg.initial_state)
      throw ConfigError("explicit family needs initial_state");
    sc.initial_state = StateVector::Zero(sc.system_dim);
    sc.initial_state(0) = 1.0;  // replaced by the override below
  } else {
    sc = build_scenario(cfg.scenario, cfg.params);
  }
  apply_overrides(sc, cfg);
  return sc;
}

// ===== validate =====

CommandResult run_validate(const RunConfig& cfg) {
  Scenario sc = resolve_scenario(cfg);
  CommandResult res;
  res.report = report_header(cfg, "validate");

  bool all_pass = true;
  nlohmann::json checks = nlohmann::json::array();
  double completeness = validate_completeness(sc.family);
  checks.push_back(
      check_row("completeness_residual", completeness, cfg.tol, all_pass));

  if (sc.family.complete_observation() && completeness <= 1e-9) {
    Dilation dil = canonical_dilation(sc.family, sc.hamiltonian);
    DilationReport rep = verify_dilation(dil, sc.family);
    checks.push_back(
        check_row("unitarity_left", rep.unitarity_left, cfg.tol, all_pass));
    checks.push_back(
        check_row("unitarity_right", rep.unitarity_right, cfg.tol, all_pass));
    checks.push_back(check_row("vacuum_block", rep.vacuum_block,
                               std::min(cfg.tol, 1e-12), all_pass));
    checks.push_back(check_row("extraction_max", rep.extraction_max,
                               std::min(cfg.tol, 1e-12), all_pass));
    res.report["pointer_dim"] = dil.pointer_dim;
  } else if (!sc.family.complete_observation()) {
    res.report["note"] =
        "incomplete observation: dilation checks need singleton z";
  } else {
    res.report["note"] = "family incomplete; dilation skipped";
  }

  res.report["checks"] = checks;
  res.report["system_dim"] = sc.system_dim;
  res.report["num_outcomes"] = sc.family.num_outcomes();
  res.report["pass"] = all_pass;
  res.exit_code = all_pass ? 0 : 1;

  std::ostringstream sum;
  sum << "validate " << sc.name << ": completeness residual " << completeness
      << (all_pass ? " [pass]" : " [FAIL]");
  res.summary = sum.str();

  if (cfg.format == "csv") {
    std::string csv = "check,value,threshold,pass\r\n";
    for (const auto& c : checks)
      csv += csv_quote(c.at("name").get<std::string>()) + "," +
             csv_double(c.at("value").get<double>()) + "," +
             csv_double(c.at("threshold").get<double>()) + "," +
             (c.at("pass").get<bool>() ? "1" : "0") + "\r\n";
    res.csv = csv;
  }
  return res;
}

// ===== simulate =====

CommandResult run_simulate(const RunConfig& cfg) {
  Scenario sc = resolve_scenario(cfg);
  StringModel model = scenario_model(sc, cfg);
  SequenceDistribution joint =
      joint_outcome_distribution(model, sc.initial_state, sc.steps);

  CommandResult res;
  res.report = report_header(cfg, "simulate");
  res.report["system_dim"] = sc.system_dim;
  res.report["pointer_dim"] = model.pointer_dim();
  res.report["total_dim"] = model.total_dim();
  res.report["horizon"] = sc.horizon;
  res.report["steps"] = sc.steps;
  res.report["distribution"] = distribution_json(joint);

  double vacuum_mass = 0;
  for (const SequenceMass& e : joint.entries)
    for (int y : e.sequence)
      if (y == 0) {
        vacuum_mass += e.mass;
        break;
      }

  bool all_pass = true;
  nlohmann::json checks = nlohmann::json::array();
  checks.push_back(check_row("total_mass_error",
                             std::abs(joint.total_mass() - 1.0), 1e-10,
                             all_pass));
  checks.push_back(check_row("vacuum_mass", vacuum_mass,
                             std::max(cfg.tol, 1e-12), all_pass));
  res.report["checks"] = checks;
  res.report["pass"] = all_pass;
  res.exit_code = all_pass ? 0 : 1;

  std::ostringstream sum;
  sum << "simulate " << sc.name << ": " << joint.entries.size()
      << " sequences, total mass " << joint.total_mass()
      << (all_pass ? " [pass]" : " [FAIL]");
  res.summary = sum.str();

  if (cfg.format == "csv") {
    std::string csv = "sequence,probability\r\n";
    for (const SequenceMass& e : joint.entries)
      csv += sequence_csv(e.sequence) + "," + csv_double(e.mass) + "\r\n";
    res.csv = csv;
  }
  return res;
}

// ===== filter =====

CommandResult run_filter(const RunConfig& cfg) {
  Scenario sc = resolve_scenario(cfg);
  SequenceDistribution prior =
      prior_distribution(sc.family, sc.initial_state, sc.steps);

  CommandResult res;
  res.report = report_header(cfg, "filter");
  res.report["system_dim"] = sc.system_dim;
  res.report["steps"] = sc.steps;
  res.report["prior"] = distribution_json(prior);
  res.report["pruned_mass"] = prior.pruned_mass;

  bool all_pass = true;
  double max_norm_err = 0;
  nlohmann::json posteriors = nlohmann::json::array();
  std::string csv =
      "sequence,probability," + [&] {
        std::string cols;
        for (int i = 0; i < sc.system_dim; ++i) {
          if (i) cols += ",";
          cols += "posterior_" + std::to_string(i) + "_re,posterior_" +
                  std::to_string(i) + "_im";
        }
        return cols;
      }() + "\r\n";

  for (const SequenceMass& e : prior.entries) {
    nlohmann::json row = {{"sequence", sequence_json(e.sequence)},
                          {"probability", e.mass}};
    std::string csv_row = sequence_csv(e.sequence) + "," + csv_double(e.mass);
    if (e.mass > 1e-14) {
      Trajectory traj = make_trajectory(sc.family, sc.initial_state, e.sequence);
      row["posterior"] = vector_to_json(traj.posterior);
      max_norm_err =
          std::max(max_norm_err, std::abs(traj.posterior.norm() - 1.0));
      for (int i = 0; i < sc.system_dim; ++i)
        csv_row += "," + csv_double(traj.posterior(i).real()) + "," +
                   csv_double(traj.posterior(i).imag());
    } else {
      row["posterior"] = nlohmann::json();
      for (int i = 0; i < sc.system_dim; ++i) csv_row += ",,";
    }
    posteriors.push_back(std::move(row));
    csv += csv_row + "\r\n";
  }
  res.report["posteriors"] = posteriors;

  nlohmann::json checks = nlohmann::json::array();
  checks.push_back(check_row(
      "total_mass_error",
      std::abs(prior.total_mass() + prior.pruned_mass - 1.0), 1e-10,
      all_pass));
  checks.push_back(
      check_row("posterior_norm_error", max_norm_err, 1e-12, all_pass));
  res.report["checks"] = checks;
  res.report["pass"] = all_pass;
  res.exit_code = all_pass ? 0 : 1;

  std::ostringstream sum;
  sum << "filter " << sc.name << ": " << prior.entries.size()
      << " sequences, pruned mass " << prior.pruned_mass
      << (all_pass ? " [pass]" : " [FAIL]");
  res.summary = sum.str();

  if (cfg.format == "csv") res.csv = csv;
  return res;
}

// ===== compare =====

CommandResult run_compare(const RunConfig& cfg) {
  Scenario sc = resolve_scenario(cfg);
  StringModel model = scenario_model(sc, cfg);

  SequenceDistribution joint =
      joint_outcome_distribution(model, sc.initial_state, sc.steps);
  SequenceDistribution prior =
      prior_distribution(sc.family, sc.initial_state, sc.steps);
  double tv = total_variation_distance(joint, prior);

  CommandResult res;
  res.report = report_header(cfg, "compare");
  res.report["system_dim"] = sc.system_dim;
  res.report["pointer_dim"] = model.pointer_dim();
  res.report["total_dim"] = model.total_dim();
  res.report["horizon"] = sc.horizon;
  res.report["steps"] = sc.steps;
  res.report["tv_distance"] = tv;

  bool all_pass = true;
  nlohmann::json checks = nlohmann::json::array();
  checks.push_back(check_row("tv_distance", tv, cfg.tol, all_pass));

  // per-sequence posterior fidelity between the two pictures
  StateVector psi_t = evolve(model, sc.initial_state, sc.steps);
  double max_defect = 0;
  nlohmann::json fidelities = nlohmann::json::array();
  for (const SequenceMass& e : prior.entries) {
    if (e.mass <= 1e-10) continue;
    StateVector a =
        extract_conditioned_state(model, psi_t, e.sequence);
    a /= a.norm();
    Trajectory traj = make_trajectory(sc.family, sc.initial_state, e.sequence);
    double defect = 1.0 - std::abs(a.dot(traj.posterior));
    max_defect = std::max(max_defect, defect);
    fidelities.push_back({{"sequence", sequence_json(e.sequence)},
                          {"probability", e.mass},
                          {"fidelity_defect", defect}});
  }
  res.report["posterior_fidelities"] = fidelities;
  checks.push_back(
      check_row("max_fidelity_defect", max_defect, cfg.tol, all_pass));

  // nondemolition grid over t >= r; the residual depends only on
  // k = t - r (unitary invariance), computed once per k
  {
    const int d = model.system_dim();
    std::vector<double> yy(sc.horizon + 1), by(sc.horizon + 1);
    Operator kmat = pointer_observable(model, Site::minus(0));
    Eigen::VectorXd y0 = kmat.diagonal().real();
    for (int k = 0; k <= sc.horizon; ++k) {
      if (k > 0) kmat = step_conjugate_inv(model, kmat);
      Operator c = kmat;
      for (long j = 0; j < c.cols(); ++j)
        for (long i = 0; i < c.rows(); ++i)
          c(i, j) = kmat(i, j) * (y0(j) - y0(i));
      yy[k] = spectral_norm(c);
      double worst = 0;
      for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) {
          Operator unit = Operator::Zero(d, d);
          unit(a, b) = 1.0;
          Operator comm =
              embed_apply_left(unit, model.space, {0}, kmat) -
              embed_apply_right(kmat, unit, model.space, {0});
          worst = std::max(worst, spectral_norm(comm));
        }
      by[k] = worst;
    }
    nlohmann::json grid = nlohmann::json::array();
    double max_by = 0, max_yy = 0;
    for (int t = 0; t <= sc.horizon; ++t)
      for (int r = 0; r <= t; ++r) {
        grid.push_back({{"t", t},
                        {"r", r},
                        {"res_by", by[t - r]},
                        {"res_yy", yy[t - r]}});
        max_by = std::max(max_by, by[t - r]);
        max_yy = std::max(max_yy, yy[t - r]);
      }
    res.report["nondemolition"] = grid;
    checks.push_back(
        check_row("max_nondemolition_by", max_by, cfg.tol, all_pass));
    checks.push_back(
        check_row("max_nondemolition_yy", max_yy, cfg.tol, all_pass));
  }

  // shift reversal over all admissible (s, t)
  {
    nlohmann::json rows = nlohmann::json::array();
    double worst = 0;
    for (int s = 0; s < sc.horizon; ++s)
      for (int t = 0; s + t <= sc.horizon - 1; ++t) {
        double r = check_shift_reversal(model, t, s);
        worst = std::max(worst, r);
        rows.push_back({{"s", -s}, {"t", t}, {"residual", r}});
      }
    res.report["shift_reversal"] = rows;
    checks.push_back(
        check_row("max_shift_reversal", worst, cfg.tol, all_pass));
  }

  // algebra invariance: forward must hold, the inverse violation is
  // reported as the demonstration value
  {
    auto [forward, inverse] =
        check_algebra_invariance(model, default_invariance_generators(model));
    res.report["algebra_invariance"] = {{"forward_residual", forward},
                                        {"inverse_violation", inverse}};
    checks.push_back(
        check_row("forward_invariance", forward, cfg.tol, all_pass));
  }

  res.report["checks"] = checks;
  res.report["pass"] = all_pass;
  res.exit_code = all_pass ? 0 : 1;

  std::ostringstream sum;
  sum << "compare " << sc.name << ": tv " << tv << ", max defect "
      << max_defect << (all_pass ? " [pass]" : " [FAIL]");
  res.summary = sum.str();

  if (cfg.format == "csv") {
    std::string csv = "check,value,threshold,pass\r\n";
    for (const auto& c : checks)
      csv += csv_quote(c.at("name").get<std::string>()) + "," +
             csv_double(c.at("value").get<double>()) + "," +
             csv_double(c.at("threshold").get<double>()) + "," +
             (c.at("pass").get<bool>() ? "1" : "0") + "\r\n";
    res.csv = csv;
  }
  return res;
}

// ===== sample =====

CommandResult run_sample(const RunConfig& cfg) {
  Scenario sc = resolve_scenario(cfg);
  SampleResult sr = sample_trajectories(sc.family, sc.initial_state, sc.steps,
                                        cfg.samples, cfg.seed);
  SequenceDistribution exact =
      prior_distribution(sc.family, sc.initial_state, sc.steps);

  CommandResult res;
  res.report = report_header(cfg, "sample");
  res.report["samples"] = cfg.samples;
  res.report["generator"] = sr.generator;
  res.report["steps"] = sc.steps;

  // merged frequency table with binomial z-scores
  std::map<std::vector<int>, std::pair<double, double>> table;
  for (const SequenceMass& e : exact.entries) table[e.sequence].first = e.mass;
  for (const SequenceMass& e : sr.empirical.entries)
    table[e.sequence].second = e.mass;

  bool all_pass = true;
  double max_abs_z = 0;
  nlohmann::json rows = nlohmann::json::array();
  std::string csv = "sequence,exact,empirical,z\r\n";
  for (const auto& [seq, pq] : table) {
    auto [p, q] = pq;
    double sigma =
        std::sqrt(std::max(p * (1.0 - p), 0.0) / std::max<long>(cfg.samples, 1));
    double z = 0;
    if (sigma > 0)
      z = (q - p) / sigma;
    else if (q != p)
      z = std::numeric_limits<double>::infinity();
    max_abs_z = std::max(max_abs_z, std::abs(z));
    rows.push_back({{"sequence", sequence_json(seq)},
                    {"exact", p},
                    {"empirical", q},
                    {"z", z}});
    csv += sequence_csv(seq) + "," + csv_double(p) + "," + csv_double(q) +
           "," + csv_double(z) + "\r\n";
  }
  res.report["table"] = rows;
  res.report["max_abs_z"] = max_abs_z;

  nlohmann::json checks = nlohmann::json::array();
  checks.push_back(check_row("max_abs_z", max_abs_z, 4.0, all_pass));
  res.report["checks"] = checks;
  res.report["pass"] = all_pass;
  res.exit_code = all_pass ? 0 : 1;

  std::ostringstream sum;
  sum << "sample " << sc.name << ": n " << cfg.samples << ", max |z| "
      << max_abs_z << (all_pass ? " [pass]" : " [FAIL]");
  res.summary = sum.str();

  if (cfg.format == "csv") res.csv = csv;
  return res;
}

CommandResult run_command(const std::string& command, const RunConfig& cfg) {
  if (command == "validate") return run_validate(cfg);
  if (command == "simulate") return run_simulate(cfg);
  if (command == "filter") return run_filter(cfg);
  if (command == "compare") return run_compare(cfg);
  if (command == "sample") return run_sample(cfg);
  throw ConfigError("unknown command: " + command);
}

}  // namespace eventum
