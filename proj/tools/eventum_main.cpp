// eventum_main.cpp - command-line entry point.
//
// Exit codes: 0 all checks pass, 1 tolerance failure, 2 configuration
// or usage error.  The report document goes to stdout (or --out); the
// one-line summary goes to stderr so stdout stays byte-deterministic.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "eventum/run.hpp"
#include "eventum/version.hpp"

namespace {

struct Flags {
  std::string config_path;
  std::string scenario;
  std::string out;
  std::string format;
  int steps = -1;
  int horizon = -1;
  long samples = 10000;
  std::uint64_t seed = 42;
  double tol = 1e-9;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config_path, "JSON config file");
  sub->add_option("--scenario", f.scenario,
                  "named scenario: cat | weak-qubit | pointer-Zn | "
                  "sequential-observable");
  sub->add_option("--steps", f.steps, "measurement steps t");
  sub->add_option("--horizon", f.horizon, "string truncation horizon T");
  sub->add_option("--samples", f.samples, "Monte-Carlo sample count");
  sub->add_option("--seed", f.seed, "sampling seed (64-bit)");
  sub->add_option("--tol", f.tol, "pass/fail tolerance");
  sub->add_option("--out", f.out, "write the report to this path");
  sub->add_option("--format", f.format, "json | csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum measurement chains: dilation, string dynamics, "
               "filtering"};
  app.set_version_flag("--version", EVENTUM_VERSION);
  app.require_subcommand(1);

  Flags f;
  add_common(app.add_subcommand("validate",
                                "check family completeness and dilation"),
             f);
  add_common(app.add_subcommand("simulate",
                                "joint outcome distribution of the string"),
             f);
  add_common(
      app.add_subcommand("filter", "prior distribution and posteriors"), f);
  add_common(app.add_subcommand("compare",
                                "string picture vs filtering picture"),
             f);
  add_common(app.add_subcommand("sample", "Monte-Carlo trajectories"), f);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    eventum::RunConfig cfg;
    if (sub->count("--config"))
      cfg = eventum::config_from_file(f.config_path);
    if (sub->count("--scenario")) cfg.scenario = f.scenario;
    if (sub->count("--steps")) cfg.steps = f.steps;
    if (sub->count("--horizon")) cfg.horizon = f.horizon;
    if (sub->count("--samples")) cfg.samples = f.samples;
    if (sub->count("--seed")) cfg.seed = f.seed;
    if (sub->count("--tol")) cfg.tol = f.tol;
    if (sub->count("--out")) cfg.out = f.out;
    if (sub->count("--format")) cfg.format = f.format;
    if (cfg.tol <= 0) throw eventum::ConfigError("tol must be positive");

    if (const char* cap = std::getenv("EVENTUM_DIM_CAP")) {
      char* end = nullptr;
      long v = std::strtol(cap, &end, 10);
      if (end == cap || *end != '\0' || v < 1)
        throw eventum::ConfigError("EVENTUM_DIM_CAP must be a positive integer");
      cfg.dim_cap = v;
    }

    eventum::CommandResult res =
        eventum::run_command(sub->get_name(), cfg);
    const std::string doc =
        (cfg.format == "csv") ? res.csv : res.report.dump(2) + "\n";
    if (cfg.out.empty()) {
      std::cout << doc;
    } else {
      std::ofstream out(cfg.out, std::ios::binary);
      if (!out) throw eventum::ConfigError("cannot write: " + cfg.out);
      out << doc;
    }
    std::cerr << res.summary << "\n";
    return res.exit_code;
  } catch (const eventum::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::length_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
}
