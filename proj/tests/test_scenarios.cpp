#include "eventum/scenarios.hpp"

#include <doctest.h>

#include "eventum/config.hpp"
#include "eventum/dilation.hpp"

using namespace eventum;

TEST_SUITE("scenario defaults") {
  TEST_CASE("cat fixture") {
    auto sc = build_scenario("cat");
    CHECK(sc.name == "cat");
    CHECK(sc.system_dim == 2);
    CHECK(sc.horizon == 3);
    CHECK(sc.steps == 3);
    CHECK(std::abs(sc.initial_state(0) - Complex(0.6)) < 1e-15);
    CHECK(std::abs(sc.initial_state(1) - Complex(0.8)) < 1e-15);
    CHECK(sc.family.num_outcomes() == 2);
    CHECK(std::abs(sc.family.kraus_for(1)(0, 0) - Complex(1)) < 1e-15);
    CHECK(validate_completeness(sc.family) < 1e-12);
    CHECK(sc.hamiltonian.cwiseAbs().maxCoeff() == 0.0);
  }

  TEST_CASE("weak qubit angles") {
    auto sc = build_scenario("weak-qubit");
    CHECK(sc.family.kraus_for(1)(0, 0).real() ==
          doctest::Approx(std::cos(M_PI / 6)).epsilon(1e-15));
    CHECK(sc.family.kraus_for(2)(0, 0).real() ==
          doctest::Approx(std::sin(M_PI / 6)).epsilon(1e-15));
    CHECK(validate_completeness(sc.family) < 1e-12);

    auto tuned = build_scenario("weak-qubit", {{"theta", M_PI / 4}});
    CHECK(tuned.family.kraus_for(1)(0, 0).real() ==
          doctest::Approx(std::cos(M_PI / 4)).epsilon(1e-15));
    CHECK(validate_completeness(tuned.family) < 1e-12);
  }

  TEST_CASE("pointer on Z_2") {
    auto sc = build_scenario("pointer-Zn");
    REQUIRE(sc.system_dim == 2);
    Operator v1(2, 2), v2(2, 2);
    v1 << std::sqrt(0.8), 0, 0, std::sqrt(0.2);
    v2 << std::sqrt(0.2), 0, 0, std::sqrt(0.8);
    CHECK((sc.family.kraus_for(1) - v1).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((sc.family.kraus_for(2) - v2).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(validate_completeness(sc.family) < 1e-12);
  }

  TEST_CASE("pointer sizes follow n") {
    auto one = build_scenario("pointer-Zn", {{"n", 1}});
    CHECK(one.system_dim == 1);
    CHECK(one.family.num_outcomes() == 1);
    auto three = build_scenario("pointer-Zn", {{"n", 3}});
    CHECK(three.system_dim == 3);
    CHECK(three.family.num_outcomes() == 3);
    CHECK(validate_completeness(three.family) < 1e-12);
  }

  TEST_CASE("sequential observable is a twisted projection family") {
    auto sc = build_scenario("sequential-observable");
    REQUIRE(sc.family.num_outcomes() == 2);
    Operator expe = exp_minus_i((M_PI / 4.0) * pauli_x());
    Operator down = Operator::Zero(2, 2), up = Operator::Zero(2, 2);
    down(1, 1) = 1;  // eigenvalue -1 of PauliZ, label 1
    up(0, 0) = 1;
    CHECK((sc.family.kraus_for(1) - down * expe).cwiseAbs().maxCoeff() <
          1e-12);
    CHECK((sc.family.kraus_for(2) - up * expe).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(validate_completeness(sc.family) < 1e-12);
    // the twist makes successive reductions noncommuting
    Operator v1 = sc.family.kraus_for(1), v2 = sc.family.kraus_for(2);
    CHECK(spectral_norm(v1 * v2 - v2 * v1) > 0.1);
  }
}

TEST_SUITE("scenario parameters") {
  TEST_CASE("steps and horizon overrides") {
    auto sc = build_scenario("cat", {{"steps", 1}, {"horizon", 2}});
    CHECK(sc.steps == 1);
    CHECK(sc.horizon == 2);
    CHECK_THROWS_AS(build_scenario("cat", {{"steps", 4}}), ConfigError);
    CHECK_THROWS_AS(build_scenario("cat", {{"horizon", 0}}), ConfigError);
  }

  TEST_CASE("initial state override must be normalized") {
    nlohmann::json good = {{"initial_state", {0.0, 1.0}}};
    auto sc = build_scenario("cat", good);
    CHECK(std::abs(sc.initial_state(1) - Complex(1)) < 1e-15);
    nlohmann::json bad = {{"initial_state", {1.0, 1.0}}};
    CHECK_THROWS_AS(build_scenario("cat", bad), ConfigError);
  }

  TEST_CASE("unknown names and malformed params are refused") {
    CHECK_THROWS_AS(build_scenario("schroedinger"), ConfigError);
    CHECK_THROWS_AS(build_scenario("cat", nlohmann::json::array()),
                    ConfigError);
    CHECK_THROWS_AS(build_scenario("pointer-Zn", {{"n", 0}}), ConfigError);
  }

  TEST_CASE("scenario catalogue") {
    const auto& names = scenario_names();
    REQUIRE(names.size() == 4);
    for (const auto& name : names) {
      auto sc = build_scenario(name);
      CHECK(validate_completeness(sc.family) < 1e-12);
      CHECK(std::abs(sc.initial_state.norm() - 1.0) < 1e-12);
      CHECK(sc.horizon == 3);
      // every default family admits its canonical dilation
      auto dil = canonical_dilation(sc.family, sc.hamiltonian);
      CHECK(verify_dilation(dil, sc.family).max_residual() < 1e-10);
    }
  }
}
