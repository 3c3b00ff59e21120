#include "eventum/reduction.hpp"

#include <doctest.h>

#include "support.hpp"

using namespace eventum;
namespace et = eventum::testing;

namespace {

ReductionFamily cat_family() {
  Operator p0 = Operator::Zero(2, 2), p1 = Operator::Zero(2, 2);
  p0(0, 0) = 1;
  p1(1, 1) = 1;
  return make_family(2, {p0, p1});
}

StateVector cat_state() {
  StateVector psi(2);
  psi << 0.6, 0.8;
  return psi;
}

}  // namespace

TEST_SUITE("family construction") {
  TEST_CASE("counting-measure constructor labels 1..m") {
    auto fam = cat_family();
    CHECK(fam.system_dim == 2);
    CHECK(fam.num_outcomes() == 2);
    CHECK(fam.outcomes.labels == std::vector<int>{1, 2});
    CHECK(fam.outcomes.weights == std::vector<double>{1.0, 1.0});
    CHECK(fam.complete_observation());
    CHECK(fam.kraus_for(2)(1, 1) == Complex(1));
    CHECK_THROWS_AS(fam.label_index(3), std::invalid_argument);
  }

  TEST_CASE("constructor rejections") {
    Operator i2 = identity(2);
    CHECK_THROWS_AS(make_family(2, {i2}, {1.0, 2.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_family(2, {i2}, {0.0}), std::invalid_argument);
    CHECK_THROWS_AS(make_family(3, {i2}), std::invalid_argument);
    CHECK_THROWS_AS(make_family_hidden(2, {{i2}, {i2}}, {1, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(make_family_hidden(2, {{i2}}, {0}), std::invalid_argument);
    CHECK_THROWS_AS(make_family_hidden(2, {{}}), std::invalid_argument);
  }

  TEST_CASE("hidden index blocks single-Kraus access") {
    Operator v = identity(2) / std::sqrt(2.0);
    auto fam = make_family_hidden(2, {{v, v}});
    CHECK_FALSE(fam.complete_observation());
    CHECK_THROWS_AS(fam.kraus_for(1), std::invalid_argument);
  }
}

TEST_SUITE("completeness") {
  TEST_CASE("half identities miss by one half") {
    Operator h = identity(2) / 2.0;
    auto fam = make_family(2, {h, h});
    CHECK(validate_completeness(fam) == doctest::Approx(0.5).epsilon(1e-12));
  }

  TEST_CASE("projectors and weighted rescalings are complete") {
    CHECK(validate_completeness(cat_family()) < 1e-14);
    // mu = 2 with V = I/2 on both outcomes: 2*(1/4)*2 = 1
    Operator h = identity(2) / 2.0;
    auto fam = make_family(2, {h, h}, {2.0, 2.0});
    CHECK(validate_completeness(fam) < 1e-14);
  }

  TEST_CASE("random weighted families from the test corpus are complete") {
    auto gen = et::rng(21);
    for (int rep = 0; rep < 10; ++rep) {
      auto fam = et::random_weighted_family(3, 3, gen);
      CHECK(validate_completeness(fam) < 1e-12);
    }
  }
}

TEST_SUITE("projection families") {
  TEST_CASE("PauliZ splits into eigenprojectors, ascending") {
    auto fam = projection_family(pauli_z());
    auto vals = projection_eigenvalues(pauli_z());
    REQUIRE(fam.num_outcomes() == 2);
    CHECK(vals[0] == doctest::Approx(-1.0));
    CHECK(vals[1] == doctest::Approx(1.0));
    Operator down = Operator::Zero(2, 2), up = Operator::Zero(2, 2);
    down(1, 1) = 1;  // Z|1> = -|1>
    up(0, 0) = 1;
    CHECK((fam.kraus_for(1) - down).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((fam.kraus_for(2) - up).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("degenerate observable gives the single identity outcome") {
    auto fam = projection_family(identity(3));
    REQUIRE(fam.num_outcomes() == 1);
    CHECK((fam.kraus_for(1) - identity(3)).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("PauliX eigenprojectors") {
    auto fam = projection_family(pauli_x());
    Operator minus(2, 2), plus(2, 2);
    minus << 0.5, -0.5, -0.5, 0.5;
    plus << 0.5, 0.5, 0.5, 0.5;
    CHECK((fam.kraus_for(1) - minus).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((fam.kraus_for(2) - plus).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_SUITE("pointer families") {
  TEST_CASE("delta pointer on Z_2 reproduces the cat projectors") {
    Operator x = Operator::Zero(2, 2);
    x(1, 1) = 1;
    StateVector phi(2);
    phi << 1, 0;
    auto fam = pointer_family(x, phi, Operator::Zero(2, 2));
    auto cat = cat_family();
    REQUIRE(fam.num_outcomes() == 2);
    for (int y : {1, 2})
      CHECK((fam.kraus_for(y) - cat.kraus_for(y)).cwiseAbs().maxCoeff() <
            1e-12);
  }

  TEST_CASE("flat pointer never resolves the system") {
    Operator x = Operator::Zero(2, 2);
    x(1, 1) = 1;
    StateVector phi(2);
    phi << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0);
    auto fam = pointer_family(x, phi, Operator::Zero(2, 2));
    for (int y : {1, 2})
      CHECK((fam.kraus_for(y) - identity(2) / std::sqrt(2.0))
                .cwiseAbs()
                .maxCoeff() < 1e-12);
  }

  TEST_CASE("delta pointer on Z_3 gives the eigenprojectors") {
    Operator x = Operator::Zero(3, 3);
    x(1, 1) = 1;
    x(2, 2) = 2;
    StateVector phi = StateVector::Zero(3);
    phi(0) = 1;
    auto fam = pointer_family(x, phi, Operator::Zero(3, 3));
    REQUIRE(fam.num_outcomes() == 3);
    for (int g = 0; g < 3; ++g) {
      Operator expect = Operator::Zero(3, 3);
      expect(g, g) = 1;
      CHECK((fam.kraus_for(g + 1) - expect).cwiseAbs().maxCoeff() < 1e-12);
    }
    CHECK(validate_completeness(fam) < 1e-12);
  }

  TEST_CASE("free action multiplies on the left") {
    Operator x = Operator::Zero(2, 2);
    x(1, 1) = 1;
    StateVector phi(2);
    phi << 1, 0;
    auto fam = pointer_family(x, phi, pauli_z());
    auto bare = pointer_family(x, phi, Operator::Zero(2, 2));
    Operator expz = exp_minus_i(pauli_z());
    for (int y : {1, 2})
      CHECK((fam.kraus_for(y) - expz * bare.kraus_for(y))
                .cwiseAbs()
                .maxCoeff() < 1e-12);
  }

  TEST_CASE("rejects non-Z_n spectra and unnormalized pointers") {
    StateVector phi(2);
    phi << 1, 0;
    CHECK_THROWS_AS(pointer_family(pauli_z(), phi, Operator::Zero(2, 2)),
                    std::invalid_argument);  // spectrum {-1, 1}
    Operator x = Operator::Zero(2, 2);
    x(1, 1) = 1;
    StateVector bad(2);
    bad << 1, 1;
    CHECK_THROWS_AS(pointer_family(x, bad, Operator::Zero(2, 2)),
                    std::invalid_argument);
  }
}

TEST_SUITE("reduction postulate") {
  TEST_CASE("cat outcome 1 keeps mass 9/25 and collapses") {
    auto [post, prob] = apply_reduction(cat_family(), cat_state(), 1);
    CHECK(prob == doctest::Approx(9.0 / 25.0).epsilon(1e-12));
    CHECK(std::abs(post(0) - Complex(1)) < 1e-12);
    CHECK(std::abs(post(1)) < 1e-12);
  }

  TEST_CASE("single-outcome identity family is certain") {
    auto fam = make_family(2, {identity(2)});
    auto [post, prob] = apply_reduction(fam, cat_state(), 1);
    CHECK(prob == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((post - cat_state()).norm() < 1e-12);
  }

  TEST_CASE("zero-probability branch throws") {
    StateVector psi(2);
    psi << 1, 0;
    CHECK_THROWS_AS(apply_reduction(cat_family(), psi, 2),
                    ZeroProbabilityBranch);
  }
}

TEST_SUITE("decoherence") {
  TEST_CASE("cat state decoheres to the diagonal mixture") {
    StateVector psi = cat_state();
    Operator rho = psi * psi.adjoint();
    Operator out = decohere(rho, cat_family());
    CHECK(out(0, 0).real() == doctest::Approx(9.0 / 25.0).epsilon(1e-12));
    CHECK(out(1, 1).real() == doctest::Approx(16.0 / 25.0).epsilon(1e-12));
    CHECK(std::abs(out(0, 1)) < 1e-14);
    CHECK(std::abs(out(1, 0)) < 1e-14);
  }

  TEST_CASE("projective decoherence is idempotent and trace preserving") {
    auto gen = et::rng(22);
    StateVector psi = et::random_state(2, gen);
    Operator rho = psi * psi.adjoint();
    Operator once = decohere(rho, cat_family());
    CHECK(std::abs(once.trace().real() - 1.0) < 1e-12);
    Operator twice = decohere(once, cat_family());
    CHECK((twice - once).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("rejects non-density input") {
    CHECK_THROWS_AS(decohere(pauli_x(), cat_family()), std::invalid_argument);
    CHECK_THROWS_AS(decohere(identity(2), cat_family()),
                    std::invalid_argument);  // trace 2
  }
}

TEST_SUITE("operations and instruments") {
  TEST_CASE("weighted operations resolve the identity") {
    auto gen = et::rng(23);
    auto fam = et::random_weighted_family(3, 4, gen);
    Operator sum = Operator::Zero(3, 3);
    for (int y : fam.outcomes.labels)
      sum += fam.outcomes.weights[fam.label_index(y)] *
             operation_map(fam, y, identity(3));
    CHECK(spectral_norm(sum - identity(3)) < 1e-12);
  }

  TEST_CASE("projective operation is compression") {
    // pi(y, B) = F B F; the cat projector at |0> kills PauliX
    auto fam = cat_family();
    Operator out = operation_map(fam, 1, pauli_x());
    CHECK(out.cwiseAbs().maxCoeff() < 1e-14);
    Operator z = operation_map(fam, 1, pauli_z());
    CHECK(std::abs(z(0, 0) - Complex(1)) < 1e-14);
    CHECK(std::abs(z(1, 1)) < 1e-14);
  }

  TEST_CASE("operation and instrument maps are trace dual") {
    auto gen = et::rng(24);
    auto fam = et::random_weighted_family(3, 3, gen);
    StateVector psi = et::random_state(3, gen);
    Operator sigma = psi * psi.adjoint();
    Operator b = et::random_matrix(3, 3, gen);
    for (int y : fam.outcomes.labels) {
      Complex lhs = (instrument_map(fam, y, sigma) * b).trace();
      Complex rhs = (sigma * operation_map(fam, y, b)).trace();
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }

  TEST_CASE("hidden indices are summed out") {
    // V(z=1,y) = V(z=2,y) = F/sqrt(2) with F a projector: the
    // instrument acts as sigma -> F sigma F
    Operator f = Operator::Zero(2, 2);
    f(0, 0) = 1;
    Operator v = f / std::sqrt(2.0);
    auto fam = make_family_hidden(2, {{v, v}});
    auto gen = et::rng(25);
    StateVector psi = et::random_state(2, gen);
    Operator sigma = psi * psi.adjoint();
    CHECK((instrument_map(fam, 1, sigma) - f * sigma * f)
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }

  TEST_CASE("density and dimension guards") {
    auto fam = cat_family();
    CHECK_THROWS_AS(operation_map(fam, 1, identity(3)), std::invalid_argument);
    CHECK_THROWS_AS(instrument_map(fam, 1, pauli_x()), std::invalid_argument);
  }
}
