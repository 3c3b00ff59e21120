#include "eventum/linalg.hpp"

#include <doctest.h>

#include "support.hpp"

using namespace eventum;
namespace et = eventum::testing;

TEST_SUITE("factor spaces") {
  TEST_CASE("strides and index round trip") {
    FactorSpace space({2, 3, 2});
    CHECK(space.total_dim() == 12);
    CHECK(space.stride(0) == 6);
    CHECK(space.stride(1) == 2);
    CHECK(space.stride(2) == 1);
    for (long i = 0; i < 12; ++i) {
      auto digits = space.decompose(i);
      CHECK(space.compose(digits) == i);
    }
    CHECK(space.decompose(7) == std::vector<int>{1, 0, 1});
  }

  TEST_CASE("tensor product is factor-0-major") {
    Operator a(2, 2), b(2, 2);
    a << 1, 2, 3, 4;
    b << 0, 1, 1, 0;
    Operator t = tensor_product(a, b);
    // block (i,j) of the product is a(i,j) * b
    CHECK(t(0, 1) == Complex(1));
    CHECK(t(0, 3) == Complex(2));
    CHECK(t(2, 1) == Complex(3));
    CHECK(std::abs(t(1, 0) - Complex(1)) < 1e-15);
  }
}

TEST_SUITE("embeddings") {
  TEST_CASE("embed matches tensor products on adjacent factors") {
    FactorSpace space({2, 3, 2});
    auto gen = et::rng(11);
    Operator a = et::random_matrix(2, 2, gen);
    Operator expect =
        tensor_product(tensor_product(a, identity(3)), identity(2));
    CHECK((embed_on_factors(a, space, {0}) - expect).cwiseAbs().maxCoeff() <
          1e-14);

    Operator b = et::random_matrix(6, 6, gen);  // factors {1, 2} together
    Operator expect2 = tensor_product(identity(2), b);
    CHECK((embed_on_factors(b, space, {1, 2}) - expect2)
              .cwiseAbs()
              .maxCoeff() < 1e-14);
  }

  TEST_CASE("embed on out-of-order targets permutes A's digits") {
    // A on targets {2, 0}: A's most significant digit lives on factor 2
    FactorSpace space({2, 2});
    auto gen = et::rng(12);
    Operator a = et::random_matrix(4, 4, gen);
    FactorSpace little({2, 2});
    Operator direct = embed_on_factors(a, space, {1, 0});
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        auto di = space.decompose(i), dj = space.decompose(j);
        // digit order seen by A: (factor1, factor0)
        long ai = little.compose({di[1], di[0]});
        long aj = little.compose({dj[1], dj[0]});
        CHECK(std::abs(direct(i, j) - a(ai, aj)) < 1e-14);
      }
  }

  TEST_CASE("embed_apply_{left,right,vec} agree with dense products") {
    FactorSpace space({2, 3, 2});
    auto gen = et::rng(13);
    Operator a = et::random_matrix(4, 4, gen);  // factors {0, 2}
    Operator embedded = embed_on_factors(a, space, {0, 2});
    Operator m = et::random_matrix(12, 12, gen);
    StateVector v = et::random_state(12, gen);

    CHECK((embed_apply_left(a, space, {0, 2}, m) - embedded * m)
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    CHECK((embed_apply_right(m, a, space, {0, 2}) - m * embedded)
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    CHECK((embed_apply_vec(a, space, {0, 2}, v) - embedded * v).norm() <
          1e-12);
  }
}

TEST_SUITE("permutations") {
  TEST_CASE("factor permutation table routes digits") {
    // route: old factor f lands in new slot route[f]
    FactorSpace space({2, 3, 2});
    std::vector<int> route = {2, 1, 0};  // swap outer factors
    auto table = factor_permutation_table(space, route);
    for (long i = 0; i < space.total_dim(); ++i) {
      auto d = space.decompose(i);
      // after the swap the digit of old factor 0 sits in slot 2
      long expect = space.compose({d[2], d[1], d[0]});
      CHECK(table[i] == expect);
    }
  }

  TEST_CASE("permutation operator and conjugations") {
    FactorSpace space({2, 2, 3});
    std::vector<int> route = {1, 0, 2};
    auto table = factor_permutation_table(space, route);
    Operator p = permutation_operator(table);
    CHECK(spectral_norm(p * p.adjoint() - identity(12)) < 1e-14);

    auto gen = et::rng(14);
    Operator a = et::random_matrix(12, 12, gen);
    StateVector v = et::random_state(12, gen);
    CHECK((apply_permutation(table, v) - p * v).norm() < 1e-13);
    CHECK((permute_conjugate(table, a) - p * a * p.adjoint())
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    CHECK((permute_conjugate_inv(table, a) - p.adjoint() * a * p)
              .cwiseAbs()
              .maxCoeff() < 1e-12);
  }

  TEST_CASE("route with mismatched dims throws") {
    FactorSpace space({2, 3});
    CHECK_THROWS_AS(factor_permutation_table(space, {1, 0}),
                    std::invalid_argument);
  }
}

TEST_SUITE("norms") {
  TEST_CASE("spectral norm oracles") {
    Operator d = Operator::Zero(2, 2);
    d(0, 0) = 3;
    d(1, 1) = -4;
    CHECK(spectral_norm(d) == doctest::Approx(4.0).epsilon(1e-12));
    CHECK(spectral_norm(Operator::Zero(3, 3)) == 0.0);
    // ||[X, Z]|| = ||2iXZ|| = 2
    CHECK(commutator_norm(pauli_x(), pauli_z()) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(commutator_norm(pauli_x(), identity(2)) < 1e-14);
  }

  TEST_CASE("spectral norm matches Frobenius on rank one") {
    auto gen = et::rng(15);
    StateVector u = et::random_state(5, gen), w = et::random_state(5, gen);
    Operator a = u * w.adjoint();
    CHECK(spectral_norm(a) == doctest::Approx(frobenius_norm(a)).epsilon(1e-10));
  }

  TEST_CASE("spectral norm is unitarily invariant") {
    auto gen = et::rng(16);
    Operator a = et::random_matrix(6, 6, gen);
    Operator u = et::haar_unitary(6, gen);
    CHECK(spectral_norm(u * a * u.adjoint()) ==
          doctest::Approx(spectral_norm(a)).epsilon(1e-10));
  }

  TEST_CASE("isometry defect oracle") {
    // A = diag(1, 1/2): ||A^dag A - I|| = |1/4 - 1| = 3/4
    Operator a = Operator::Zero(2, 2);
    a(0, 0) = 1;
    a(1, 1) = 0.5;
    CHECK(check_isometry(a) == doctest::Approx(0.75).epsilon(1e-12));
    auto gen = et::rng(17);
    CHECK(check_isometry(et::haar_unitary(4, gen)) < 1e-13);
  }
}

TEST_SUITE("hermitian calculus") {
  TEST_CASE("exp_minus_i oracle on PauliX") {
    // e^{-i theta X} = cos(theta) I - i sin(theta) X
    double theta = 0.7;
    Operator e = exp_minus_i(theta * pauli_x());
    Operator expect = std::cos(theta) * identity(2) -
                      Complex(0, 1) * std::sin(theta) * pauli_x();
    CHECK((e - expect).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(spectral_norm(e * e.adjoint() - identity(2)) < 1e-14);
  }

  TEST_CASE("exp_minus_i rejects non-Hermitian input") {
    Operator a(2, 2);
    a << 0, 1, 0, 0;
    CHECK_THROWS_AS(exp_minus_i(a), std::invalid_argument);
  }

  TEST_CASE("cluster_spectrum splits and reconstructs") {
    Operator z = pauli_z();
    auto clusters = cluster_spectrum(z);
    REQUIRE(clusters.size() == 2);
    CHECK(clusters[0].value == doctest::Approx(-1.0));
    CHECK(clusters[1].value == doctest::Approx(1.0));
    // reconstruction: sum value * projector = Z
    Operator rec = clusters[0].value * clusters[0].projector +
                   clusters[1].value * clusters[1].projector;
    CHECK((rec - z).cwiseAbs().maxCoeff() < 1e-12);

    // a degenerate spectrum collapses to one cluster
    auto one = cluster_spectrum(identity(3));
    REQUIRE(one.size() == 1);
    CHECK((one[0].projector - identity(3)).cwiseAbs().maxCoeff() < 1e-12);
  }

  TEST_CASE("cluster projectors are orthogonal idempotents") {
    auto gen = et::rng(18);
    Operator h = et::random_hermitian(5, gen);
    auto clusters = cluster_spectrum(h);
    Operator sum = Operator::Zero(5, 5);
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      const Operator& p = clusters[i].projector;
      CHECK(spectral_norm(p * p - p) < 1e-10);
      CHECK(spectral_norm(p - p.adjoint()) < 1e-10);
      sum += p;
      for (std::size_t j = 0; j < i; ++j)
        CHECK(spectral_norm(p * clusters[j].projector) < 1e-10);
    }
    CHECK(spectral_norm(sum - identity(5)) < 1e-10);
  }
}
