// support.hpp - shared helpers for the test suites: seeded random
// states, Haar-random unitaries, and random complete reduction
// families built from Haar isometries.

#pragma once

#include <random>
#include <vector>

#include "eventum/linalg.hpp"
#include "eventum/reduction.hpp"

namespace eventum::testing {

inline std::mt19937_64 rng(std::uint64_t seed) {
  return std::mt19937_64(seed);
}

inline StateVector random_state(int dim, std::mt19937_64& gen) {
  std::normal_distribution<double> n(0.0, 1.0);
  StateVector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = Complex(n(gen), n(gen));
  return v / v.norm();
}

inline Operator random_matrix(int rows, int cols, std::mt19937_64& gen) {
  std::normal_distribution<double> n(0.0, 1.0);
  Operator a(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) a(i, j) = Complex(n(gen), n(gen));
  return a;
}

inline Operator random_hermitian(int dim, std::mt19937_64& gen) {
  Operator a = random_matrix(dim, dim, gen);
  return 0.5 * (a + a.adjoint());
}

// Haar-distributed unitary: QR of a Ginibre matrix with the phase fix
// R_ii/|R_ii|
inline Operator haar_unitary(int dim, std::mt19937_64& gen) {
  Operator a = random_matrix(dim, dim, gen);
  Eigen::HouseholderQR<Operator> qr(a);
  Operator q = qr.householderQ();
  Operator r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    Complex d = r(i, i);
    q.col(i) *= (d == Complex(0) ? Complex(1) : d / std::abs(d));
  }
  return q;
}

// Haar-random isometry C^d -> C^{md} as the first d columns of a Haar
// unitary; its m stacked d x d blocks form a complete counting-measure
// family because sum V^dag V = F^dag F = I exactly.
inline ReductionFamily random_complete_family(int d, int m,
                                              std::mt19937_64& gen) {
  Operator u = haar_unitary(m * d, gen);
  Operator f = u.leftCols(d);
  std::vector<Operator> vs;
  vs.reserve(m);
  for (int y = 0; y < m; ++y) vs.push_back(f.middleRows(y * d, d));
  return make_family(d, std::move(vs));
}

// weighted variant: same isometry with blocks rescaled by 1/sqrt(mu)
inline ReductionFamily random_weighted_family(int d, int m,
                                              std::mt19937_64& gen) {
  Operator u = haar_unitary(m * d, gen);
  Operator f = u.leftCols(d);
  std::uniform_real_distribution<double> w(0.5, 2.0);
  std::vector<Operator> vs;
  std::vector<double> weights;
  for (int y = 0; y < m; ++y) {
    double mu = w(gen);
    weights.push_back(mu);
    vs.push_back(f.middleRows(y * d, d) / std::sqrt(mu));
  }
  return make_family(d, std::move(vs), std::move(weights));
}

}  // namespace eventum::testing
