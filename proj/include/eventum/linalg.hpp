// linalg.hpp - dense complex linear algebra and tensor-index utilities.
//
// Conventions used throughout:
//   * tensor factors are ordered factor-0-major: in a composite index
//     I = i_0*s_0 + i_1*s_1 + ... the leftmost factor is the most
//     significant digit (stride s_k = prod of dims of factors k+1..).
//   * "operator norm" means the spectral norm, computed by power
//     iteration on A^dag A (tolerance 1e-12, iteration cap 10000).

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace eventum {

using Complex = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

// ===== factor spaces =====

// An ordered list of tensor-factor dimensions describing a composite
// Hilbert space.  Factor 0 is the most significant index digit.
struct FactorSpace {
  std::vector<int> dims;

  FactorSpace() = default;
  explicit FactorSpace(std::vector<int> d);

  int num_factors() const { return static_cast<int>(dims.size()); }
  long total_dim() const;
  // stride of factor k: product of dims of all factors after k
  long stride(int k) const;
  // decompose a composite index into per-factor digits
  std::vector<int> decompose(long index) const;
  long compose(const std::vector<int>& digits) const;
};

// ===== basic constructions =====

// Kronecker product, A as the more significant factor.
Operator tensor_product(const Operator& a, const Operator& b);
StateVector tensor_product_vec(const StateVector& a, const StateVector& b);

Operator identity(int n);

Operator pauli_x();
Operator pauli_y();
Operator pauli_z();

// Embed A (acting on the listed target factors, in that order, with
// targets[0] as A's most significant index) into the full space,
// identity on the remaining factors.
Operator embed_on_factors(const Operator& a, const FactorSpace& space,
                          const std::vector<int>& targets);

// embed_on_factors(a) * m and m * embed_on_factors(a) without forming
// the embedded matrix product; cost O(dim^2 * dim(a)).
Operator embed_apply_left(const Operator& a, const FactorSpace& space,
                          const std::vector<int>& targets, const Operator& m);
Operator embed_apply_right(const Operator& m, const Operator& a,
                           const FactorSpace& space,
                           const std::vector<int>& targets);
StateVector embed_apply_vec(const Operator& a, const FactorSpace& space,
                            const std::vector<int>& targets,
                            const StateVector& v);

// Permutation of tensor factors.  route maps an OLD factor slot to the
// NEW slot its content lands in; returns the induced permutation of
// composite basis indices: new_index[i] = destination of basis state i.
std::vector<long> factor_permutation_table(const FactorSpace& space,
                                           const std::vector<int>& route);
Operator permutation_operator(const std::vector<long>& table);
StateVector apply_permutation(const std::vector<long>& table,
                              const StateVector& v);
// P A P^dag and P^dag A P for the permutation with the given table
Operator permute_conjugate(const std::vector<long>& table, const Operator& a);
Operator permute_conjugate_inv(const std::vector<long>& table,
                               const Operator& a);

// ===== norms and checks =====

// Spectral norm by power iteration on A^dag A.  Deterministic: the
// start vector comes from a fixed-seed generator.
double spectral_norm(const Operator& a);
double frobenius_norm(const Operator& a);

// ||AB - BA|| in the spectral norm
double commutator_norm(const Operator& a, const Operator& b);

// ||A^dag A - I||; 0 for isometries
double check_isometry(const Operator& a);

// ===== Hermitian calculus =====

// exp(-iH) for Hermitian H via eigendecomposition
Operator exp_minus_i(const Operator& hermitian);

// Eigenvalues of a Hermitian operator clustered to within
// tol * spectral diameter, with the orthogonal projector onto each
// cluster's eigenspace.  Eigenvalues ascending.
struct EigenCluster {
  double value;
  Operator projector;
};
std::vector<EigenCluster> cluster_spectrum(const Operator& hermitian,
                                           double cluster_tol = 1e-8);

}  // namespace eventum
