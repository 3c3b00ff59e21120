// linalg.cpp - implementation of the tensor-index and norm utilities.

#include "eventum/linalg.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace eventum {

// ===== FactorSpace =====

FactorSpace::FactorSpace(std::vector<int> d) : dims(std::move(d)) {
  for (int n : dims)
    if (n <= 0) throw std::invalid_argument("factor dimension must be positive");
}

long FactorSpace::total_dim() const {
  long t = 1;
  for (int n : dims) t *= n;
  return t;
}

long FactorSpace::stride(int k) const {
  long s = 1;
  for (int j = k + 1; j < num_factors(); ++j) s *= dims[j];
  return s;
}

std::vector<int> FactorSpace::decompose(long index) const {
  std::vector<int> digits(dims.size());
  for (int k = num_factors() - 1; k >= 0; --k) {
    digits[k] = static_cast<int>(index % dims[k]);
    index /= dims[k];
  }
  return digits;
}

long FactorSpace::compose(const std::vector<int>& digits) const {
  if (static_cast<int>(digits.size()) != num_factors())
    throw std::invalid_argument("digit count does not match factor count");
  long index = 0;
  for (int k = 0; k < num_factors(); ++k) {
    if (digits[k] < 0 || digits[k] >= dims[k])
      throw std::invalid_argument("factor digit out of range");
    index = index * dims[k] + digits[k];
  }
  return index;
}

// ===== basic constructions =====

Operator tensor_product(const Operator& a, const Operator& b) {
  Operator out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

StateVector tensor_product_vec(const StateVector& a, const StateVector& b) {
  StateVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i)
    out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

Operator identity(int n) { return Operator::Identity(n, n); }

Operator pauli_x() {
  Operator x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

Operator pauli_y() {
  Operator y(2, 2);
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  return y;
}

Operator pauli_z() {
  Operator z(2, 2);
  z << 1, 0, 0, -1;
  return z;
}

namespace {

// Enumeration helper shared by the embed routines: for the target
// factors, offsets[a] is the composite-index contribution of the
// target digits encoding a (targets[0] most significant); rest_bases
// lists the composite contribution of every assignment of the
// remaining factors.
struct EmbedIndex {
  long target_dim = 1;
  std::vector<long> offsets;
  std::vector<long> rest_bases;
};

EmbedIndex make_embed_index(const FactorSpace& space,
                            const std::vector<int>& targets) {
  const int k = space.num_factors();
  std::vector<bool> is_target(k, false);
  for (int t : targets) {
    if (t < 0 || t >= k) throw std::invalid_argument("target factor out of range");
    if (is_target[t]) throw std::invalid_argument("duplicate target factor");
    is_target[t] = true;
  }

  EmbedIndex e;
  for (int t : targets) e.target_dim *= space.dims[t];

  e.offsets.assign(e.target_dim, 0);
  for (long a = 0; a < e.target_dim; ++a) {
    long rem = a;
    for (int pos = static_cast<int>(targets.size()) - 1; pos >= 0; --pos) {
      int f = targets[pos];
      e.offsets[a] += (rem % space.dims[f]) * space.stride(f);
      rem /= space.dims[f];
    }
  }

  e.rest_bases.push_back(0);
  for (int f = 0; f < k; ++f) {
    if (is_target[f]) continue;
    std::vector<long> next;
    next.reserve(e.rest_bases.size() * space.dims[f]);
    for (long base : e.rest_bases)
      for (int d = 0; d < space.dims[f]; ++d)
        next.push_back(base + d * space.stride(f));
    e.rest_bases.swap(next);
  }
  return e;
}

}  // namespace

Operator embed_on_factors(const Operator& a, const FactorSpace& space,
                          const std::vector<int>& targets) {
  EmbedIndex e = make_embed_index(space, targets);
  if (a.rows() != e.target_dim || a.cols() != e.target_dim)
    throw std::invalid_argument("operator dimension does not match target factors");
  const long dim = space.total_dim();
  Operator out = Operator::Zero(dim, dim);
  for (long base : e.rest_bases)
    for (long r = 0; r < e.target_dim; ++r)
      for (long c = 0; c < e.target_dim; ++c)
        out(base + e.offsets[r], base + e.offsets[c]) = a(r, c);
  return out;
}

Operator embed_apply_left(const Operator& a, const FactorSpace& space,
                          const std::vector<int>& targets, const Operator& m) {
  EmbedIndex e = make_embed_index(space, targets);
  if (a.rows() != e.target_dim || a.cols() != e.target_dim)
    throw std::invalid_argument("operator dimension does not match target factors");
  if (m.rows() != space.total_dim())
    throw std::invalid_argument("matrix row count does not match space");
  Operator out(m.rows(), m.cols());
  Operator gather(e.target_dim, m.cols());
  for (long base : e.rest_bases) {
    for (long r = 0; r < e.target_dim; ++r)
      gather.row(r) = m.row(base + e.offsets[r]);
    gather = a * gather;
    for (long r = 0; r < e.target_dim; ++r)
      out.row(base + e.offsets[r]) = gather.row(r);
  }
  return out;
}

Operator embed_apply_right(const Operator& m, const Operator& a,
                           const FactorSpace& space,
                           const std::vector<int>& targets) {
  EmbedIndex e = make_embed_index(space, targets);
  if (a.rows() != e.target_dim || a.cols() != e.target_dim)
    throw std::invalid_argument("operator dimension does not match target factors");
  if (m.cols() != space.total_dim())
    throw std::invalid_argument("matrix column count does not match space");
  Operator out(m.rows(), m.cols());
  Operator gather(m.rows(), e.target_dim);
  for (long base : e.rest_bases) {
    for (long c = 0; c < e.target_dim; ++c)
      gather.col(c) = m.col(base + e.offsets[c]);
    gather = gather * a;
    for (long c = 0; c < e.target_dim; ++c)
      out.col(base + e.offsets[c]) = gather.col(c);
  }
  return out;
}

StateVector embed_apply_vec(const Operator& a, const FactorSpace& space,
                            const std::vector<int>& targets,
                            const StateVector& v) {
  EmbedIndex e = make_embed_index(space, targets);
  if (a.rows() != e.target_dim || a.cols() != e.target_dim)
    throw std::invalid_argument("operator dimension does not match target factors");
  if (v.size() != space.total_dim())
    throw std::invalid_argument("vector size does not match space");
  StateVector out(v.size());
  StateVector gather(e.target_dim);
  for (long base : e.rest_bases) {
    for (long r = 0; r < e.target_dim; ++r)
      gather(r) = v(base + e.offsets[r]);
    gather = a * gather;
    for (long r = 0; r < e.target_dim; ++r)
      out(base + e.offsets[r]) = gather(r);
  }
  return out;
}

std::vector<long> factor_permutation_table(const FactorSpace& space,
                                           const std::vector<int>& route) {
  const int k = space.num_factors();
  if (static_cast<int>(route.size()) != k)
    throw std::invalid_argument("route size does not match factor count");
  std::vector<bool> hit(k, false);
  for (int f = 0; f < k; ++f) {
    int r = route[f];
    if (r < 0 || r >= k || space.dims[r] != space.dims[f])
      throw std::invalid_argument("route is not a dimension-preserving permutation");
    if (hit[r]) throw std::invalid_argument("route is not a permutation");
    hit[r] = true;
  }
  const long dim = space.total_dim();
  std::vector<long> table(dim);
  std::vector<int> digits, moved(k);
  for (long i = 0; i < dim; ++i) {
    digits = space.decompose(i);
    for (int f = 0; f < k; ++f) moved[route[f]] = digits[f];
    table[i] = space.compose(moved);
  }
  return table;
}

Operator permutation_operator(const std::vector<long>& table) {
  const long dim = static_cast<long>(table.size());
  Operator p = Operator::Zero(dim, dim);
  for (long i = 0; i < dim; ++i) p(table[i], i) = 1.0;
  return p;
}

StateVector apply_permutation(const std::vector<long>& table,
                              const StateVector& v) {
  StateVector out(v.size());
  for (long i = 0; i < v.size(); ++i) out(table[i]) = v(i);
  return out;
}

Operator permute_conjugate(const std::vector<long>& table, const Operator& a) {
  Operator out(a.rows(), a.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) out(table[i], table[j]) = a(i, j);
  return out;
}

Operator permute_conjugate_inv(const std::vector<long>& table,
                               const Operator& a) {
  Operator out(a.rows(), a.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long j = 0; j < a.cols(); ++j) out(i, j) = a(table[i], table[j]);
  return out;
}

// ===== norms =====

namespace {
constexpr double kPowerTol = 1e-12;
constexpr int kPowerCap = 10000;
}  // namespace

double spectral_norm(const Operator& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  // power iteration on A^dag A; fixed-seed start vector for determinism
  std::mt19937_64 gen(0x9e3779b97f4a7c15ull);
  std::normal_distribution<double> nd(0.0, 1.0);
  StateVector v(a.cols());
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(nd(gen), nd(gen));
  v.normalize();

  double lambda = 0.0;
  for (int it = 0; it < kPowerCap; ++it) {
    StateVector w = a.adjoint() * (a * v);
    double nw = w.norm();
    if (nw == 0.0) return 0.0;
    double next = v.dot(w).real();  // Rayleigh quotient, real for psd
    v = w / nw;
    if (it > 0 && std::abs(next - lambda) <= kPowerTol * std::max(1.0, next)) {
      lambda = next;
      break;
    }
    lambda = next;
  }
  return std::sqrt(std::max(0.0, lambda));
}

double frobenius_norm(const Operator& a) { return a.norm(); }

double commutator_norm(const Operator& a, const Operator& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw std::invalid_argument("commutator needs equal square operators");
  return spectral_norm(a * b - b * a);
}

double check_isometry(const Operator& a) {
  Operator g = a.adjoint() * a;
  g -= Operator::Identity(g.rows(), g.cols());
  return spectral_norm(g);
}

// ===== Hermitian calculus =====

namespace {
void require_hermitian(const Operator& h, double tol) {
  if (h.rows() != h.cols())
    throw std::invalid_argument("operator is not square");
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("operator is not Hermitian");
}
}  // namespace

Operator exp_minus_i(const Operator& hermitian) {
  require_hermitian(hermitian, 1e-10);
  Eigen::SelfAdjointEigenSolver<Operator> es(hermitian);
  StateVector phases(hermitian.rows());
  for (Eigen::Index i = 0; i < phases.size(); ++i)
    phases(i) = std::exp(Complex(0.0, -es.eigenvalues()(i)));
  return es.eigenvectors() * phases.asDiagonal() *
         es.eigenvectors().adjoint();
}

std::vector<EigenCluster> cluster_spectrum(const Operator& hermitian,
                                           double cluster_tol) {
  require_hermitian(hermitian, 1e-10);
  Eigen::SelfAdjointEigenSolver<Operator> es(hermitian);
  const auto& vals = es.eigenvalues();
  const double diameter = vals(vals.size() - 1) - vals(0);
  const double gap = cluster_tol * std::max(diameter, 1e-300);

  std::vector<EigenCluster> clusters;
  Eigen::Index i = 0;
  while (i < vals.size()) {
    Eigen::Index j = i;
    while (j + 1 < vals.size() && vals(j + 1) - vals(j) <= gap) ++j;
    EigenCluster c;
    c.value = vals.segment(i, j - i + 1).mean();
    auto block = es.eigenvectors().middleCols(i, j - i + 1);
    c.projector = block * block.adjoint();
    clusters.push_back(std::move(c));
    i = j + 1;
  }
  return clusters;
}

}  // namespace eventum
