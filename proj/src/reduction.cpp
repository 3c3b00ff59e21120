// reduction.cpp - reduction families, projection postulate, operations
// and instruments.

#include "eventum/reduction.hpp"

#include <cmath>
#include <string>

namespace eventum {

namespace {
constexpr double kZeroProb = 1e-14;
}

bool ReductionFamily::complete_observation() const {
  for (const auto& vs : kraus)
    if (vs.size() != 1) return false;
  return true;
}

int ReductionFamily::label_index(int y) const {
  for (int i = 0; i < num_outcomes(); ++i)
    if (outcomes.labels[i] == y) return i;
  throw std::invalid_argument("unknown outcome label " + std::to_string(y));
}

const Operator& ReductionFamily::kraus_for(int y) const {
  const auto& vs = kraus[label_index(y)];
  if (vs.size() != 1)
    throw std::invalid_argument("outcome has a hidden index; observation is incomplete");
  return vs[0];
}

ReductionFamily make_family(int system_dim, std::vector<Operator> vs,
                            std::vector<double> weights) {
  ReductionFamily fam;
  fam.system_dim = system_dim;
  if (weights.empty()) weights.assign(vs.size(), 1.0);
  if (weights.size() != vs.size())
    throw std::invalid_argument("weight count does not match operator count");
  for (double w : weights)
    if (!(w > 0)) throw std::invalid_argument("weights must be strictly positive");
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (vs[i].rows() != system_dim || vs[i].cols() != system_dim)
      throw std::invalid_argument("family operator dimension mismatch");
    fam.outcomes.labels.push_back(static_cast<int>(i) + 1);
    fam.outcomes.weights.push_back(weights[i]);
    fam.kraus.push_back({std::move(vs[i])});
  }
  return fam;
}

ReductionFamily make_family_hidden(int system_dim,
                                   std::vector<std::vector<Operator>> kraus,
                                   std::vector<int> labels,
                                   std::vector<double> weights) {
  const std::size_t m = kraus.size();
  if (labels.empty())
    for (std::size_t i = 0; i < m; ++i)
      labels.push_back(static_cast<int>(i) + 1);
  if (weights.empty()) weights.assign(m, 1.0);
  if (labels.size() != m || weights.size() != m)
    throw std::invalid_argument("label/weight count does not match kraus count");

  ReductionFamily fam;
  fam.system_dim = system_dim;
  for (std::size_t i = 0; i < m; ++i) {
    if (labels[i] < 1)
      throw std::invalid_argument("labels must be >= 1 (0 is the vacuum)");
    for (std::size_t j = 0; j < i; ++j)
      if (labels[j] == labels[i])
        throw std::invalid_argument("duplicate outcome label");
    if (!(weights[i] > 0))
      throw std::invalid_argument("weights must be strictly positive");
    if (kraus[i].empty())
      throw std::invalid_argument("each outcome needs at least one operator");
    for (const Operator& v : kraus[i])
      if (v.rows() != system_dim || v.cols() != system_dim)
        throw std::invalid_argument("family operator dimension mismatch");
  }
  fam.outcomes.labels = std::move(labels);
  fam.outcomes.weights = std::move(weights);
  fam.kraus = std::move(kraus);
  return fam;
}

double validate_completeness(const ReductionFamily& fam) {
  Operator sum = Operator::Zero(fam.system_dim, fam.system_dim);
  for (int i = 0; i < fam.num_outcomes(); ++i)
    for (const Operator& v : fam.kraus[i]) {
      if (v.rows() != fam.system_dim || v.cols() != fam.system_dim)
        throw std::invalid_argument("family operator dimension mismatch");
      sum += fam.outcomes.weights[i] * (v.adjoint() * v);
    }
  sum -= Operator::Identity(fam.system_dim, fam.system_dim);
  return spectral_norm(sum);
}

void check_density(const Operator& rho) {
  if (rho.rows() != rho.cols())
    throw std::invalid_argument("density operator must be square");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw std::invalid_argument("density operator is not Hermitian");
  if (std::abs(rho.trace().real() - 1.0) > 1e-12 ||
      std::abs(rho.trace().imag()) > 1e-12)
    throw std::invalid_argument("density operator trace is not 1");
  Eigen::SelfAdjointEigenSolver<Operator> es(rho);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw std::invalid_argument("density operator has a negative eigenvalue");
}

ReductionFamily projection_family(const Operator& y_obs, double cluster_tol) {
  auto clusters = cluster_spectrum(y_obs, cluster_tol);
  std::vector<Operator> projectors;
  projectors.reserve(clusters.size());
  for (auto& c : clusters) projectors.push_back(std::move(c.projector));
  return make_family(static_cast<int>(y_obs.rows()), std::move(projectors));
}

std::vector<double> projection_eigenvalues(const Operator& y_obs,
                                           double cluster_tol) {
  auto clusters = cluster_spectrum(y_obs, cluster_tol);
  std::vector<double> vals;
  vals.reserve(clusters.size());
  for (const auto& c : clusters) vals.push_back(c.value);
  return vals;
}

ReductionFamily pointer_family(const Operator& x_obs, const StateVector& phi,
                               const Operator& e_action) {
  const int n = static_cast<int>(phi.size());
  if (std::abs(phi.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("pointer state phi is not normalized");

  // X must be Hermitian with spectrum (after rounding) in {0..n-1}
  auto clusters = cluster_spectrum(x_obs, 1e-8);
  const int d = static_cast<int>(x_obs.rows());
  std::vector<int> values;
  for (const auto& c : clusters) {
    double r = std::round(c.value);
    if (std::abs(c.value - r) > 1e-9 || r < 0 || r >= n)
      throw std::invalid_argument("X spectrum is not integer in Z_n");
    values.push_back(static_cast<int>(r));
  }

  Operator expe = exp_minus_i(e_action);
  // V at group value g: multiplication by phi((g - x) mod n) in X's
  // eigenbasis, then the free action
  std::vector<Operator> vs;
  for (int g = 0; g < n; ++g) {
    Operator v = Operator::Zero(d, d);
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      int shift = ((g - values[c]) % n + n) % n;
      v += phi(shift) * clusters[c].projector;
    }
    vs.push_back(expe * v);
  }
  // group value g is carried as label g+1 (label 0 stays the vacuum)
  return make_family(d, std::move(vs));
}

std::pair<StateVector, double> apply_reduction(const ReductionFamily& fam,
                                               const StateVector& psi, int y) {
  const Operator& v = fam.kraus_for(y);
  StateVector vpsi = v * psi;
  double prob = fam.outcomes.weights[fam.label_index(y)] * vpsi.squaredNorm();
  if (prob <= kZeroProb)
    throw ZeroProbabilityBranch("zero-probability branch for outcome " +
                                std::to_string(y));
  return {vpsi / vpsi.norm(), prob};
}

Operator decohere(const Operator& rho, const ReductionFamily& fam) {
  check_density(rho);
  Operator out = Operator::Zero(rho.rows(), rho.cols());
  for (int i = 0; i < fam.num_outcomes(); ++i)
    for (const Operator& v : fam.kraus[i])
      out += fam.outcomes.weights[i] * (v * rho * v.adjoint());
  return out;
}

Operator operation_map(const ReductionFamily& fam, int y, const Operator& b) {
  if (b.rows() != fam.system_dim || b.cols() != fam.system_dim)
    throw std::invalid_argument("operation argument dimension mismatch");
  Operator out = Operator::Zero(b.rows(), b.cols());
  for (const Operator& v : fam.kraus[fam.label_index(y)])
    out += v.adjoint() * b * v;
  return out;
}

Operator instrument_map(const ReductionFamily& fam, int y,
                        const Operator& sigma) {
  check_density(sigma);
  if (sigma.rows() != fam.system_dim)
    throw std::invalid_argument("instrument argument dimension mismatch");
  Operator out = Operator::Zero(sigma.rows(), sigma.cols());
  for (const Operator& v : fam.kraus[fam.label_index(y)])
    out += v * sigma * v.adjoint();
  return out;
}

}  // namespace eventum
