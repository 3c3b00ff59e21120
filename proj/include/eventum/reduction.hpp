// reduction.hpp - generalized reduction families, the projection
// postulate, operations and instruments.
//
// A reduction family is a finite set of outcome-labelled operators
// {V(z,y)} on the system space with positive base-measure weights mu_y,
// satisfying the completeness (isometry) condition
//     sum_{y,z} mu_y V(z,y)^dag V(z,y) = I.
// Labels run 1..m; label 0 is reserved for the vacuum / no-result
// point and never appears in an outcome set.  The hidden index z
// models incomplete observation and is a singleton when observation
// is complete.

#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "eventum/linalg.hpp"

namespace eventum {

// thrown when a posterior is requested on an outcome of probability
// below the 1e-14 threshold
struct ZeroProbabilityBranch : std::runtime_error {
  explicit ZeroProbabilityBranch(const std::string& what)
      : std::runtime_error(what) {}
};

struct OutcomeSet {
  std::vector<int> labels;      // distinct, 1..m by convention, never 0
  std::vector<double> weights;  // mu_y > 0, one per label

  int size() const { return static_cast<int>(labels.size()); }
};

struct ReductionFamily {
  int system_dim = 0;
  OutcomeSet outcomes;
  // kraus[i] lists V(z, labels[i]) over the hidden index z;
  // singleton lists mean complete observation
  std::vector<std::vector<Operator>> kraus;

  int num_outcomes() const { return outcomes.size(); }
  bool complete_observation() const;
  int label_index(int y) const;  // throws on unknown label
  // the single V(y) of a complete-observation family
  const Operator& kraus_for(int y) const;
};

// counting-measure family from explicit single-Kraus operators,
// labelled 1..m in the given order
ReductionFamily make_family(int system_dim, std::vector<Operator> vs,
                            std::vector<double> weights = {});

// general constructor with hidden indices; kraus[i] lists the V(z, y_i)
// over z.  Labels default to 1..m, weights to 1.
ReductionFamily make_family_hidden(int system_dim,
                                   std::vector<std::vector<Operator>> kraus,
                                   std::vector<int> labels = {},
                                   std::vector<double> weights = {});

// ||sum mu_y V^dag V - I||; the family is valid iff <= 1e-9
double validate_completeness(const ReductionFamily& fam);

// throws std::invalid_argument unless rho is Hermitian (1e-12),
// unit-trace (1e-12) and positive up to -1e-10
void check_density(const Operator& rho);

// Spectral family of a Hermitian observable: orthoprojectors onto the
// eigenvalue clusters, labelled 1..m in increasing eigenvalue order.
ReductionFamily projection_family(const Operator& y_obs,
                                  double cluster_tol = 1e-8);
// the cluster eigenvalues, aligned with the labels of projection_family
std::vector<double> projection_eigenvalues(const Operator& y_obs,
                                           double cluster_tol = 1e-8);

// Von Neumann pointer model on the cyclic group Z_n (n = dim phi):
// V at group value g acts in X's eigenbasis as multiplication by
// phi((g - x) mod n), then e^{-iE}.  Group value g is carried as
// label g+1 so that label 0 stays reserved for the vacuum.
ReductionFamily pointer_family(const Operator& x_obs, const StateVector& phi,
                               const Operator& e_action);

// posterior V(y)psi/||V(y)psi|| and probability mu_y ||V(y)psi||^2
std::pair<StateVector, double> apply_reduction(const ReductionFamily& fam,
                                               const StateVector& psi, int y);

// sum_{y,z} mu_y V rho V^dag; trace preserving
Operator decohere(const Operator& rho, const ReductionFamily& fam);

// Heisenberg-picture operation pi(y,B) = sum_z V(z,y)^dag B V(z,y)
Operator operation_map(const ReductionFamily& fam, int y, const Operator& b);

// Schroedinger-picture instrument pi*(y,sigma) = sum_z V sigma V^dag,
// unnormalized; trace = probability of y
Operator instrument_map(const ReductionFamily& fam, int y,
                        const Operator& sigma);

}  // namespace eventum
