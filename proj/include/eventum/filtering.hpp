// filtering.hpp - sequential measurement on the system space alone:
// filtering recursion, posterior recursion, prior trajectory
// distribution, conditional expectations, Monte-Carlo sampling.
//
// Along an outcome sequence (y^1, ..., y^t) the unnormalized filtered
// vector is psi(t) = V(y^t) ... V(y^1) psi and the sequence carries
// prior probability ||psi(t)||^2 prod mu.  The normalized posterior
// obeys the nonlinear recursion with conditional probabilities
// mu_y ||V(y) psihat||^2.

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "eventum/distribution.hpp"
#include "eventum/linalg.hpp"
#include "eventum/reduction.hpp"

namespace eventum {

struct Trajectory {
  std::vector<int> outcomes;
  StateVector filtered;   // unnormalized psi(t)
  double weight = 0;      // ||psi(t)||^2 prod mu
  StateVector posterior;  // normalized, defined when weight > 1e-14
};

// one filtering step psi -> V(y) psi (unnormalized, linear)
StateVector filter_step(const ReductionFamily& fam,
                        const StateVector& psi_prev, int y);

// one posterior step: (V(y) psihat / ||.||, mu_y ||V(y) psihat||^2)
std::pair<StateVector, double> posterior_step(const ReductionFamily& fam,
                                              const StateVector& post_prev,
                                              int y);

// full enumeration of {1..m}^t with per-sequence weights; prefixes of
// mass <= 1e-14 are pruned and their mass reported
SequenceDistribution prior_distribution(const ReductionFamily& fam,
                                        const StateVector& psi, int t,
                                        long sequence_cap = 4096);

// the trajectory behind one explicit outcome sequence
Trajectory make_trajectory(const ReductionFamily& fam, const StateVector& psi,
                           const std::vector<int>& outcomes);

struct SampleResult {
  std::vector<Trajectory> trajectories;
  SequenceDistribution empirical;  // counts / n
  std::uint64_t seed = 0;
  std::string generator;  // "mt19937_64"
};

// chain-rule Monte Carlo: draws y step by step from the exact
// conditional probabilities; deterministic given seed
SampleResult sample_trajectories(const ReductionFamily& fam,
                                 const StateVector& psi, int t, long n,
                                 std::uint64_t seed);

// sequential instrumental formula
//   <B>(t, y0..yr]) = psi^dag pi(t,obs,B) psi / psi^dag pi(t,obs,I) psi
// with pi summing the unobserved y_{r+1}..y_t (and any hidden z)
// through the z-summed operation map
Complex conditional_expectation(const ReductionFamily& fam,
                                const StateVector& psi, const Operator& b,
                                int t, const std::vector<int>& observed);

}  // namespace eventum
