// filtering.cpp - filtering and posterior recursions, prior trajectory
// enumeration, Monte-Carlo sampling, conditional expectations.

#include "eventum/filtering.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace eventum {

namespace {

constexpr double kZeroProb = 1e-14;

// 53-bit uniform in [0,1) from one 64-bit draw; keeps the sampler
// independent of library distribution internals
double uniform01(std::mt19937_64& gen) {
  return static_cast<double>(gen() >> 11) * 0x1.0p-53;
}

// conditional probabilities mu_y ||V(y) psihat||^2 for all outcomes
std::vector<double> step_probabilities(const ReductionFamily& fam,
                                       const StateVector& post) {
  std::vector<double> probs(fam.num_outcomes());
  for (int i = 0; i < fam.num_outcomes(); ++i) {
    double q = 0;
    for (const Operator& v : fam.kraus[i]) q += (v * post).squaredNorm();
    probs[i] = fam.outcomes.weights[i] * q;
  }
  return probs;
}

}  // namespace

StateVector filter_step(const ReductionFamily& fam,
                        const StateVector& psi_prev, int y) {
  if (!fam.complete_observation())
    throw std::invalid_argument(
        "filtering on a vector state needs complete observation");
  return fam.kraus_for(y) * psi_prev;
}

std::pair<StateVector, double> posterior_step(const ReductionFamily& fam,
                                              const StateVector& post_prev,
                                              int y) {
  StateVector next = filter_step(fam, post_prev, y);
  double q = next.squaredNorm();
  double cond = fam.outcomes.weights[fam.label_index(y)] * q;
  if (cond <= kZeroProb)
    throw ZeroProbabilityBranch("posterior step conditioned on outcome " +
                                std::to_string(y) +
                                " of probability <= 1e-14");
  return {next / std::sqrt(q), cond};
}

SequenceDistribution prior_distribution(const ReductionFamily& fam,
                                        const StateVector& psi, int t,
                                        long sequence_cap) {
  if (t < 0) throw std::invalid_argument("negative step count");
  if (!fam.complete_observation())
    throw std::invalid_argument(
        "prior enumeration on vector states needs complete observation");
  long count = 1;
  for (int k = 0; k < t; ++k) {
    count *= fam.num_outcomes();
    if (count > sequence_cap)
      throw std::length_error("sequence cap exceeded: m^t > " +
                              std::to_string(sequence_cap));
  }

  SequenceDistribution dist;
  dist.steps = t;

  // depth-first walk carrying the unnormalized filtered vector and the
  // accumulated weight product; the prefix mass ||psi(r)||^2 prod mu
  // dominates every extension (martingale property), so prefixes at or
  // below the pruning threshold are dropped and accounted in pruned_mass
  std::vector<int> seq;
  seq.reserve(t);
  auto dfs = [&](auto&& self, const StateVector& cur, double mu_prod) -> void {
    double mass = mu_prod * cur.squaredNorm();
    if (static_cast<int>(seq.size()) == t) {
      dist.entries.push_back({seq, mass});
      return;
    }
    if (mass <= kZeroProb) {
      dist.pruned_mass += mass;
      return;
    }
    for (int i = 0; i < fam.num_outcomes(); ++i) {
      seq.push_back(fam.outcomes.labels[i]);
      self(self, filter_step(fam, cur, fam.outcomes.labels[i]),
           mu_prod * fam.outcomes.weights[i]);
      seq.pop_back();
    }
  };
  dfs(dfs, psi, 1.0);
  dist.sort_entries();
  return dist;
}

Trajectory make_trajectory(const ReductionFamily& fam, const StateVector& psi,
                           const std::vector<int>& outcomes) {
  Trajectory traj;
  traj.outcomes = outcomes;
  traj.filtered = psi;
  double mu_prod = 1.0;
  for (int y : outcomes) {
    mu_prod *= fam.outcomes.weights[fam.label_index(y)];
    traj.filtered = filter_step(fam, traj.filtered, y);
  }
  traj.weight = mu_prod * traj.filtered.squaredNorm();
  if (traj.weight > kZeroProb)
    traj.posterior = traj.filtered / traj.filtered.norm();
  return traj;
}

SampleResult sample_trajectories(const ReductionFamily& fam,
                                 const StateVector& psi, int t, long n,
                                 std::uint64_t seed) {
  if (t < 0 || n < 0) throw std::invalid_argument("negative sample request");
  if (!fam.complete_observation())
    throw std::invalid_argument(
        "sampling on vector states needs complete observation");

  SampleResult result;
  result.seed = seed;
  result.generator = "mt19937_64";
  std::mt19937_64 gen(seed);

  std::map<std::vector<int>, long> counts;
  result.trajectories.reserve(static_cast<size_t>(n));
  for (long s = 0; s < n; ++s) {
    StateVector post = psi / psi.norm();
    std::vector<int> seq;
    seq.reserve(t);
    for (int k = 0; k < t; ++k) {
      std::vector<double> probs = step_probabilities(fam, post);
      double total = 0;
      for (double q : probs) total += q;
      double u = uniform01(gen) * total;
      int pick = 0;
      double acc = 0;
      for (int i = 0; i < fam.num_outcomes(); ++i) {
        acc += probs[i];
        pick = i;
        if (u < acc) break;
      }
      int y = fam.outcomes.labels[pick];
      seq.push_back(y);
      post = posterior_step(fam, post, y).first;
    }
    counts[seq] += 1;
    result.trajectories.push_back(make_trajectory(fam, psi, seq));
  }

  result.empirical.steps = t;
  for (const auto& [seq, c] : counts)
    result.empirical.entries.push_back(
        {seq, static_cast<double>(c) / static_cast<double>(n)});
  result.empirical.sort_entries();
  return result;
}

Complex conditional_expectation(const ReductionFamily& fam,
                                const StateVector& psi, const Operator& b,
                                int t, const std::vector<int>& observed) {
  const int r = static_cast<int>(observed.size());
  if (t < 0 || r > t)
    throw std::invalid_argument("need 0 <= #observed <= t");
  if (b.rows() != fam.system_dim || b.cols() != fam.system_dim ||
      psi.size() != fam.system_dim)
    throw std::invalid_argument("dimension mismatch");

  // backward recursion: unobserved steps t..r+1 sum over outcomes,
  // observed steps r..1 apply the recorded outcome; hidden z is always
  // summed through the operation map
  auto sum_step = [&](const Operator& h) {
    Operator acc = Operator::Zero(fam.system_dim, fam.system_dim);
    for (int i = 0; i < fam.num_outcomes(); ++i)
      acc += fam.outcomes.weights[i] *
             operation_map(fam, fam.outcomes.labels[i], h);
    return acc;
  };

  Operator hb = b;
  Operator hi = Operator::Identity(fam.system_dim, fam.system_dim);
  for (int k = t; k > r; --k) {
    hb = sum_step(hb);
    hi = sum_step(hi);
  }
  for (int k = r - 1; k >= 0; --k) {
    int y = observed[k];
    double mu = fam.outcomes.weights[fam.label_index(y)];
    hb = mu * operation_map(fam, y, hb);
    hi = mu * operation_map(fam, y, hi);
  }

  Complex num = psi.dot(hb * psi);
  Complex den = psi.dot(hi * psi);
  if (den.real() <= kZeroProb)
    throw ZeroProbabilityBranch(
        "conditioning sequence has probability <= 1e-14");
  return num / den;
}

}  // namespace eventum
