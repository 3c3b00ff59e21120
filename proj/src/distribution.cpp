// distribution.cpp - sequence distributions and total variation.

#include "eventum/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace eventum {

double SequenceDistribution::total_mass() const {
  double t = 0;
  for (const auto& e : entries) t += e.mass;
  return t;
}

double SequenceDistribution::mass_of(const std::vector<int>& sequence) const {
  for (const auto& e : entries)
    if (e.sequence == sequence) return e.mass;
  return 0.0;
}

void SequenceDistribution::sort_entries() {
  std::sort(entries.begin(), entries.end(),
            [](const SequenceMass& a, const SequenceMass& b) {
              return a.sequence < b.sequence;
            });
}

double total_variation_distance(const SequenceDistribution& p,
                                const SequenceDistribution& q) {
  std::map<std::vector<int>, double> diff;
  for (const auto& e : p.entries) diff[e.sequence] += e.mass;
  for (const auto& e : q.entries) diff[e.sequence] -= e.mass;
  double tv = 0;
  for (const auto& [seq, d] : diff) tv += std::abs(d);
  return tv / 2.0;
}

}  // namespace eventum
