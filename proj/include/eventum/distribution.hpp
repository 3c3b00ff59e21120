// distribution.hpp - probability distributions over outcome sequences.

#pragma once

#include <vector>

namespace eventum {

struct SequenceMass {
  std::vector<int> sequence;  // (y^1, ..., y^t)
  double mass = 0;
};

// A distribution over length-`steps` outcome sequences, entries sorted
// lexicographically by sequence.  Sequences absent from `entries`
// carry zero mass (pruned prefixes are accounted in pruned_mass).
struct SequenceDistribution {
  int steps = 0;
  std::vector<SequenceMass> entries;
  double pruned_mass = 0;

  double total_mass() const;
  // mass of a specific sequence, 0 when absent
  double mass_of(const std::vector<int>& sequence) const;
  void sort_entries();
};

// total-variation distance (1/2) sum |p - q| over the union of supports
double total_variation_distance(const SequenceDistribution& p,
                                const SequenceDistribution& q);

}  // namespace eventum
