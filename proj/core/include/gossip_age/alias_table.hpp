#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace gossip_age {

// Walker/Vose alias table for O(1) sampling from a fixed discrete distribution.
class AliasTable {
public:
  // Weights must be nonnegative with a positive sum.
  explicit AliasTable(std::span<const double> weights);

  std::size_t size() const { return prob_.size(); }

  // Maps a uniform u in [0, 1) to an outcome index.
  std::size_t sample(double u) const;

  // Probability of each outcome as implied by the table.
  std::vector<double> implied_probabilities() const;

private:
  std::vector<double> prob_;
  std::vector<std::size_t> alias_;
};

} // namespace gossip_age
