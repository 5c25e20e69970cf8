#include "gossip_age/alias_table.hpp"

#include <cmath>

#include "gossip_age/errors.hpp"

namespace gossip_age {

AliasTable::AliasTable(std::span<const double> weights)
    : prob_(weights.size(), 0.0), alias_(weights.size(), 0) {
  const std::size_t k = weights.size();
  if (k == 0) throw InvalidArgument("alias table needs at least one outcome");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw InvalidArgument("alias table weights must be finite and nonnegative");
    }
    total += w;
  }
  if (!(total > 0.0)) throw InvalidArgument("alias table weights sum to zero");

  // Vose's method.
  std::vector<double> scaled(k);
  std::vector<std::size_t> small;
  std::vector<std::size_t> large;
  for (std::size_t i = 0; i < k; ++i) {
    scaled[i] = weights[i] * static_cast<double>(k) / total;
    (scaled[i] < 1.0 ? small : large).push_back(i);
  }
  while (!small.empty() && !large.empty()) {
    const std::size_t s = small.back();
    small.pop_back();
    const std::size_t l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers are 1 up to rounding.
  for (std::size_t i : large) {
    prob_[i] = 1.0;
    alias_[i] = i;
  }
  for (std::size_t i : small) {
    prob_[i] = 1.0;
    alias_[i] = i;
  }
}

std::size_t AliasTable::sample(double u) const {
  const double scaled = u * static_cast<double>(prob_.size());
  std::size_t column = static_cast<std::size_t>(scaled);
  if (column >= prob_.size()) column = prob_.size() - 1;
  const double coin = scaled - static_cast<double>(column);
  return coin < prob_[column] ? column : alias_[column];
}

std::vector<double> AliasTable::implied_probabilities() const {
  const double k = static_cast<double>(prob_.size());
  std::vector<double> p(prob_.size(), 0.0);
  for (std::size_t i = 0; i < prob_.size(); ++i) {
    p[i] += prob_[i] / k;
    p[alias_[i]] += (1.0 - prob_[i]) / k;
  }
  return p;
}

} // namespace gossip_age
