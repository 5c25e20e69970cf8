#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "gossip_age/network.hpp"

namespace gossip_age::testing {

// Rates of the three-node example: source feeds nodes 1 and 3, node 1 feeds
// 2 and 3, node 3 feeds 2.
struct ToyRates {
  double self = 1.0; // lambda_00
  double s1 = 1.0;   // lambda_01
  double s3 = 1.0;   // lambda_03
  double r12 = 1.0;
  double r13 = 1.0;
  double r32 = 1.0;
};

inline GossipNetwork toy_network(const ToyRates& r = {}) {
  std::vector<double> peer(9, 0.0);
  peer[0 * 3 + 1] = r.r12;
  peer[0 * 3 + 2] = r.r13;
  peer[2 * 3 + 1] = r.r32;
  return GossipNetwork(3, r.self, {r.s1, 0.0, r.s3}, std::move(peer));
}

// Closed form for the age at node 2 of the toy network, written out by hand
// from the four subset equations.
inline double toy_node2_closed_form(const ToyRates& r) {
  const double full = r.s1 + r.s3;
  return r.self / (r.r12 + r.r32) *
         (1.0 + r.r12 / (r.s1 + r.r32) * (1.0 + r.r32 / full) +
          r.r32 / (r.s3 + r.r12 + r.r13) * (1.0 + (r.r12 + r.r13) / full));
}

struct RandomNetworkOptions {
  std::size_t min_n = 1;
  std::size_t max_n = 4;
  double max_rate = 2.0;
  double edge_probability = 0.6;
  // Every node gets a positive source rate, so every age is finite.
  bool all_sourced = true;
};

// Rates drawn from (0, max_rate]; peer edges present with edge_probability.
inline GossipNetwork random_network(std::mt19937_64& rng, const RandomNetworkOptions& opt = {}) {
  std::uniform_int_distribution<std::size_t> size_dist(opt.min_n, opt.max_n);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto rate = [&] { return opt.max_rate * (1.0 - unit(rng)); }; // (0, max_rate]
  const std::size_t n = size_dist(rng);
  const double self = rate();
  std::vector<double> source(n);
  for (auto& s : source) s = (opt.all_sourced || unit(rng) < 0.5) ? rate() : 0.0;
  std::vector<double> peer(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && unit(rng) < opt.edge_probability) peer[i * n + j] = rate();
    }
  }
  return GossipNetwork(n, self, std::move(source), std::move(peer));
}

inline GossipNetwork scaled(const GossipNetwork& net, double c) {
  std::vector<double> source(net.source_rates().begin(), net.source_rates().end());
  std::vector<double> peer(net.peer_rates().begin(), net.peer_rates().end());
  for (auto& r : source) r *= c;
  for (auto& r : peer) r *= c;
  return GossipNetwork(net.n(), net.lambda_self() * c, std::move(source), std::move(peer));
}

inline GossipNetwork with_lambda_self(const GossipNetwork& net, double lambda_self) {
  return GossipNetwork(net.n(), lambda_self,
                       std::vector<double>(net.source_rates().begin(), net.source_rates().end()),
                       std::vector<double>(net.peer_rates().begin(), net.peer_rates().end()));
}

} // namespace gossip_age::testing
