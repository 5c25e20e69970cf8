#pragma once

#include <cstddef>
#include <unordered_map>
#include <utility>
#include <vector>

#include "gossip_age/network.hpp"
#include "gossip_age/node_set.hpp"

namespace gossip_age {

inline constexpr std::size_t kDefaultSubsetCap = std::size_t{1} << 24;

struct SolverOptions {
  // Maximum number of subsets the recursion may expand before giving up.
  std::size_t subset_cap = kDefaultSubsetCap;
};

// Limiting average ages for the query set and every superset the recursion reached.
// Unreachable observers have age +infinity.
struct AgeSolution {
  NodeSet query;
  std::unordered_map<NodeSet, double, NodeSetHash> ages;
  std::size_t visited_count = 0;

  double age() const { return ages.at(query); }
  bool contains(const NodeSet& s) const { return ages.contains(s); }
  double at(const NodeSet& s) const;
};

// Total source rate into S.
double source_rate_into(const GossipNetwork& net, const NodeSet& s);

// Total rate at which node i delivers into S; zero when i is in S.
double neighbor_rate(const GossipNetwork& net, NodeIndex i, const NodeSet& s);

// Nodes outside S with positive rate into S, ascending.
std::vector<NodeIndex> neighbor_set(const GossipNetwork& net, const NodeSet& s);

// neighbor_set() paired with neighbor_rate(), in one pass over the in-edges of S.
std::vector<std::pair<NodeIndex, double>> neighbor_rates(const GossipNetwork& net,
                                                         const NodeSet& s);

// Exact limiting average version age of the observer set S.
//
// Each subset T satisfies
//
//   age(T) = (lambda_self + sum_{i in N(T)} rate_i(T) * age(T + i))
//            / (source_rate(T) + sum_{i in N(T)} rate_i(T)),
//
// so supersets are expanded stage by stage (|T|, |T|+1, ...) in ascending
// bit-pattern order and then evaluated from the largest stage down. Throws
// ResourceLimit once more than options.subset_cap subsets are expanded.
AgeSolution solve_age(const GossipNetwork& net, const NodeSet& s,
                      const SolverOptions& options = {});

// Stationary drift of E[X_S] at the solution:
//
//   lambda_self - age(S) * (source_rate(S) + sum rate_i(S)) + sum rate_i(S) * age(S + i).
//
// Zero at an exact fixed point. Throws InvalidArgument when S or one of the
// needed supersets is missing from the solution, NotApplicable when any of
// those ages is infinite.
double ode_residual(const GossipNetwork& net, const AgeSolution& solution, const NodeSet& s);

} // namespace gossip_age
