#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "gossip_age/network.hpp"
#include "gossip_age/node_set.hpp"

namespace gossip_age {

// Version counters of a running gossip network. The age of node i is
// source_version - node_versions[i-1].
struct SimulationState {
  std::uint64_t source_version = 0;
  std::vector<std::uint64_t> node_versions;
  double now = 0.0;

  SimulationState() = default;
  explicit SimulationState(std::size_t n) : node_versions(n, 0) {}

  // State whose node ages are exactly `ages` (source_version = max age).
  static SimulationState with_ages(std::span<const std::uint64_t> ages);

  std::size_t n() const { return node_versions.size(); }
  std::uint64_t age(NodeIndex i) const;
  // min over members of S
  std::uint64_t age(const NodeSet& s) const;
  std::vector<std::uint64_t> ages() const;
};

// A transition (from, to): (0,0) is a new source version, (0,j) a source
// delivery to j, (i,j) a gossip delivery from i to j.
struct Transition {
  NodeIndex from;
  NodeIndex to;
};

// Throws InvalidArgument for self-loops among gossip nodes, (i,0) with i > 0,
// or indices beyond n.
void apply_transition(SimulationState& state, Transition edge);

inline constexpr std::size_t kBatchCount = 20;

struct SimConfig {
  double horizon = 1e5;
  double warmup = 0.0;
  std::uint64_t seed = 0;
  // Empty means every singleton {1}..{n}.
  std::vector<NodeSet> targets;
};

struct TargetEstimate {
  NodeSet target;
  double mean = 0.0;
  // Batch-means standard error over kBatchCount equal post-warmup batches.
  double std_error = 0.0;
  std::vector<double> batch_means;
};

struct SimEstimate {
  std::vector<TargetEstimate> targets;
  std::uint64_t event_count = 0;
  std::uint64_t seed = 0;
  double horizon = 0.0;
  double warmup = 0.0;
};

// Time-weighted mean of X_S over [warmup, horizon] for each target.
//
// All transitions are merged into one Poisson clock of total rate
// net.total_rate(); each event draws an exponential gap and then an edge from
// an alias table, in that order, from one mt19937_64 stream seeded with
// cfg.seed. Output is bit-identical for identical inputs.
//
// Throws DegenerateNetwork when the total rate is zero and InvalidConfig for
// a bad horizon/warmup or targets outside the network.
SimEstimate run_simulation(const GossipNetwork& net, const SimConfig& cfg);

struct PooledEstimate {
  NodeSet target;
  double mean = 0.0;
  double std_error = 0.0;
};

struct Replication {
  std::vector<SimEstimate> runs; // runs[k] used seed cfg.seed + k
  std::vector<PooledEstimate> pooled;
};

// Runs `reps` independent simulations with seeds seed, seed+1, ... and pools
// them: mean of per-run means, standard error from the run-to-run sample
// variance (the single run's batch SE when reps == 1). Runs may execute on up
// to `threads` workers (0 picks hardware concurrency); the result does not
// depend on scheduling.
Replication replicate(const GossipNetwork& net, const SimConfig& cfg, std::size_t reps,
                      std::size_t threads = 0);

} // namespace gossip_age
