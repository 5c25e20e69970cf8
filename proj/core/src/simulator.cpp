#include "gossip_age/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cassert>
#include <cmath>
#include <random>
#include <thread>

#include "gossip_age/alias_table.hpp"
#include "gossip_age/errors.hpp"

namespace gossip_age {

SimulationState SimulationState::with_ages(std::span<const std::uint64_t> ages) {
  SimulationState state(ages.size());
  state.source_version = ages.empty() ? 0 : *std::max_element(ages.begin(), ages.end());
  for (std::size_t i = 0; i < ages.size(); ++i) {
    state.node_versions[i] = state.source_version - ages[i];
  }
  return state;
}

std::uint64_t SimulationState::age(NodeIndex i) const {
  if (i == 0 || i > n()) throw InvalidArgument("node " + std::to_string(i) + " out of range");
  return source_version - node_versions[i - 1];
}

std::uint64_t SimulationState::age(const NodeSet& s) const {
  if (s.universe() != n() || s.empty()) {
    throw InvalidArgument("node set does not match the simulated network");
  }
  std::uint64_t freshest = 0;
  s.for_each([&](NodeIndex i) { freshest = std::max(freshest, node_versions[i - 1]); });
  return source_version - freshest;
}

std::vector<std::uint64_t> SimulationState::ages() const {
  std::vector<std::uint64_t> out(n());
  for (std::size_t i = 0; i < n(); ++i) out[i] = source_version - node_versions[i];
  return out;
}

void apply_transition(SimulationState& state, Transition edge) {
  const std::size_t n = state.n();
  const auto [from, to] = edge;
  if (from > n || to > n || (from == to && from != 0) || (to == 0 && from != 0)) {
    throw InvalidArgument("malformed transition (" + std::to_string(from) + "," +
                          std::to_string(to) + ")");
  }
  if (from == 0 && to == 0) {
    ++state.source_version;
  } else if (from == 0) {
    state.node_versions[to - 1] = state.source_version;
  } else {
    auto& target = state.node_versions[to - 1];
    target = std::max(target, state.node_versions[from - 1]);
  }
  assert(state.node_versions.empty() || to == 0 ||
         state.node_versions[to - 1] <= state.source_version);
}

namespace {

// 53-bit uniform in [0, 1).
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// 53-bit uniform in (0, 1), safe for log().
double uniform_open(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

// Per-target running value of X_S and its time integral per batch.
class AgeIntegrator {
public:
  AgeIntegrator(const std::vector<NodeSet>& targets, std::size_t n, double warmup, double horizon)
      : targets_(targets), warmup_(warmup), horizon_(horizon),
        batch_len_((horizon - warmup) / static_cast<double>(kBatchCount)),
        freshest_(targets.size(), 0), by_node_(n), sums_(kBatchCount * targets.size(), 0.0) {
    for (std::size_t t = 0; t < targets_.size(); ++t) {
      targets_[t].for_each([&](NodeIndex i) { by_node_[i - 1].push_back(t); });
    }
  }

  // X_S is constant on [a, b).
  void integrate(double a, double b, std::uint64_t source_version) {
    a = std::max(a, warmup_);
    b = std::min(b, horizon_);
    while (a < b) {
      std::size_t batch = std::min<std::size_t>(
          kBatchCount - 1, static_cast<std::size_t>((a - warmup_) / batch_len_));
      double boundary = batch + 1 == kBatchCount
                            ? horizon_
                            : warmup_ + static_cast<double>(batch + 1) * batch_len_;
      if (boundary <= a) {
        // floor() landed one batch early through rounding.
        ++batch;
        boundary = batch + 1 == kBatchCount
                       ? horizon_
                       : warmup_ + static_cast<double>(batch + 1) * batch_len_;
      }
      const double end = std::min(b, boundary);
      const double dt = end - a;
      double* row = &sums_[batch * targets_.size()];
      for (std::size_t t = 0; t < targets_.size(); ++t) {
        row[t] += static_cast<double>(source_version - freshest_[t]) * dt;
      }
      a = end;
    }
  }

  void node_updated(NodeIndex i, std::uint64_t version) {
    for (std::size_t t : by_node_[i - 1]) freshest_[t] = std::max(freshest_[t], version);
  }

  std::vector<TargetEstimate> finish() const {
    std::vector<TargetEstimate> out;
    out.reserve(targets_.size());
    const double window = horizon_ - warmup_;
    for (std::size_t t = 0; t < targets_.size(); ++t) {
      TargetEstimate est;
      est.target = targets_[t];
      est.batch_means.resize(kBatchCount);
      double total = 0.0;
      for (std::size_t b = 0; b < kBatchCount; ++b) {
        const double integral = sums_[b * targets_.size() + t];
        total += integral;
        est.batch_means[b] = integral / batch_len_;
      }
      est.mean = total / window;
      double mu = 0.0;
      for (double m : est.batch_means) mu += m;
      mu /= static_cast<double>(kBatchCount);
      double ss = 0.0;
      for (double m : est.batch_means) ss += (m - mu) * (m - mu);
      const double var = ss / static_cast<double>(kBatchCount - 1);
      est.std_error = std::sqrt(var / static_cast<double>(kBatchCount));
      out.push_back(std::move(est));
    }
    return out;
  }

private:
  const std::vector<NodeSet>& targets_;
  double warmup_;
  double horizon_;
  double batch_len_;
  std::vector<std::uint64_t> freshest_;       // max node version over each target
  std::vector<std::vector<std::size_t>> by_node_;
  std::vector<double> sums_;                  // [batch][target]
};

std::vector<NodeSet> resolve_targets(const GossipNetwork& net, const SimConfig& cfg) {
  if (cfg.targets.empty()) {
    std::vector<NodeSet> all;
    all.reserve(net.n());
    for (std::size_t i = 1; i <= net.n(); ++i) all.push_back(NodeSet(net.n(), {i}));
    return all;
  }
  for (const auto& t : cfg.targets) {
    if (t.universe() != net.n() || t.empty()) {
      throw InvalidConfig("target " + t.to_string() + " is not a nonempty subset of 1.." +
                          std::to_string(net.n()));
    }
  }
  return cfg.targets;
}

void check_config(const SimConfig& cfg) {
  if (!(cfg.horizon > 0.0) || !std::isfinite(cfg.horizon)) {
    throw InvalidConfig("horizon must be a positive finite time");
  }
  if (!(cfg.warmup >= 0.0)) throw InvalidConfig("warmup must be >= 0");
  if (!(cfg.warmup < cfg.horizon)) throw InvalidConfig("warmup must be < horizon");
}

} // namespace

SimEstimate run_simulation(const GossipNetwork& net, const SimConfig& cfg) {
  check_config(cfg);
  require_valid(net);
  const std::vector<NodeSet> targets = resolve_targets(net, cfg);

  std::vector<Transition> transitions;
  std::vector<double> rates;
  transitions.push_back({0, 0});
  rates.push_back(net.lambda_self());
  for (std::size_t j = 1; j <= net.n(); ++j) {
    if (net.source_rate(j) > 0.0) {
      transitions.push_back({0, j});
      rates.push_back(net.source_rate(j));
    }
  }
  for (std::size_t i = 1; i <= net.n(); ++i) {
    for (std::size_t j = 1; j <= net.n(); ++j) {
      if (net.peer_rate(i, j) > 0.0) {
        transitions.push_back({i, j});
        rates.push_back(net.peer_rate(i, j));
      }
    }
  }
  double total = 0.0;
  for (double r : rates) total += r;
  if (!(total > 0.0)) throw DegenerateNetwork("network has total event rate zero");
  const AliasTable table(rates);

  std::mt19937_64 rng(cfg.seed);
  SimulationState state(net.n());
  AgeIntegrator integrator(targets, net.n(), cfg.warmup, cfg.horizon);

  SimEstimate est;
  est.seed = cfg.seed;
  est.horizon = cfg.horizon;
  est.warmup = cfg.warmup;

  while (true) {
    const double next = state.now - std::log(uniform_open(rng)) / total;
    integrator.integrate(state.now, next, state.source_version);
    if (next >= cfg.horizon) break;
    const Transition edge = transitions[table.sample(uniform01(rng))];
    apply_transition(state, edge);
    if (edge.to != 0) integrator.node_updated(edge.to, state.node_versions[edge.to - 1]);
    state.now = next;
    ++est.event_count;
  }
  est.targets = integrator.finish();
  return est;
}

Replication replicate(const GossipNetwork& net, const SimConfig& cfg, std::size_t reps,
                      std::size_t threads) {
  if (reps == 0) throw InvalidConfig("reps must be >= 1");
  check_config(cfg);

  Replication out;
  out.runs.resize(reps);
  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, reps);

  auto run_one = [&](std::size_t k) {
    SimConfig c = cfg;
    c.seed = cfg.seed + k;
    out.runs[k] = run_simulation(net, c);
  };

  if (threads == 1) {
    for (std::size_t k = 0; k < reps; ++k) run_one(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    {
      std::vector<std::jthread> workers;
      for (std::size_t w = 0; w < threads; ++w) {
        workers.emplace_back([&, w] {
          try {
            for (std::size_t k = next++; k < reps; k = next++) run_one(k);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
    }
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  const auto& first = out.runs.front().targets;
  for (std::size_t t = 0; t < first.size(); ++t) {
    PooledEstimate p;
    p.target = first[t].target;
    if (reps == 1) {
      p.mean = first[t].mean;
      p.std_error = first[t].std_error;
    } else {
      double sum = 0.0;
      for (const auto& run : out.runs) sum += run.targets[t].mean;
      p.mean = sum / static_cast<double>(reps);
      double ss = 0.0;
      for (const auto& run : out.runs) {
        const double d = run.targets[t].mean - p.mean;
        ss += d * d;
      }
      p.std_error = std::sqrt(ss / static_cast<double>(reps - 1) / static_cast<double>(reps));
    }
    out.pooled.push_back(std::move(p));
  }
  return out;
}

} // namespace gossip_age
