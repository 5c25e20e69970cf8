#include "gossip_age/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gossip_age/errors.hpp"

namespace gossip_age {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_query(const GossipNetwork& net, const NodeSet& s) {
  if (s.universe() != net.n()) {
    throw InvalidArgument("node set universe " + std::to_string(s.universe()) +
                          " does not match network size " + std::to_string(net.n()));
  }
  if (s.empty()) throw InvalidArgument("node set must be nonempty");
}

struct Entry {
  NodeSet set;
  double source_rate = 0.0;
  // (rate_i(S), index of S + i) for i in N(S), ascending i.
  std::vector<std::pair<double, std::size_t>> children;
};

} // namespace

double AgeSolution::at(const NodeSet& s) const {
  auto it = ages.find(s);
  if (it == ages.end()) throw InvalidArgument("subset " + s.to_string() + " not in solution");
  return it->second;
}

double source_rate_into(const GossipNetwork& net, const NodeSet& s) {
  check_query(net, s);
  double total = 0.0;
  s.for_each([&](NodeIndex j) { total += net.source_rate(j); });
  return total;
}

double neighbor_rate(const GossipNetwork& net, NodeIndex i, const NodeSet& s) {
  check_query(net, s);
  if (i == 0 || i > net.n()) {
    throw InvalidArgument("node " + std::to_string(i) + " outside 1.." + std::to_string(net.n()));
  }
  if (s.contains(i)) return 0.0;
  double total = 0.0;
  s.for_each([&](NodeIndex j) { total += net.peer_rate(i, j); });
  return total;
}

std::vector<std::pair<NodeIndex, double>> neighbor_rates(const GossipNetwork& net,
                                                         const NodeSet& s) {
  check_query(net, s);
  // Accumulate per source node in ascending target order so each sum matches
  // neighbor_rate() bit for bit.
  std::vector<std::pair<NodeIndex, double>> out;
  s.for_each([&](NodeIndex j) {
    for (const InEdge& e : net.in_edges(j)) {
      if (s.contains(e.from)) continue;
      out.emplace_back(e.from, e.rate);
    }
  });
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<NodeIndex, double>> merged;
  for (const auto& [i, r] : out) {
    if (!merged.empty() && merged.back().first == i) {
      merged.back().second += r;
    } else {
      merged.emplace_back(i, r);
    }
  }
  std::erase_if(merged, [](const auto& p) { return !(p.second > 0.0); });
  return merged;
}

std::vector<NodeIndex> neighbor_set(const GossipNetwork& net, const NodeSet& s) {
  std::vector<NodeIndex> out;
  for (const auto& [i, r] : neighbor_rates(net, s)) out.push_back(i);
  return out;
}

AgeSolution solve_age(const GossipNetwork& net, const NodeSet& s, const SolverOptions& options) {
  check_query(net, s);
  require_valid(net);

  std::vector<Entry> entries;
  std::unordered_map<NodeSet, std::size_t, NodeSetHash> index;
  auto admit = [&](NodeSet set) {
    if (entries.size() >= options.subset_cap) {
      throw ResourceLimit(options.subset_cap, entries.size());
    }
    index.insert_or_assign(set, entries.size());
    entries.push_back(Entry{std::move(set), 0.0, {}});
  };

  admit(s);
  std::size_t level_begin = 0;
  std::size_t level_end = 1;

  // Stage-wise expansion: every child of a level-k set has k+1 members, so
  // children always land after their parents in `entries`.
  while (level_begin < level_end) {
    std::vector<NodeSet> next;
    std::vector<std::vector<std::pair<double, NodeSet>>> pending(level_end - level_begin);
    for (std::size_t k = level_begin; k < level_end; ++k) {
      const NodeSet current = entries[k].set;
      entries[k].source_rate = source_rate_into(net, current);
      for (const auto& [i, rate] : neighbor_rates(net, current)) {
        NodeSet child = current.with(i);
        if (!index.contains(child)) {
          index.emplace(child, std::numeric_limits<std::size_t>::max());
          next.push_back(child);
        }
        pending[k - level_begin].emplace_back(rate, std::move(child));
      }
    }
    std::sort(next.begin(), next.end());
    for (auto& child : next) admit(std::move(child));
    for (std::size_t k = level_begin; k < level_end; ++k) {
      auto& kids = entries[k].children;
      for (auto& [rate, child] : pending[k - level_begin]) {
        kids.emplace_back(rate, index.at(child));
      }
    }
    level_begin = level_end;
    level_end = entries.size();
  }

  std::vector<double> value(entries.size(), 0.0);
  const double lambda_self = net.lambda_self();
  for (std::size_t k = entries.size(); k-- > 0;) {
    const Entry& e = entries[k];
    double denom = e.source_rate;
    double numer = lambda_self;
    bool infinite = false;
    for (const auto& [rate, child] : e.children) {
      denom += rate;
      if (std::isinf(value[child])) {
        infinite = true;
      } else {
        numer += rate * value[child];
      }
    }
    value[k] = (infinite || denom == 0.0) ? kInf : numer / denom;
  }

  AgeSolution solution;
  solution.query = s;
  solution.visited_count = entries.size();
  solution.ages.reserve(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    solution.ages.emplace(std::move(entries[k].set), value[k]);
  }
  return solution;
}

double ode_residual(const GossipNetwork& net, const AgeSolution& solution, const NodeSet& s) {
  check_query(net, s);
  auto lookup = [&](const NodeSet& t) {
    auto it = solution.ages.find(t);
    if (it == solution.ages.end()) {
      throw InvalidArgument("subset " + t.to_string() + " missing from solution");
    }
    if (std::isinf(it->second)) {
      throw NotApplicable("age of " + t.to_string() + " is infinite");
    }
    return it->second;
  };

  const double age = lookup(s);
  double inflow = source_rate_into(net, s);
  double pull = 0.0;
  for (const auto& [i, rate] : neighbor_rates(net, s)) {
    inflow += rate;
    pull += rate * lookup(s.with(i));
  }
  return net.lambda_self() - age * inflow + pull;
}

} // namespace gossip_age
