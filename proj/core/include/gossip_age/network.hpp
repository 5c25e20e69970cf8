#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gossip_age/node_set.hpp"

namespace gossip_age {

// One positive-rate peer edge as seen from its target node.
struct InEdge {
  NodeIndex from;
  double rate;
};

// Rate specification of a gossip network with source node 0 and gossip nodes 1..n.
//
// Holds the source self-update rate, the source->node rates and the dense
// node->node rate matrix. A per-target in-neighbor index over the positive
// peer rates is built at construction. Instances are immutable.
//
// The constructor only checks shapes; rate invariants are reported by
// validate(). Networks produced by the generators and by parse_graph() are
// always valid.
class GossipNetwork {
public:
  // peer_rates is row-major n x n, entry (i-1)*n + (j-1) holding the rate i -> j.
  GossipNetwork(std::size_t n, double lambda_self, std::vector<double> source_rates,
                std::vector<double> peer_rates);

  std::size_t n() const { return n_; }
  double lambda_self() const { return lambda_self_; }

  double source_rate(NodeIndex j) const;
  double peer_rate(NodeIndex i, NodeIndex j) const;

  std::span<const double> source_rates() const { return source_rates_; }
  std::span<const double> peer_rates() const { return peer_rates_; }

  // Positive-rate peer edges into j, ascending by source node.
  std::span<const InEdge> in_edges(NodeIndex j) const;

  // Number of peer edges with positive rate.
  std::size_t edge_count() const { return edge_count_; }

  // lambda_self + sum of source rates + sum of peer rates.
  double total_rate() const;

  friend bool operator==(const GossipNetwork& a, const GossipNetwork& b) {
    return a.n_ == b.n_ && a.lambda_self_ == b.lambda_self_ &&
           a.source_rates_ == b.source_rates_ && a.peer_rates_ == b.peer_rates_;
  }

private:
  std::size_t n_;
  double lambda_self_;
  std::vector<double> source_rates_;
  std::vector<double> peer_rates_;
  std::vector<std::size_t> in_offsets_;
  std::vector<InEdge> in_edges_;
  std::size_t edge_count_ = 0;
};

struct ValidationReport {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const GossipNetwork& net);

// Throws InvariantViolation listing every violation when validate() is not ok.
void require_valid(const GossipNetwork& net);

// Complete graph: source rate lambda/n to every node, lambda/(n-1) on every peer pair.
GossipNetwork build_complete(std::size_t n, double lambda_self, double lambda);

// Bidirectional ring: source rate lambda/n to every node, lambda/2 to each ring neighbor.
// Requires n >= 3.
GossipNetwork build_ring(std::size_t n, double lambda_self, double lambda);

} // namespace gossip_age
