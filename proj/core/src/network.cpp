#include "gossip_age/network.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "gossip_age/errors.hpp"

namespace gossip_age {

GossipNetwork::GossipNetwork(std::size_t n, double lambda_self, std::vector<double> source_rates,
                             std::vector<double> peer_rates)
    : n_(n), lambda_self_(lambda_self), source_rates_(std::move(source_rates)),
      peer_rates_(std::move(peer_rates)) {
  if (n_ == 0) throw InvalidParameter("network needs at least one node");
  if (source_rates_.size() != n_) {
    throw InvalidParameter("expected " + std::to_string(n_) + " source rates, got " +
                           std::to_string(source_rates_.size()));
  }
  if (peer_rates_.size() != n_ * n_) {
    throw InvalidParameter("expected an " + std::to_string(n_) + "x" + std::to_string(n_) +
                           " peer rate matrix");
  }

  // CSR index of positive rates by target, sources ascending.
  in_offsets_.assign(n_ + 1, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      if (peer_rates_[i * n_ + j] > 0.0) ++in_offsets_[j + 1];
    }
  }
  std::partial_sum(in_offsets_.begin(), in_offsets_.end(), in_offsets_.begin());
  in_edges_.resize(in_offsets_.back());
  std::vector<std::size_t> fill(in_offsets_.begin(), in_offsets_.end() - 1);
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      const double r = peer_rates_[i * n_ + j];
      if (r > 0.0) in_edges_[fill[j]++] = InEdge{i + 1, r};
    }
  }
  edge_count_ = in_edges_.size();
}

double GossipNetwork::source_rate(NodeIndex j) const {
  if (j == 0 || j > n_) throw InvalidArgument("node " + std::to_string(j) + " out of range");
  return source_rates_[j - 1];
}

double GossipNetwork::peer_rate(NodeIndex i, NodeIndex j) const {
  if (i == 0 || i > n_ || j == 0 || j > n_) {
    throw InvalidArgument("edge (" + std::to_string(i) + "," + std::to_string(j) +
                          ") out of range");
  }
  return peer_rates_[(i - 1) * n_ + (j - 1)];
}

std::span<const InEdge> GossipNetwork::in_edges(NodeIndex j) const {
  if (j == 0 || j > n_) throw InvalidArgument("node " + std::to_string(j) + " out of range");
  return std::span<const InEdge>(in_edges_).subspan(in_offsets_[j - 1],
                                                    in_offsets_[j] - in_offsets_[j - 1]);
}

double GossipNetwork::total_rate() const {
  double total = lambda_self_;
  for (double r : source_rates_) total += r;
  for (const auto& e : in_edges_) total += e.rate;
  return total;
}

ValidationReport validate(const GossipNetwork& net) {
  ValidationReport report;
  auto add = [&](const std::string& msg) { report.violations.push_back(msg); };

  if (!std::isfinite(net.lambda_self())) {
    add("non-finite rate: lambda_self");
  } else if (net.lambda_self() <= 0.0) {
    add("lambda_self must be > 0");
  }

  const std::size_t n = net.n();
  for (std::size_t j = 1; j <= n; ++j) {
    const double r = net.source_rate(j);
    if (!std::isfinite(r)) {
      add("non-finite rate: source_rates[" + std::to_string(j) + "]");
    } else if (r < 0.0) {
      add("negative rate: source_rates[" + std::to_string(j) + "]");
    }
  }
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = 1; j <= n; ++j) {
      const double r = net.peer_rate(i, j);
      const std::string where = "peer_rates[" + std::to_string(i) + "][" + std::to_string(j) + "]";
      if (!std::isfinite(r)) {
        add("non-finite rate: " + where);
      } else if (r < 0.0) {
        add("negative rate: " + where);
      } else if (i == j && r != 0.0) {
        add("nonzero diagonal at node " + std::to_string(i));
      }
    }
  }
  return report;
}

void require_valid(const GossipNetwork& net) {
  const auto report = validate(net);
  if (report.ok()) return;
  std::ostringstream msg;
  msg << "invalid network:";
  for (const auto& v : report.violations) msg << ' ' << v << ';';
  throw InvariantViolation(msg.str());
}

namespace {

void check_generator_args(std::size_t n, double lambda_self, double lambda) {
  if (n == 0) throw InvalidParameter("n must be >= 1");
  if (!(lambda_self > 0.0) || !std::isfinite(lambda_self)) {
    throw InvalidParameter("lambda_self must be a positive finite rate");
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw InvalidParameter("lambda must be a positive finite rate");
  }
}

} // namespace

GossipNetwork build_complete(std::size_t n, double lambda_self, double lambda) {
  check_generator_args(n, lambda_self, lambda);
  std::vector<double> source(n, lambda / static_cast<double>(n));
  std::vector<double> peer(n * n, 0.0);
  if (n > 1) {
    const double r = lambda / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i != j) peer[i * n + j] = r;
      }
    }
  }
  return GossipNetwork(n, lambda_self, std::move(source), std::move(peer));
}

GossipNetwork build_ring(std::size_t n, double lambda_self, double lambda) {
  if (n < 3) throw InvalidParameter("ring requires n >= 3");
  check_generator_args(n, lambda_self, lambda);
  std::vector<double> source(n, lambda / static_cast<double>(n));
  std::vector<double> peer(n * n, 0.0);
  const double r = lambda / 2.0;
  for (std::size_t i = 0; i < n; ++i) {
    peer[i * n + (i + 1) % n] = r;
    peer[i * n + (i + n - 1) % n] = r;
  }
  return GossipNetwork(n, lambda_self, std::move(source), std::move(peer));
}

} // namespace gossip_age
