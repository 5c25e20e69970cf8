#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gossip_age {

enum class Topology { complete, ring };

std::string_view to_string(Topology t);
std::optional<Topology> parse_topology(std::string_view name);

// Common limiting age of every j-node observer set of a symmetric network.
// For the ring the sets are contiguous arcs.
struct SymmetricAgeProfile {
  Topology topology;
  std::size_t n;
  double lambda_self;
  double lambda;
  std::vector<double> ages; // ages[j-1] is the age of a j-node set

  double age(std::size_t j) const { return ages.at(j - 1); }
  double node_age() const { return ages.front(); }
};

struct AgeBounds {
  double lower;
  double upper;
};

// H_n = sum_{k=1}^n 1/k, summed smallest term first.
double harmonic_number(std::size_t n);

SymmetricAgeProfile complete_age_profile(std::size_t n, double lambda_self, double lambda);

// Logarithmic sandwich on the per-node age of the complete graph:
//   lower = (lambda_self/lambda) * ((n-1)/n * H_{n-1} + 1/n)
//   upper = (lambda_self/lambda) * H_n
AgeBounds complete_bounds(std::size_t n, double lambda_self, double lambda);

// Requires n >= 3.
SymmetricAgeProfile ring_age_profile(std::size_t n, double lambda_self, double lambda);

} // namespace gossip_age
