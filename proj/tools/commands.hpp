#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gossip_age/node_set.hpp"
#include "gossip_age/symmetric.hpp"

namespace gossip_age::cli {

enum ExitCode : int {
  kSuccess = 0,
  kUsage = 1,
  kInvalidGraph = 2,
  kResourceLimit = 3,
};

class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct SweepSpec {
  Topology topology = Topology::complete;
  std::vector<std::size_t> n_values;
  double lambda_self = 1.0;
  double lambda = 1.0;
};

// "start:stop:step" (inclusive stop) or a comma list such as "2,3,10".
// Result is nonempty and strictly increasing; throws UsageError otherwise.
std::vector<std::size_t> parse_n_values(std::string_view text);

// "1,2,3" -> {1,2,3}. Throws UsageError on empty or malformed input.
std::vector<NodeIndex> parse_node_list(std::string_view text);

// CSV header plus one row per n, ascending.
std::string sweep_csv(const SweepSpec& spec);

// %.12g, or "inf".
std::string format_number(double value);

// Runs one command line (args excludes the program name) and returns the exit code.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);

} // namespace gossip_age::cli
