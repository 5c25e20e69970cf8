#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "gossip_age/network.hpp"

namespace gossip_age {

// Graph file format (UTF-8 JSON, fields in this order):
//
//   {"n": 3, "lambda_self": 1.0, "source_rates": [1.0, 0.0, 1.0],
//    "edges": [{"from": 1, "to": 2, "rate": 1.0}, ...]}
//
// Nodes are 1..n and the source never appears in "edges". Omitted edges have
// rate 0. Duplicate edges and self-loops are rejected.

// Throws ParseError, SchemaError or InvariantViolation.
GossipNetwork parse_graph(std::string_view text);

// Edges with zero rate are omitted; edges are sorted by (from, to).
std::string serialize_graph(const GossipNetwork& net);

GossipNetwork load_graph(const std::filesystem::path& path);
void save_graph(const GossipNetwork& net, const std::filesystem::path& path);

} // namespace gossip_age
