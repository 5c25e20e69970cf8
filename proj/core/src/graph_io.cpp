#include "gossip_age/graph_io.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "gossip_age/errors.hpp"

namespace gossip_age {

namespace {

using Json = nlohmann::ordered_json;

std::pair<std::size_t, std::size_t> line_and_column(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t k = 0; k < offset; ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

const Json& field(const Json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(where + ": missing field \"" + key + "\"");
  return *it;
}

double as_rate(const Json& v, const std::string& where) {
  if (!v.is_number()) throw SchemaError(where + ": expected a number");
  return v.get<double>();
}

std::size_t as_index(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw SchemaError(where + ": expected an integer");
  if (v.is_number_unsigned()) return v.get<std::size_t>();
  const auto value = v.get<std::int64_t>();
  if (value < 0) throw SchemaError(where + ": expected a nonnegative integer");
  return static_cast<std::size_t>(value);
}

} // namespace

GossipNetwork parse_graph(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // byte is 1-based and points just past the offending character.
    const auto offset = e.byte == 0 ? 0 : e.byte - 1;
    const auto [line, column] = line_and_column(text, offset);
    throw ParseError(e.what(), line, column);
  }

  if (!doc.is_object()) throw SchemaError("graph document must be a JSON object");
  for (const auto& [key, _] : doc.items()) {
    if (key != "n" && key != "lambda_self" && key != "source_rates" && key != "edges") {
      throw SchemaError("unknown field \"" + key + "\"");
    }
  }

  const std::size_t n = as_index(field(doc, "n", "graph"), "n");
  if (n == 0) throw SchemaError("n: must be >= 1");
  const double lambda_self = as_rate(field(doc, "lambda_self", "graph"), "lambda_self");

  const Json& src = field(doc, "source_rates", "graph");
  if (!src.is_array()) throw SchemaError("source_rates: expected an array");
  if (src.size() != n) {
    throw SchemaError("source_rates: expected " + std::to_string(n) + " entries, got " +
                      std::to_string(src.size()));
  }
  std::vector<double> source_rates;
  source_rates.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    source_rates.push_back(as_rate(src[j], "source_rates[" + std::to_string(j) + "]"));
  }

  const Json& edges = field(doc, "edges", "graph");
  if (!edges.is_array()) throw SchemaError("edges: expected an array");
  std::vector<double> peer_rates(n * n, 0.0);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (std::size_t k = 0; k < edges.size(); ++k) {
    const std::string where = "edges[" + std::to_string(k) + "]";
    const Json& e = edges[k];
    if (!e.is_object()) throw SchemaError(where + ": expected an object");
    if (e.size() != 3) throw SchemaError(where + ": expected exactly from, to, rate");
    const std::size_t from = as_index(field(e, "from", where), where + ".from");
    const std::size_t to = as_index(field(e, "to", where), where + ".to");
    const double rate = as_rate(field(e, "rate", where), where + ".rate");
    if (from < 1 || from > n) throw SchemaError(where + ".from: node outside 1.." + std::to_string(n));
    if (to < 1 || to > n) throw SchemaError(where + ".to: node outside 1.." + std::to_string(n));
    if (from == to) {
      throw InvariantViolation(where + ": self-loop at node " + std::to_string(from));
    }
    if (!seen.emplace(from, to).second) {
      throw SchemaError(where + ": duplicate edge (" + std::to_string(from) + "," +
                        std::to_string(to) + ")");
    }
    peer_rates[(from - 1) * n + (to - 1)] = rate;
  }

  GossipNetwork net(n, lambda_self, std::move(source_rates), std::move(peer_rates));
  require_valid(net);
  return net;
}

std::string serialize_graph(const GossipNetwork& net) {
  Json doc;
  doc["n"] = net.n();
  doc["lambda_self"] = net.lambda_self();
  doc["source_rates"] = Json::array();
  for (double r : net.source_rates()) doc["source_rates"].push_back(r);
  Json edges = Json::array();
  for (std::size_t i = 1; i <= net.n(); ++i) {
    for (std::size_t j = 1; j <= net.n(); ++j) {
      const double r = net.peer_rate(i, j);
      if (r == 0.0) continue;
      Json e;
      e["from"] = i;
      e["to"] = j;
      e["rate"] = r;
      edges.push_back(std::move(e));
    }
  }
  doc["edges"] = std::move(edges);
  return doc.dump() + "\n";
}

GossipNetwork load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open graph file " + path.string());
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("failed reading graph file " + path.string());
  return parse_graph(text);
}

void save_graph(const GossipNetwork& net, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << serialize_graph(net);
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

} // namespace gossip_age
