#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gossip_age/errors.hpp"
#include "gossip_age/graph_io.hpp"
#include "gossip_age/network.hpp"
#include "gossip_age/simulator.hpp"
#include "gossip_age/solver.hpp"

namespace gossip_age::cli {

namespace {

using Json = nlohmann::ordered_json;

// Graph file could not be read or is invalid.
class GraphError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::size_t parse_count(std::string_view text, std::string_view what) {
  std::size_t value = 0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw UsageError("invalid " + std::string(what) + " \"" + std::string(text) + "\"");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

Json age_json(double age) { return std::isinf(age) ? Json("inf") : Json(age); }

Json set_json(const NodeSet& s) {
  Json arr = Json::array();
  for (NodeIndex i : s.members()) arr.push_back(i);
  return arr;
}

GossipNetwork read_graph(const std::string& path) {
  try {
    return load_graph(path);
  } catch (const Error& e) {
    throw GraphError(e.what());
  }
}

NodeSet parse_set_for(const GossipNetwork& net, const std::string& text) {
  const auto members = parse_node_list(text);
  for (NodeIndex i : members) {
    if (i < 1 || i > net.n()) {
      throw UsageError("node " + std::to_string(i) + " in --set is outside 1.." +
                       std::to_string(net.n()));
    }
  }
  return NodeSet(net.n(), members);
}

Topology topology_from(const std::string& name) {
  auto t = parse_topology(name);
  if (!t) throw UsageError("unknown topology \"" + name + "\" (expected complete or ring)");
  return *t;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open " + path + " for writing");
  file << text;
  file.flush();
  if (!file) throw IoError("failed writing " + path);
}

} // namespace

std::vector<std::size_t> parse_n_values(std::string_view text) {
  std::vector<std::size_t> values;
  if (text.find(':') != std::string_view::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw UsageError("range must be start:stop:step");
    const std::size_t start = parse_count(parts[0], "range start");
    const std::size_t stop = parse_count(parts[1], "range stop");
    const std::size_t step = parse_count(parts[2], "range step");
    if (step == 0) throw UsageError("range step must be positive");
    for (std::size_t n = start; n <= stop; n += step) values.push_back(n);
  } else {
    for (auto part : split(text, ',')) values.push_back(parse_count(part, "n value"));
  }
  if (values.empty()) throw UsageError("no n values in \"" + std::string(text) + "\"");
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (values[k] == 0) throw UsageError("n values must be positive");
    if (k > 0 && values[k] <= values[k - 1]) {
      throw UsageError("n values must be strictly increasing");
    }
  }
  return values;
}

std::vector<NodeIndex> parse_node_list(std::string_view text) {
  if (text.empty()) throw UsageError("node list is empty");
  std::vector<NodeIndex> out;
  for (auto part : split(text, ',')) out.push_back(parse_count(part, "node"));
  return out;
}

std::string format_number(double value) {
  if (std::isinf(value)) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

std::string sweep_csv(const SweepSpec& spec) {
  if (spec.n_values.empty()) throw UsageError("sweep needs at least one n value");
  if (spec.topology == Topology::ring &&
      std::any_of(spec.n_values.begin(), spec.n_values.end(), [](auto n) { return n < 3; })) {
    throw UsageError("ring requires n >= 3");
  }
  std::ostringstream csv;
  csv << "topology,n,lambda_self,lambda,age,lower_bound,upper_bound,sqrt_ratio\n";
  for (std::size_t n : spec.n_values) {
    csv << to_string(spec.topology) << ',' << n << ',' << format_number(spec.lambda_self) << ','
        << format_number(spec.lambda) << ',';
    if (spec.topology == Topology::complete) {
      const auto profile = complete_age_profile(n, spec.lambda_self, spec.lambda);
      const auto bounds = complete_bounds(n, spec.lambda_self, spec.lambda);
      csv << format_number(profile.node_age()) << ',' << format_number(bounds.lower) << ','
          << format_number(bounds.upper) << ",\n";
    } else {
      const auto profile = ring_age_profile(n, spec.lambda_self, spec.lambda);
      const double age = profile.node_age();
      csv << format_number(age) << ",,,"
          << format_number(age / std::sqrt(static_cast<double>(n))) << '\n';
    }
  }
  return csv.str();
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Version age of information in gossip networks", "gossip-age"};
  app.require_subcommand(1);

  std::string topology = "complete";
  std::size_t n = 0;
  std::string n_text;
  double lambda = 1.0;
  double lambda_self = 1.0;
  std::string output;
  std::string graph_path;
  std::string set_text;
  std::size_t cap = kDefaultSubsetCap;
  double horizon = 1e5;
  std::optional<double> warmup;
  std::uint64_t seed = 0;
  std::size_t reps = 1;

  auto* gen = app.add_subcommand("generate", "Write a complete or ring graph file");
  gen->add_option("--topology", topology, "complete | ring")->required();
  gen->add_option("--n", n, "number of gossip nodes")->required();
  gen->add_option("--lambda", lambda, "total gossip rate per node");
  gen->add_option("--lambda-self", lambda_self, "source version rate");
  gen->add_option("-o,--output", output, "graph file to write")->required();

  auto* solve = app.add_subcommand("solve", "Exact limiting average age of a node set");
  solve->add_option("--graph", graph_path, "graph file")->required();
  solve->add_option("--set", set_text, "comma-separated nodes, e.g. 1,2")->required();
  solve->add_option("--cap", cap, "maximum number of subsets to expand");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo estimate of average ages");
  sim->add_option("--graph", graph_path, "graph file")->required();
  sim->add_option("--set", set_text, "node set to track (default: every single node)");
  sim->add_option("--horizon", horizon, "simulated time per run");
  sim->add_option("--warmup", warmup, "initial time excluded from averages (default horizon/100)");
  sim->add_option("--seed", seed, "seed of the first run");
  sim->add_option("--reps", reps, "independent runs with consecutive seeds");

  auto* sweep = app.add_subcommand("sweep", "CSV of per-node age across network sizes");
  sweep->add_option("--topology", topology, "complete | ring");
  sweep->add_option("--n", n_text, "start:stop:step or a comma list")->required();
  sweep->add_option("--lambda", lambda, "total gossip rate per node");
  sweep->add_option("--lambda-self", lambda_self, "source version rate");
  sweep->add_option("-o,--output", output, "CSV file (default: stdout)");

  auto* bounds = app.add_subcommand("bounds", "Complete-graph age with its harmonic bounds");
  bounds->add_option("--n", n, "number of gossip nodes")->required();
  bounds->add_option("--lambda", lambda, "total gossip rate per node");
  bounds->add_option("--lambda-self", lambda_self, "source version rate");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (gen->parsed()) {
      const Topology t = topology_from(topology);
      const GossipNetwork net = t == Topology::complete ? build_complete(n, lambda_self, lambda)
                                                        : build_ring(n, lambda_self, lambda);
      save_graph(net, output);
      out << "wrote " << output << " (" << net.edge_count() << " edges)\n";
    } else if (solve->parsed()) {
      const GossipNetwork net = read_graph(graph_path);
      const NodeSet s = parse_set_for(net, set_text);
      const AgeSolution sol = solve_age(net, s, SolverOptions{cap});
      Json report;
      report["set"] = set_json(s);
      report["age"] = age_json(sol.age());
      report["subsets_visited"] = sol.visited_count;
      out << report.dump() << '\n';
    } else if (sim->parsed()) {
      const GossipNetwork net = read_graph(graph_path);
      SimConfig cfg;
      cfg.horizon = horizon;
      cfg.warmup = warmup.value_or(horizon / 100.0);
      cfg.seed = seed;
      if (!set_text.empty()) cfg.targets.push_back(parse_set_for(net, set_text));
      if (reps == 0) throw UsageError("--reps must be >= 1");
      const Replication rep = replicate(net, cfg, reps);
      Json report;
      report["seed"] = seed;
      report["reps"] = reps;
      report["horizon"] = cfg.horizon;
      report["warmup"] = cfg.warmup;
      Json targets = Json::array();
      for (std::size_t t = 0; t < rep.pooled.size(); ++t) {
        Json entry;
        entry["set"] = set_json(rep.pooled[t].target);
        entry["mean"] = rep.pooled[t].mean;
        entry["stderr"] = rep.pooled[t].std_error;
        Json per_rep = Json::array();
        for (const auto& run : rep.runs) per_rep.push_back(run.targets[t].mean);
        entry["rep_means"] = std::move(per_rep);
        targets.push_back(std::move(entry));
      }
      report["targets"] = std::move(targets);
      Json events = Json::array();
      for (const auto& run : rep.runs) events.push_back(run.event_count);
      report["event_counts"] = std::move(events);
      out << report.dump() << '\n';
    } else if (sweep->parsed()) {
      SweepSpec spec;
      spec.topology = topology_from(topology);
      spec.n_values = parse_n_values(n_text);
      spec.lambda_self = lambda_self;
      spec.lambda = lambda;
      const std::string csv = sweep_csv(spec);
      if (output.empty()) {
        out << csv;
      } else {
        write_text(output, csv);
        out << "wrote " << output << " (" << spec.n_values.size() << " rows)\n";
      }
    } else if (bounds->parsed()) {
      const auto profile = complete_age_profile(n, lambda_self, lambda);
      const auto b = complete_bounds(n, lambda_self, lambda);
      const double age = profile.node_age();
      constexpr double slack = 1e-12;
      Json report;
      report["n"] = n;
      report["age"] = age;
      report["lower"] = b.lower;
      report["upper"] = b.upper;
      report["sandwich_ok"] = b.lower <= age * (1.0 + slack) && age <= b.upper * (1.0 + slack);
      out << report.dump() << '\n';
    }
  } catch (const GraphError& e) {
    err << "error: invalid graph: " << e.what() << '\n';
    return kInvalidGraph;
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what()
        << "; for complete or ring topologies use `sweep`, which needs no subset expansion\n";
    return kResourceLimit;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kSuccess;
}

} // namespace gossip_age::cli
