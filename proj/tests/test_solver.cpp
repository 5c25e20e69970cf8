#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "gossip_age/errors.hpp"
#include "gossip_age/network.hpp"
#include "gossip_age/solver.hpp"
#include "support/dense_oracle.hpp"
#include "support/fixtures.hpp"

using namespace gossip_age;
using namespace gossip_age::testing;

namespace {

NodeSet S3(std::initializer_list<NodeIndex> m) { return NodeSet(3, m); }

} // namespace

TEST_CASE("source_rate_into") {
  const auto complete = build_complete(6, 1.0, 1.0);
  CHECK(source_rate_into(complete, NodeSet(6, {1, 2})) == doctest::Approx(2.0 / 6.0));
  CHECK(source_rate_into(complete, NodeSet::full(6)) == doctest::Approx(1.0));
  CHECK(source_rate_into(toy_network(), S3({2})) == 0.0);
  CHECK_THROWS_AS(source_rate_into(toy_network(), NodeSet(3)), InvalidArgument);
  CHECK_THROWS_AS(source_rate_into(toy_network(), NodeSet(4, {1})), InvalidArgument);
}

TEST_CASE("neighbor_rate") {
  const auto complete = build_complete(6, 1.0, 1.0);
  CHECK(neighbor_rate(complete, 5, NodeSet(6, {1, 2})) == doctest::Approx(2.0 / 5.0));
  CHECK(neighbor_rate(complete, 1, NodeSet(6, {1, 2})) == 0.0);
  CHECK(neighbor_rate(toy_network(), 1, S3({2, 3})) == 2.0);
  CHECK_THROWS_AS(neighbor_rate(toy_network(), 0, S3({2})), InvalidArgument);
  CHECK_THROWS_AS(neighbor_rate(toy_network(), 4, S3({2})), InvalidArgument);
}

TEST_CASE("neighbor_set") {
  CHECK(neighbor_set(toy_network(), S3({2})) == std::vector<NodeIndex>{1, 3});
  CHECK(neighbor_set(toy_network(), NodeSet::full(3)).empty());
  CHECK(neighbor_set(build_complete(6, 1.0, 1.0), NodeSet(6, {2, 5})) ==
        std::vector<NodeIndex>{1, 3, 4, 6});
}

TEST_CASE("neighbor_rates agrees bit for bit with neighbor_rate") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    const auto net = random_network(rng, {2, 6});
    NodeSet s(net.n());
    for (std::size_t i = 1; i <= net.n(); ++i) {
      if (rng() & 1U) s.insert(i);
    }
    if (s.empty()) s.insert(1);
    for (const auto& [i, r] : neighbor_rates(net, s)) CHECK(r == neighbor_rate(net, i, s));
  }
}

TEST_CASE("toy network with unit rates") {
  const auto net = toy_network();
  const auto sol = solve_age(net, S3({2}));
  CHECK(sol.age() == doctest::Approx(29.0 / 24.0).epsilon(1e-12));
  CHECK(sol.at(S3({1, 2})) == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(sol.at(S3({2, 3})) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(sol.at(S3({1, 2, 3})) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(sol.visited_count == 4);
  CHECK(sol.ages.size() == 4);
}

TEST_CASE("toy network matches its hand-derived closed form") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> rate(0.05, 5.0);
  for (int k = 0; k < 100; ++k) {
    const ToyRates r{rate(rng), rate(rng), rate(rng), rate(rng), rate(rng), rate(rng)};
    const double got = solve_age(toy_network(r), S3({2})).age();
    CHECK(std::abs(got - toy_node2_closed_form(r)) <= 1e-9 * std::max(1.0, got));
  }
}

TEST_CASE("full set is lambda_self over total source rate") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 30; ++k) {
    const auto net = random_network(rng, {1, 6});
    double r = 0.0;
    for (double x : net.source_rates()) r += x;
    const auto sol = solve_age(net, NodeSet::full(net.n()));
    CHECK(sol.age() == doctest::Approx(net.lambda_self() / r).epsilon(1e-12));
    CHECK(sol.visited_count == 1);
  }
}

TEST_CASE("single node base case") {
  const GossipNetwork net(1, 2.0, {4.0}, {0.0});
  CHECK(solve_age(net, NodeSet(1, {1})).age() == 0.5);
}

TEST_CASE("unreachable observers have infinite age") {
  SUBCASE("node with no incoming edges") {
    // Node 1 hears from nobody; node 2 is fed by the source.
    const GossipNetwork net(2, 1.0, {0.0, 1.0}, {0.0, 0.0, 0.0, 0.0});
    const auto sol = solve_age(net, NodeSet(2, {1}));
    CHECK(std::isinf(sol.age()));
    CHECK(sol.visited_count == 1);
  }
  SUBCASE("infinity flows down from an unreachable superset") {
    // 1 <- 2 only, and the source feeds nobody: every set is unreachable.
    const GossipNetwork net(2, 1.0, {0.0, 0.0}, {0.0, 0.0, 1.0, 0.0});
    const auto sol = solve_age(net, NodeSet(2, {1}));
    CHECK(std::isinf(sol.at(NodeSet::full(2))));
    CHECK(std::isinf(sol.age()));
  }
  SUBCASE("a fed superset keeps the subset finite") {
    const GossipNetwork net(2, 1.0, {0.0, 2.0}, {0.0, 0.0, 1.0, 0.0});
    const auto sol = solve_age(net, NodeSet(2, {1}));
    // {1,2}: 1/2, {1}: (1 + 1 * 1/2) / 1
    CHECK(sol.age() == doctest::Approx(1.5));
  }
}

TEST_CASE("subset cap") {
  const auto net = build_complete(8, 1.0, 1.0);
  CHECK(solve_age(net, NodeSet(8, {1})).visited_count == 128); // all supersets of {1}
  try {
    solve_age(net, NodeSet(8, {1}), SolverOptions{50});
    FAIL("expected ResourceLimit");
  } catch (const ResourceLimit& e) {
    CHECK(e.cap() == 50);
    CHECK(e.expanded() == 50);
  }
}

TEST_CASE("invalid input") {
  CHECK_THROWS_AS(solve_age(toy_network(), NodeSet(3)), InvalidArgument);
  const GossipNetwork bad(2, 1.0, {1.0, -1.0}, {0, 0, 0, 0});
  CHECK_THROWS_AS(solve_age(bad, NodeSet(2, {1})), InvariantViolation);
}

TEST_CASE("sparse graphs expand only reachable supersets") {
  // Directed path source -> 1 -> 2 -> ... -> 10.
  const std::size_t n = 10;
  std::vector<double> source(n, 0.0);
  source[0] = 1.0;
  std::vector<double> peer(n * n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) peer[i * n + i + 1] = 1.0;
  const GossipNetwork net(n, 1.0, source, peer);
  const auto sol = solve_age(net, NodeSet(n, {n}));
  CHECK(sol.visited_count == n); // {10}, {9,10}, ..., {1..10}
  // Each hop adds one expected version of lag.
  CHECK(sol.age() == doctest::Approx(static_cast<double>(n)));
}

TEST_CASE("ode_residual") {
  const auto net = toy_network();
  auto sol = solve_age(net, S3({2}));
  for (const auto& [s, v] : sol.ages) CHECK(std::abs(ode_residual(net, sol, s)) <= 1e-9);
  CHECK(ode_residual(net, sol, NodeSet::full(3)) == doctest::Approx(0.0));

  sol.ages[S3({2})] += 0.1;
  CHECK(ode_residual(net, sol, S3({2})) == doctest::Approx(-0.2).epsilon(1e-12));

  CHECK_THROWS_AS(ode_residual(net, sol, S3({1})), InvalidArgument);

  const GossipNetwork dead(2, 1.0, {0.0, 1.0}, {0.0, 0.0, 0.0, 0.0});
  const auto inf_sol = solve_age(dead, NodeSet(2, {1}));
  CHECK_THROWS_AS(ode_residual(dead, inf_sol, NodeSet(2, {1})), NotApplicable);
}

TEST_CASE("agrees with the dense linear system on random networks") {
  std::mt19937_64 rng(2024);
  for (int k = 0; k < 100; ++k) {
    const auto net = random_network(rng, {1, 5});
    const auto dense = dense_subset_ages(net);
    const std::uint64_t q = 1 + rng() % ((std::uint64_t{1} << net.n()) - 1);
    const auto sol = solve_age(net, set_of(net.n(), q));
    for (const auto& [s, v] : sol.ages) {
      const double expect = dense[mask_of(s)];
      CHECK(std::abs(v - expect) <= 1e-9 * std::max(1.0, expect));
    }
  }
}

TEST_CASE("properties on random networks") {
  std::mt19937_64 rng(77);
  for (int k = 0; k < 60; ++k) {
    const auto net = random_network(rng, {1, 6});
    const NodeSet one(net.n(), {1 + rng() % net.n()});
    const auto sol = solve_age(net, one);

    // Larger observer sets are younger.
    for (const auto& [s, v] : sol.ages) {
      for (const auto& [t, w] : sol.ages) {
        if (s.is_subset_of(t)) CHECK(w <= v + 1e-9);
      }
    }

    // Lower bound from dropping the superset terms.
    for (const auto& [s, v] : sol.ages) {
      double inflow = source_rate_into(net, s);
      for (const auto& [i, r] : neighbor_rates(net, s)) inflow += r;
      CHECK(v >= net.lambda_self() / inflow * (1.0 - 1e-12));
    }

    // Joint scaling of all rates leaves every age unchanged.
    const auto big = solve_age(scaled(net, 3.7), one);
    for (const auto& [s, v] : sol.ages) CHECK(big.at(s) == doctest::Approx(v).epsilon(1e-9));

    // Age is proportional to lambda_self.
    const auto twice = solve_age(with_lambda_self(net, 2.0 * net.lambda_self()), one);
    for (const auto& [s, v] : sol.ages) {
      CHECK(twice.at(s) == doctest::Approx(2.0 * v).epsilon(1e-9));
    }
  }
}

TEST_CASE("limiting cases of the toy network") {
  SUBCASE("very fast 1->2 link merges nodes 1 and 2") {
    ToyRates r;
    r.r12 = 1e6;
    const auto sol = solve_age(toy_network(r), S3({2}));
    CHECK(std::abs(sol.age() - sol.at(S3({1, 2}))) <= 1e-4);
  }
  SUBCASE("no 1->2 link leaves a single path through node 3") {
    ToyRates r;
    r.r12 = 0.0;
    const auto sol = solve_age(toy_network(r), S3({2}));
    CHECK(std::abs(sol.age() - (r.self / r.r32 + sol.at(S3({2, 3})))) <= 1e-9);
    CHECK(sol.at(S3({2, 3})) ==
          doctest::Approx((r.self + r.r13 * sol.at(NodeSet::full(3))) / (r.s3 + r.r13)));
  }
}

TEST_CASE("solve is deterministic") {
  const auto net = build_complete(7, 1.0, 1.0);
  const auto a = solve_age(net, NodeSet(7, {3}));
  const auto b = solve_age(net, NodeSet(7, {3}));
  CHECK(a.visited_count == b.visited_count);
  for (const auto& [s, v] : a.ages) CHECK(b.at(s) == v);
}
