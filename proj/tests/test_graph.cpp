#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "vcsp/gen.hpp"
#include "vcsp/graph.hpp"

using vcsp::Assignment;
using vcsp::AssignmentCode;
using vcsp::Constraint;
using vcsp::Error;
using vcsp::ErrorCode;
using vcsp::FitnessGraph;
using vcsp::Value;
using vcsp::VcspInstance;

namespace {

VcspInstance random_boolean(std::mt19937_64& rng, int n, double density, int wmax) {
  std::vector<Constraint> cons;
  auto weight = [&] {
    return static_cast<Value>(rng() % static_cast<std::uint64_t>(2 * wmax + 1)) - wmax;
  };
  for (int i = 1; i <= n; ++i)
    if (rng() % 2) cons.push_back({{i}, {weight(), weight()}});
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      if ((rng() % 1000) >= static_cast<std::uint64_t>(density * 1000)) continue;
      cons.push_back({{i, j}, {weight(), weight(), weight(), weight()}});
    }
  return VcspInstance(n, std::vector<int>(static_cast<std::size_t>(n), 2), std::move(cons));
}

VcspInstance random_mixed(std::mt19937_64& rng, int n) {
  std::vector<int> domains;
  for (int i = 0; i < n; ++i) domains.push_back(2 + static_cast<int>(rng() % 2));
  std::vector<Constraint> cons;
  for (int i = 1; i <= n; ++i) {
    std::vector<Value> t(static_cast<std::size_t>(domains[static_cast<std::size_t>(i - 1)]));
    for (Value& v : t) v = static_cast<Value>(rng() % 9) - 4;
    cons.push_back({{i}, std::move(t)});
  }
  for (int i = 1; i < n; ++i) {
    std::vector<Value> t(static_cast<std::size_t>(domains[static_cast<std::size_t>(i - 1)] *
                                                  domains[static_cast<std::size_t>(i)]));
    for (Value& v : t) v = static_cast<Value>(rng() % 9) - 4;
    cons.push_back({{i, i + 1}, std::move(t)});
  }
  return VcspInstance(n, std::move(domains), std::move(cons));
}

std::mt19937_64 rng_for(const char* tag) {
  std::seed_seq seq(tag, tag + std::char_traits<char>::length(tag));
  return std::mt19937_64(seq);
}

}  // namespace

TEST_CASE("assignment codes are lexicographic with variable 1 most significant") {
  const VcspInstance x(3, {2, 3, 2}, {});
  CHECK(vcsp::assignment_code(x, Assignment{{0, 0, 0}}) == 0);
  CHECK(vcsp::assignment_code(x, Assignment{{0, 0, 1}}) == 1);
  CHECK(vcsp::assignment_code(x, Assignment{{0, 1, 0}}) == 2);
  CHECK(vcsp::assignment_code(x, Assignment{{1, 0, 0}}) == 6);
  CHECK(vcsp::assignment_code(x, Assignment{{1, 2, 1}}) == 11);
  for (AssignmentCode code = 0; code < 12; ++code)
    CHECK(vcsp::assignment_code(x, vcsp::code_assignment(x, code)) == code);

  const std::vector<Assignment> states = oracle::all_assignments(x);
  for (std::size_t k = 0; k < states.size(); ++k)
    CHECK(vcsp::code_assignment(x, k) == states[k]);
}

TEST_CASE("fitness table matches the reference evaluator") {
  auto rng = rng_for("graph-fitness");
  for (int round = 0; round < 30; ++round) {
    const VcspInstance x = random_mixed(rng, 2 + static_cast<int>(rng() % 5));
    const std::vector<Value> table = vcsp::fitness_table(x);
    const std::vector<Assignment> states = oracle::all_assignments(x);
    REQUIRE(table.size() == states.size());
    for (std::size_t k = 0; k < states.size(); ++k)
      CHECK(table[k] == oracle::evaluate(x, states[k]));
  }
}

TEST_CASE("fitness graph edges are exactly the improving flips") {
  auto rng = rng_for("graph-edges");
  for (int round = 0; round < 25; ++round) {
    const VcspInstance x = round % 2 == 0
                               ? random_boolean(rng, 2 + static_cast<int>(rng() % 6), 0.5, 6)
                               : random_mixed(rng, 2 + static_cast<int>(rng() % 4));
    const FitnessGraph g = FitnessGraph::build(x);
    const oracle::Graph ref = oracle::build_graph(x);
    REQUIRE(g.vertex_count() == ref.states.size());

    std::uint64_t edges = 0;
    for (std::size_t v = 0; v < ref.states.size(); ++v) {
      std::set<std::size_t> expect(ref.next[v].begin(), ref.next[v].end());
      CHECK(g.out_degree(v) == expect.size());
      for (std::uint32_t w : g.out_neighbours(v)) CHECK(expect.count(w) == 1);
      for (std::size_t w = 0; w < ref.states.size(); ++w)
        CHECK(g.has_edge(v, w) == (expect.count(w) == 1));
      edges += expect.size();
    }
    CHECK(g.edge_count() == edges);
  }
}

TEST_CASE("local optima are the sink vertices") {
  auto rng = rng_for("graph-optima");
  for (int round = 0; round < 20; ++round) {
    const VcspInstance x = random_boolean(rng, 2 + static_cast<int>(rng() % 6), 0.4, 5);
    const FitnessGraph g = FitnessGraph::build(x);
    const oracle::Graph ref = oracle::build_graph(x);
    std::vector<AssignmentCode> expect;
    for (std::size_t v = 0; v < ref.states.size(); ++v)
      if (ref.next[v].empty()) expect.push_back(v);
    CHECK(g.local_optima() == expect);
  }
}

TEST_CASE("longest improving path matches depth-first search") {
  auto rng = rng_for("graph-longest");
  for (int round = 0; round < 40; ++round) {
    const VcspInstance x = round % 2 == 0
                               ? random_boolean(rng, 2 + static_cast<int>(rng() % 7), 0.5, 5)
                               : random_mixed(rng, 2 + static_cast<int>(rng() % 4));
    const FitnessGraph g = FitnessGraph::build(x);
    const auto longest = g.longest_improving_path();
    CHECK(longest.length == oracle::longest_path(x));

    // The witness must be a genuine improving path of the claimed length.
    REQUIRE(longest.witness.size() == longest.length + 1);
    for (std::size_t k = 0; k + 1 < longest.witness.size(); ++k) {
      const Assignment a = vcsp::code_assignment(x, longest.witness[k]);
      const Assignment b = vcsp::code_assignment(x, longest.witness[k + 1]);
      int changed = 0;
      for (int var = 1; var <= x.n(); ++var)
        if (a[var] != b[var]) ++changed;
      CHECK(changed == 1);
      CHECK(g.fitness(longest.witness[k + 1]) > g.fitness(longest.witness[k]));
    }
  }
}

TEST_CASE("longest path of a flat landscape is a single vertex") {
  const VcspInstance x(3, {2, 2, 2}, {});
  const auto longest = FitnessGraph::build(x).longest_improving_path();
  CHECK(longest.length == 0);
  CHECK(longest.witness == std::vector<AssignmentCode>{0});
}

TEST_CASE("longest path ties break toward the smallest code") {
  // Two independent coordinates with the same slope: any single flip is one
  // step, the double flip is two.  The unique best start is 00.
  const VcspInstance x(2, {2, 2}, {{{1}, {0, 1}}, {{2}, {0, 1}}});
  const auto longest = FitnessGraph::build(x).longest_improving_path();
  CHECK(longest.length == 2);
  // From 00 both orders reach 11; the smallest-code second vertex is 01.
  CHECK(longest.witness == std::vector<AssignmentCode>{0, 1, 3});
}

TEST_CASE("fitness table enforces the vertex budget") {
  const VcspInstance x(3, {2, 2, 2}, {});
  CHECK_NOTHROW(vcsp::fitness_table(x, 8));
  try {
    vcsp::fitness_table(x, 7);
    FAIL("expected SIZE_LIMIT");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::SizeLimit);
  }
}

TEST_CASE("sign dependence on the parity table") {
  // Table (0 1; 1 0): each variable's preferred value is the other's negation.
  const VcspInstance x(2, {2, 2}, {{{1, 2}, {0, 1, 1, 0}}});
  const vcsp::SignDependence d12 = vcsp::sign_depends(x, 1, 2);
  CHECK(d12.depends);
  REQUIRE(d12.witness.has_value());
  const vcsp::SignDependence d21 = vcsp::sign_depends(x, 2, 1);
  CHECK(d21.depends);
  CHECK(vcsp::sign_interact(x, 1, 2));
  CHECK(vcsp::sign_interact(x, 2, 1));
}

TEST_CASE("independent variables never sign-interact") {
  const VcspInstance x(3, {2, 2, 2},
                       {{{1}, {0, 3}}, {{2}, {0, -2}}, {{1, 3}, {0, 0, 0, 1}}});
  CHECK(!vcsp::sign_interact(x, 1, 2));
  CHECK(!vcsp::sign_depends(x, 2, 1).depends);
  CHECK(!vcsp::sign_depends(x, 2, 3).depends);
  const std::vector<Value> table = vcsp::fitness_table(x);
  const bool dep13 = vcsp::sign_depends_on_table(table, 3, 1, 3).depends;
  const bool dep31 = vcsp::sign_depends_on_table(table, 3, 3, 1).depends;
  CHECK(vcsp::sign_interact(x, 1, 3) == (dep13 || dep31));
}

TEST_CASE("sign dependence witnesses actually flip the sign") {
  auto rng = rng_for("graph-sign");
  int found = 0;
  for (int round = 0; round < 30; ++round) {
    const VcspInstance x = random_boolean(rng, 2 + static_cast<int>(rng() % 5), 0.6, 4);
    for (int i = 1; i <= x.n(); ++i)
      for (int j = 1; j <= x.n(); ++j) {
        if (i == j) continue;
        const vcsp::SignDependence d = vcsp::sign_depends(x, i, j);
        if (!d.depends) continue;
        ++found;
        REQUIRE(d.witness.has_value());
        const Assignment& a = *d.witness;
        // Improving flip of i at a, no longer improving once j is flipped.
        const Value before = x.flip_delta(a, i, 1 - a[i]);
        const Assignment b = a.with(j, 1 - a[j]);
        const Value after = x.flip_delta(b, i, 1 - b[i]);
        CHECK(before > 0);
        CHECK(after <= 0);
      }
  }
  CHECK(found > 0);
}

TEST_CASE("sign dependence rejects non-Boolean domains") {
  const VcspInstance x(2, {3, 2}, {{{1}, {0, 1, 2}}});
  try {
    vcsp::sign_depends(x, 1, 2);
    FAIL("expected UNSUPPORTED_DOMAIN");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnsupportedDomain);
  }
}

TEST_CASE("quadratic path instances reach the triangular bound") {
  for (int n = 2; n <= 8; ++n) {
    const auto longest = FitnessGraph::build(vcsp::quadratic_path(n)).longest_improving_path();
    CHECK(longest.length == static_cast<std::uint64_t>(n) * (n + 1) / 2);
  }
}
