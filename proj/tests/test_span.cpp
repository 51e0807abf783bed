#include <doctest.h>

#include <map>
#include <random>

#include "oracles.hpp"
#include "vcsp/normal.hpp"
#include "vcsp/span.hpp"

using vcsp::Error;
using vcsp::ErrorCode;
using vcsp::SideConstraint;
using vcsp::SimpleInstance;
using vcsp::SpanMinProblem;
using vcsp::Value;
using vcsp::VcspInstance;

namespace {

std::mt19937_64 rng_for(const char* tag) {
  std::seed_seq seq(tag, tag + std::char_traits<char>::length(tag));
  return std::mt19937_64(seq);
}

SimpleInstance random_simple(std::mt19937_64& rng, int n, double density, int wmax) {
  auto weight = [&]() -> Value {
    Value w = 1 + static_cast<Value>(rng() % static_cast<std::uint64_t>(wmax));
    return (rng() % 2) ? w : -w;
  };
  std::map<int, Value> unary;
  std::map<std::pair<int, int>, Value> binary;
  for (int i = 1; i <= n; ++i)
    if (rng() % 2) unary[i] = weight();
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if ((rng() % 1000) < static_cast<std::uint64_t>(density * 1000)) binary[{i, j}] = weight();
  return SimpleInstance(n, 0, std::move(unary), std::move(binary));
}

bool satisfies(const SpanMinProblem& problem, const std::vector<Value>& values) {
  for (const SideConstraint& c : problem.constraints) {
    Value left = c.offset, right = 0;
    for (int v : c.left) left += values[static_cast<std::size_t>(v)];
    for (int v : c.right) right += values[static_cast<std::size_t>(v)];
    if (c.eq ? (left != right) : (left > right)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("span sums the spread of every table") {
  const VcspInstance x(3, {2, 3, 2},
                       {{{}, {7}},
                        {{1}, {-2, 3}},
                        {{2}, {0, 4, 1}},
                        {{1, 3}, {0, 0, 5, -5}}});
  CHECK(vcsp::span(x) == oracle::span(x));
  CHECK(vcsp::span(x) == 0 + 5 + 4 + 10);
  CHECK(vcsp::span_arity(x, 0) == 0);
  CHECK(vcsp::span_arity(x, 1) == 9);
  CHECK(vcsp::span_arity(x, 2) == 10);
}

TEST_CASE("side constraints are derived from weight-sum signs") {
  // c1 = 1, c12 = -2: the empty set forces p1 >= 1, the full set forces
  // 1 + p1 <= p12.
  const SimpleInstance s(2, 0, {{1, 1}, {2, 1}}, {{{1, 2}, -2}});
  const SpanMinProblem problem = vcsp::build_span_min_problem(s);
  REQUIRE(problem.vars.size() == 3);
  CHECK(problem.var_index(1) == 0);
  CHECK(problem.var_index(2) == 1);
  CHECK(problem.var_index(1, 2) == 2);
  CHECK(problem.vars[2].binary);
  CHECK(problem.vars[2].weight == -2);
  CHECK(problem.vars[2].name() == "p_{1,2}");
  CHECK(problem.constraints.size() == 4);   // two subsets per variable

  const std::vector<Value> hint = problem.feasible_hint();
  CHECK(hint == std::vector<Value>{1, 1, 2});
  CHECK(satisfies(problem, hint));
  CHECK(!satisfies(problem, {1, 1, 1}));    // 1 + p1 <= p12 fails
}

TEST_CASE("solver finds the parity optimum") {
  const SimpleInstance s(2, 0, {{1, 1}, {2, 1}}, {{{1, 2}, -2}});
  const vcsp::SpanMinSolution sol = vcsp::solve_span_min(vcsp::build_span_min_problem(s));
  CHECK(sol.objective == 4);
  CHECK(sol.values == std::vector<Value>{1, 1, 2});
}

TEST_CASE("solver reports infeasible hand-built systems") {
  SpanMinProblem problem;
  problem.vars.push_back({false, 1, 0, 1});
  SideConstraint impossible;
  impossible.offset = 1;
  impossible.left = {0};
  problem.constraints.push_back(impossible);   // 1 + p <= 0
  try {
    vcsp::solve_span_min(problem);
    FAIL("expected INFEASIBLE");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Infeasible);
  }
}

TEST_CASE("solver optimum is reproducible and never beats feasibility") {
  auto rng = rng_for("span-solver");
  for (int round = 0; round < 40; ++round) {
    const SimpleInstance s = random_simple(rng, 2 + static_cast<int>(rng() % 5), 0.5, 9);
    const SpanMinProblem problem = vcsp::build_span_min_problem(s);
    const vcsp::SpanMinSolution a = vcsp::solve_span_min(problem);
    const vcsp::SpanMinSolution b = vcsp::solve_span_min(problem);
    CHECK(a.values == b.values);
    CHECK(a.objective == b.objective);
    CHECK(satisfies(problem, a.values));
    Value total = 0;
    for (Value v : a.values) total += v;
    CHECK(total == a.objective);
    Value hint_total = 0;
    for (Value v : problem.feasible_hint()) hint_total += v;
    CHECK(a.objective <= hint_total);
  }
}

TEST_CASE("solver optimum is exact on small problems") {
  // Exhaustive check over all magnitude vectors up to the incumbent bound.
  auto rng = rng_for("span-exact");
  for (int round = 0; round < 15; ++round) {
    const SimpleInstance s = random_simple(rng, 2 + static_cast<int>(rng() % 3), 0.7, 4);
    const SpanMinProblem problem = vcsp::build_span_min_problem(s);
    if (problem.vars.size() > 4) continue;
    const vcsp::SpanMinSolution sol = vcsp::solve_span_min(problem);

    Value best = -1;
    const Value cap = sol.objective + 2;
    std::vector<Value> probe(problem.vars.size(), 0);
    const std::size_t m = problem.vars.size();
    std::uint64_t total = 1;
    for (std::size_t k = 0; k < m; ++k) total *= static_cast<std::uint64_t>(cap + 1);
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t rest = code;
      Value sum = 0;
      for (std::size_t k = 0; k < m; ++k) {
        probe[k] = static_cast<Value>(rest % static_cast<std::uint64_t>(cap + 1));
        rest /= static_cast<std::uint64_t>(cap + 1);
        sum += probe[k];
      }
      if (!satisfies(problem, probe)) continue;
      if (best < 0 || sum < best) best = sum;
    }
    CHECK(sol.objective == best);
  }
}

TEST_CASE("degree limit bounds the subset explosion") {
  std::map<std::pair<int, int>, Value> star;
  for (int j = 2; j <= 6; ++j) star[{1, j}] = -1;
  const SimpleInstance s(6, 0, {{1, 1}}, std::move(star));
  CHECK_NOTHROW(vcsp::build_span_min_problem(s, 5));
  try {
    vcsp::build_span_min_problem(s, 4);
    FAIL("expected DEGREE_LIMIT");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegreeLimit);
  }
}

TEST_CASE("full minimisation keeps sign equivalence and shrinks the span") {
  auto rng = rng_for("span-pipeline");
  for (int round = 0; round < 30; ++round) {
    const SimpleInstance s = random_simple(rng, 2 + static_cast<int>(rng() % 6), 0.5, 30);
    const VcspInstance x = s.to_vcsp();
    const vcsp::MinimizeSpanResult r = vcsp::minimize_span(x);
    CHECK(r.original_span == vcsp::span(x));
    CHECK(r.trimmed_span <= r.original_span);
    CHECK(r.minimized_span <= r.trimmed_span);
    CHECK(r.minimized.span_total() == r.minimized_span);
    CHECK(vcsp::sign_equivalent(x, r.minimized.to_vcsp()).equal);
    // Signs of surviving weights match the trimmed instance.
    for (auto [i, w] : r.minimized.unary())
      CHECK((w > 0) == (r.trimmed.unary_weight(i) > 0));
    for (auto [ij, w] : r.minimized.binary())
      CHECK((w > 0) == (r.trimmed.binary_weight(ij.first, ij.second) > 0));
  }
}

TEST_CASE("steep unary ladders flatten to unit weights") {
  for (int n = 1; n <= 10; ++n) {
    std::map<int, Value> unary;
    for (int i = 1; i <= n; ++i) unary[i] = (i % 2 ? 1 : -1) * (Value{1} << i);
    const SimpleInstance s(n, 0, std::move(unary), {});
    const vcsp::MinimizeSpanResult r = vcsp::minimize_span(s.to_vcsp());
    CHECK(r.minimized_span == n);
  }
}

TEST_CASE("parity minimisation cannot beat four") {
  const SimpleInstance s(2, 0, {{1, 1}, {2, 1}}, {{{1, 2}, -2}});
  const vcsp::MinimizeSpanResult r = vcsp::minimize_span(s.to_vcsp());
  CHECK(r.minimized_span == 4);
  CHECK(r.trimmed == s);
}
