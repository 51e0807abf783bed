#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "vcsp/dynamics.hpp"
#include "vcsp/gen.hpp"
#include "vcsp/io.hpp"

using vcsp::Assignment;
using vcsp::EncouragementForest;
using vcsp::Error;
using vcsp::ErrorCode;
using vcsp::Flip;
using vcsp::PolicyKind;
using vcsp::SearchPolicy;
using vcsp::Support;
using vcsp::Trace;
using vcsp::Value;
using vcsp::VcspInstance;

namespace {

std::mt19937_64 rng_for(const char* tag) {
  std::seed_seq seq(tag, tag + std::char_traits<char>::length(tag));
  return std::mt19937_64(seq);
}

VcspInstance random_boolean(std::mt19937_64& rng, int n, double density, int wmax) {
  std::vector<vcsp::Constraint> cons;
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

Assignment random_start(std::mt19937_64& rng, const VcspInstance& x) {
  std::vector<int> digits;
  for (int i = 1; i <= x.n(); ++i)
    digits.push_back(static_cast<int>(rng() % static_cast<std::uint64_t>(x.domain(i))));
  return Assignment{digits};
}

Trace reference_walk() {
  SearchPolicy policy;
  policy.kind = PolicyKind::First;
  return vcsp::run_search(vcsp::quadratic_path(4), Assignment{{1, 0, 1, 0}}, policy);
}

Support slow_supports(const Trace& trace, int t_prime, int t) {
  const Flip& earlier = trace.flip(t_prime);
  const Flip& later = trace.flip(t);
  if (earlier.var == later.var) return Support::None;
  const Assignment& x = trace.assignment(t_prime);
  const Value with_c =
      vcsp::gain(trace.instance, x.with(earlier.var, earlier.value), later.var, later.value);
  const Value without_c =
      vcsp::gain(trace.instance, x.with(earlier.var, 1 - earlier.value), later.var, later.value);
  if (!(with_c > 0 && without_c <= 0)) return Support::None;
  return trace.assignment(t)[earlier.var] == earlier.value ? Support::Strong : Support::Weak;
}

}  // namespace

TEST_CASE("flips render and parse") {
  CHECK(vcsp::flip_to_string({1, 0}) == "1↦0");
  CHECK(vcsp::flip_to_string({12, 1}) == "12↦1");
  CHECK(vcsp::flip_from_string("3↦1") == Flip{3, 1});
  CHECK_THROWS_AS(vcsp::flip_from_string("nonsense"), Error);
}

TEST_CASE("policy names round-trip") {
  for (const char* name : {"steepest", "first", "random", "worst"})
    CHECK(std::string(vcsp::policy_name(vcsp::parse_policy(name))) == name);
  try {
    vcsp::parse_policy("fastest");
    FAIL("expected BAD_CONFIG");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadConfig);
  }
}

TEST_CASE("gain compares a variable's two sides") {
  auto rng = rng_for("dyn-gain");
  for (int round = 0; round < 20; ++round) {
    const VcspInstance x = random_boolean(rng, 2 + static_cast<int>(rng() % 5), 0.5, 6);
    for (const Assignment& a : oracle::all_assignments(x))
      for (int i = 1; i <= x.n(); ++i)
        for (int b = 0; b < 2; ++b)
          CHECK(vcsp::gain(x, a, i, b) ==
                x.evaluate(a.with(i, b)) - x.evaluate(a.with(i, 1 - b)));
  }
  const VcspInstance ternary(1, {3}, {{{1}, {0, 1, 2}}});
  CHECK_THROWS_AS(vcsp::gain(ternary, Assignment{{0}}, 1, 1), Error);
}

TEST_CASE("first-improvement walk on the four-variable ladder") {
  const Trace trace = reference_walk();
  REQUIRE(trace.length() == 11);
  CHECK(!trace.hit_step_limit);
  CHECK(!trace.seeded);

  const std::vector<std::string> states = {"1010", "0010", "0110", "1110", "1100", "1000",
                                           "0000", "0001", "0011", "0111", "1111"};
  for (int t = 1; t <= 11; ++t) {
    CHECK(vcsp::format_assignment(trace.instance, trace.assignment(t)) ==
          states[static_cast<std::size_t>(t - 1)]);
    CHECK(trace.fitness_at(t) == t - 1);
  }

  const std::vector<std::string> flips = {"1↦0", "2↦1", "1↦1", "3↦0", "2↦0",
                                          "1↦0", "4↦1", "3↦1", "2↦1", "1↦1"};
  for (int t = 1; t <= 10; ++t)
    CHECK(vcsp::flip_to_string(trace.flip(t)) == flips[static_cast<std::size_t>(t - 1)]);
}

TEST_CASE("the ladder walk's encouragement forest and chains") {
  const Trace trace = reference_walk();
  const EncouragementForest forest = vcsp::encouragement_forest(trace);
  const std::vector<int> parents = {0, 0, 2, 0, 4, 5, 0, 7, 8, 9};
  for (int t = 1; t <= 10; ++t)
    CHECK(forest.parent_of(t) == parents[static_cast<std::size_t>(t - 1)]);

  CHECK(vcsp::forest_chains(trace, forest) ==
        std::vector<std::string>{
            "⊥ ⇐ (1,1↦0)",
            "⊥ ⇐ (2,2↦1) ⇐ (3,1↦1)",
            "⊥ ⇐ (4,3↦0) ⇐ (5,2↦0) ⇐ (6,1↦0)",
            "⊥ ⇐ (7,4↦1) ⇐ (8,3↦1) ⇐ (9,2↦1) ⇐ (10,1↦1)",
        });

  const vcsp::TraceReport report = vcsp::verify_trace_properties(trace, forest);
  CHECK(report.all_pass);
  CHECK(report.checks.size() == 5);
  for (const vcsp::PropertyCheck& check : report.checks) {
    CHECK(check.pass);
    CHECK(check.witness.empty());
  }
}

TEST_CASE("support classification matches its definition") {
  auto rng = rng_for("dyn-support");
  int strong = 0, weak = 0;
  for (int round = 0; round < 60; ++round) {
    const VcspInstance x = random_boolean(rng, 2 + static_cast<int>(rng() % 6), 0.5, 5);
    SearchPolicy policy;
    policy.kind = round % 2 ? PolicyKind::First : PolicyKind::Steepest;
    const Trace trace = vcsp::run_search(x, random_start(rng, x), policy);
    for (int t = 2; t <= trace.length() - 1; ++t)
      for (int t_prime = 1; t_prime < t; ++t_prime) {
        const Support got = vcsp::supports(trace, t_prime, t);
        CHECK(got == slow_supports(trace, t_prime, t));
        if (got == Support::Strong) ++strong;
        if (got == Support::Weak) ++weak;
      }
  }
  CHECK(strong > 0);   // the comparison exercised both outcomes
  CHECK(weak >= 0);
}

TEST_CASE("the forest links each flip to its latest persistent positive influence") {
  auto rng = rng_for("dyn-forest");
  for (int round = 0; round < 40; ++round) {
    const VcspInstance x = random_boolean(rng, 2 + static_cast<int>(rng() % 6), 0.5, 5);
    SearchPolicy policy;
    policy.kind = PolicyKind::First;
    const Trace trace = vcsp::run_search(x, random_start(rng, x), policy);
    const EncouragementForest forest = vcsp::encouragement_forest(trace);
    for (int t = 1; t <= trace.length() - 1; ++t) {
      const Flip& m = trace.flip(t);
      bool helped = false;
      for (int s = 1; s <= t; ++s)
        if (vcsp::gain(x, trace.assignment(s), m.var, m.value) <= 0) helped = true;
      int expect = 0;
      if (helped) {
        for (int t_prime = t - 1; t_prime >= 1 && expect == 0; --t_prime) {
          const Flip& e = trace.flip(t_prime);
          if (e.var == m.var) continue;
          if (trace.assignment(t)[e.var] != e.value) continue;
          const Assignment& at = trace.assignment(t_prime);
          if (vcsp::gain(x, at.with(e.var, e.value), m.var, m.value) >
              vcsp::gain(x, at.with(e.var, 1 - e.value), m.var, m.value))
            expect = t_prime;
        }
        CHECK(expect != 0);   // a helper always exists past the last dip
      }
      CHECK(forest.parent_of(t) == expect);
    }
  }
}

TEST_CASE("a flip whose first helper is later undone still gets a lawful parent") {
  // Path 1-2-3-4.  The walk below flips 2 up (making 3's move gainful for
  // the first time), banks extra gain for 3 through 4, then 1's flip turns
  // 2 around before 3 finally moves.  The only sign-crossing helper of the
  // last flip (step 1) is undone by step 4, so a forest linking flips to
  // crossings alone would leave flip 5 rootless with a non-positive gain
  // inside its interval; the persistent-influence rule links it to step 2.
  const VcspInstance x(4, {2, 2, 2, 2},
                       {{{1}, {0, 6}},
                        {{1, 2}, {0, 3, 0, -2}},
                        {{2, 3}, {0, 0, 0, 9}},
                        {{3}, {0, -1}},
                        {{3, 4}, {0, 0, 0, 2}},
                        {{4}, {0, 1}}});
  Trace trace{x, {}, {}, {{2, 1}, {4, 1}, {1, 1}, {2, 0}, {3, 1}}, false, false, 0};
  const std::vector<std::vector<int>> steps = {{0, 0, 0, 0}, {0, 1, 0, 0}, {0, 1, 0, 1},
                                               {1, 1, 0, 1}, {1, 0, 0, 1}, {1, 0, 1, 1}};
  for (const auto& digits : steps) {
    trace.assignments.push_back(Assignment{digits});
    trace.fitness.push_back(x.evaluate(trace.assignments.back()));
  }
  for (std::size_t t = 1; t < trace.fitness.size(); ++t)
    REQUIRE(trace.fitness[t] > trace.fitness[t - 1]);

  // The last flip's move gains -1, 8, 10, 10, 1 across the five steps: its
  // only crossing helper (step 1) no longer holds its value at step 5.
  CHECK(vcsp::gain(x, trace.assignment(1), 3, 1) == -1);
  CHECK(vcsp::supports(trace, 1, 5) == Support::Weak);
  for (int t_prime = 2; t_prime < 5; ++t_prime)
    CHECK(vcsp::supports(trace, t_prime, 5) == Support::None);

  const EncouragementForest forest = vcsp::encouragement_forest(trace);
  const std::vector<int> parents = {0, 0, 0, 3, 2};
  for (int t = 1; t <= 5; ++t) CHECK(forest.parent_of(t) == parents[static_cast<std::size_t>(t - 1)]);
  const vcsp::TraceReport report = vcsp::verify_trace_properties(trace, forest);
  CHECK(report.all_pass);
}

TEST_CASE("each policy picks the move its name promises") {
  auto rng = rng_for("dyn-policy");
  for (int round = 0; round < 30; ++round) {
    const VcspInstance x = random_boolean(rng, 2 + static_cast<int>(rng() % 5), 0.6, 6);
    const Assignment start = random_start(rng, x);
    for (PolicyKind kind : {PolicyKind::First, PolicyKind::Steepest, PolicyKind::Worst}) {
      SearchPolicy policy;
      policy.kind = kind;
      const Trace trace = vcsp::run_search(x, start, policy);

      // Every step must be the promised pick among improving moves,
      // enumerated by variable and then target value.
      for (int t = 1; t <= trace.length() - 1; ++t) {
        const Assignment& a = trace.assignment(t);
        std::vector<std::pair<Flip, Value>> improving;
        for (int var = 1; var <= x.n(); ++var)
          for (int b = 0; b < 2; ++b) {
            if (b == a[var]) continue;
            const Value delta = x.flip_delta(a, var, b);
            if (delta > 0) improving.emplace_back(Flip{var, b}, delta);
          }
        REQUIRE(!improving.empty());
        std::size_t expect = 0;
        for (std::size_t k = 1; k < improving.size(); ++k) {
          if (kind == PolicyKind::Steepest && improving[k].second > improving[expect].second)
            expect = k;
          if (kind == PolicyKind::Worst && improving[k].second < improving[expect].second)
            expect = k;
        }
        CHECK(trace.flip(t) == improving[expect].first);
      }

      // The walk ends in a local optimum.
      const Assignment& last = trace.assignment(trace.length());
      for (int var = 1; var <= x.n(); ++var)
        for (int b = 0; b < 2; ++b)
          if (b != last[var]) CHECK(x.flip_delta(last, var, b) <= 0);
    }
  }
}

TEST_CASE("ties go to the earliest move in variable order") {
  // Flipping either variable up gains exactly 1; steepest and worst must
  // both take variable 1 first.
  const VcspInstance x(2, {2, 2}, {{{1}, {0, 1}}, {{2}, {0, 1}}});
  for (PolicyKind kind : {PolicyKind::Steepest, PolicyKind::Worst}) {
    SearchPolicy policy;
    policy.kind = kind;
    const Trace trace = vcsp::run_search(x, Assignment{{0, 0}}, policy);
    REQUIRE(trace.length() == 3);
    CHECK(trace.flip(1) == Flip{1, 1});
    CHECK(trace.flip(2) == Flip{2, 1});
  }
}

TEST_CASE("seeded walks are reproducible") {
  auto rng = rng_for("dyn-random");
  const VcspInstance x = random_boolean(rng, 6, 0.6, 5);
  const Assignment start = random_start(rng, x);
  SearchPolicy policy;
  policy.kind = PolicyKind::Random;
  policy.seed = 41;
  const Trace a = vcsp::run_search(x, start, policy);
  const Trace b = vcsp::run_search(x, start, policy);
  CHECK(a.assignments == b.assignments);
  CHECK(a.flips == b.flips);
  CHECK(a.seeded);
  CHECK(a.seed == 41);

  // Same landscape, any seed: still a strictly improving walk to an optimum.
  policy.seed = 42;
  const Trace c = vcsp::run_search(x, start, policy);
  for (int t = 1; t < c.length(); ++t) CHECK(c.fitness_at(t + 1) > c.fitness_at(t));
}

TEST_CASE("the step limit truncates and is flagged") {
  const VcspInstance x = vcsp::quadratic_path(4);
  SearchPolicy policy;
  policy.kind = PolicyKind::First;
  policy.step_limit = 3;
  const Trace trace = vcsp::run_search(x, Assignment{{1, 0, 1, 0}}, policy);
  CHECK(trace.length() == 4);
  CHECK(trace.hit_step_limit);

  policy.step_limit = 0;
  const Trace stuck = vcsp::run_search(x, Assignment{{1, 0, 1, 0}}, policy);
  CHECK(stuck.length() == 1);
  CHECK(stuck.hit_step_limit);

  // A start that is already optimal never trips the limit.
  const Trace done = vcsp::run_search(x, Assignment{{1, 1, 1, 1}}, policy);
  CHECK(done.length() == 1);
  CHECK(!done.hit_step_limit);
}

TEST_CASE("corrupted forests fail the named structural law") {
  const Trace trace = reference_walk();
  const EncouragementForest good = vcsp::encouragement_forest(trace);

  struct Case {
    int at;
    int to;
    const char* check;
  };
  // Each rewiring breaks exactly the listed law on the ladder walk.
  for (const Case& c : {Case{3, 0, "courageous-first-flip"},
                        Case{9, 4, "unique-child-position"},
                        Case{5, 3, "no-position-reversal"},
                        Case{6, 1, "gain-positive-interval"}}) {
    EncouragementForest bad = good;
    bad.parent[static_cast<std::size_t>(c.at)] = c.to;
    const vcsp::TraceReport report = vcsp::verify_trace_properties(trace, bad);
    CHECK(!report.all_pass);
    bool named_failed = false;
    for (const vcsp::PropertyCheck& check : report.checks)
      if (check.name == c.check && !check.pass && !check.witness.empty()) named_failed = true;
    CHECK_MESSAGE(named_failed, c.check);
  }
}

TEST_CASE("traces round-trip through JSONL") {
  auto rng = rng_for("dyn-jsonl");
  for (int round = 0; round < 25; ++round) {
    const VcspInstance x = random_boolean(rng, 2 + static_cast<int>(rng() % 5), 0.5, 5);
    SearchPolicy policy;
    policy.kind = round % 3 == 0 ? PolicyKind::Random : PolicyKind::First;
    policy.seed = rng();
    if (round % 4 == 0) policy.step_limit = 2;
    const Trace trace = vcsp::run_search(x, random_start(rng, x), policy);
    const std::string text = vcsp::trace_to_jsonl(trace);
    const Trace back = vcsp::trace_from_jsonl(x, text);
    CHECK(back.assignments == trace.assignments);
    CHECK(back.fitness == trace.fitness);
    CHECK(back.flips == trace.flips);
    CHECK(back.hit_step_limit == trace.hit_step_limit);
    CHECK(back.seeded == trace.seeded);
    if (trace.seeded) CHECK(back.seed == trace.seed);
    CHECK(vcsp::trace_to_jsonl(back) == text);
  }
}

TEST_CASE("trace parsing rejects tampered walks") {
  const Trace trace = reference_walk();
  const VcspInstance& x = trace.instance;
  const std::string good = vcsp::trace_to_jsonl(trace);

  auto code_of = [&](const std::string& text) {
    try {
      vcsp::trace_from_jsonl(x, text);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Internal;
  };

  // Wrong fitness value on the first record.
  std::string wrong_fitness = good;
  wrong_fitness.replace(wrong_fitness.find("\"fitness\":0"), 11, "\"fitness\":9");
  CHECK(code_of(wrong_fitness) == ErrorCode::BadTrace);

  // Flip that does not match the next assignment.
  std::string wrong_flip = good;
  wrong_flip.replace(wrong_flip.find("1↦0"), std::string("1↦0").size(), "2↦1");
  CHECK(code_of(wrong_flip) == ErrorCode::BadTrace);

  // Dropped record breaks the single-flip chain.
  std::string dropped = good;
  dropped.erase(0, dropped.find('\n') + 1);
  CHECK(code_of(dropped) == ErrorCode::BadTrace);

  CHECK(code_of("") == ErrorCode::BadTrace);
  CHECK(code_of("{\"t\":1}") == ErrorCode::BadTrace);
}
