#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vcsp/core.hpp"

// Local-search traces and their structure: which earlier flips made a later
// flip profitable (support), and the forest linking every flip to its most
// recent strong supporter.

namespace vcsp {

/// One move m(t) = (var, value): set var to value.
struct Flip {
  int var = 0;
  int value = 0;

  bool operator==(const Flip&) const = default;
};

std::string flip_to_string(const Flip& flip);   // "1↦0"
Flip flip_from_string(const std::string& text);

/// Strictly improving walk x^1 .. x^T with flips m(1) .. m(T-1).
struct Trace {
  VcspInstance instance;
  std::vector<Assignment> assignments;
  std::vector<Value> fitness;
  std::vector<Flip> flips;
  bool hit_step_limit = false;
  bool seeded = false;
  std::uint64_t seed = 0;

  int length() const { return static_cast<int>(assignments.size()); }
  const Assignment& assignment(int t) const { return assignments[static_cast<std::size_t>(t) - 1]; }
  Value fitness_at(int t) const { return fitness[static_cast<std::size_t>(t) - 1]; }
  const Flip& flip(int t) const { return flips[static_cast<std::size_t>(t) - 1]; }
};

enum class PolicyKind { Steepest, First, Random, Worst };

PolicyKind parse_policy(const std::string& name);  // steepest|first|random|worst
const char* policy_name(PolicyKind kind);

struct SearchPolicy {
  PolicyKind kind = PolicyKind::First;
  std::uint64_t seed = 0;                       // random policy only
  std::uint64_t step_limit = kDefaultStepLimit;
};

/// Walk from start taking improving single-variable flips until a local
/// optimum or the step limit.  Moves are enumerated by variable index then
/// target value; steepest takes the largest gain, worst the smallest
/// positive one (ties to the earliest move), first the earliest, and random
/// a uniform draw from an mt19937_64 seeded with policy.seed.
Trace run_search(const VcspInstance& instance, const Assignment& start,
                 const SearchPolicy& policy);

/// f(x[i := b]) - f(x[i := 1-b]) on a Boolean instance: how much value i
/// being b rather than its negation adds in the context x.
Value gain(const VcspInstance& instance, const Assignment& x, int i, int b);

enum class Support { None, Weak, Strong };

/// Whether m(t') = (j, c) supports m(t) = (i, b): after step t', position i
/// gains by being b exactly when j is c (gain positive with j = c, not
/// positive with j flipped).  Strong when j still holds c at step t.
Support supports(const Trace& trace, int t_prime, int t);

/// parent[t] = 0 (the flip is courageous) exactly when m(t)'s move had
/// positive gain at every step 1..t and so never needed help.  Otherwise
/// parent[t] is the most recent earlier flip (j, c) with j still holding c
/// at step t whose setting strictly raises m(t)'s gain — the latest
/// persistent positive influence, which always exists past the last step
/// with non-positive gain.  Index 0 is unused.
struct EncouragementForest {
  std::vector<int> parent;

  int parent_of(int t) const { return parent[static_cast<std::size_t>(t)]; }
};

EncouragementForest encouragement_forest(const Trace& trace);

/// Root-to-leaf chains, one string per leaf in step order, each link
/// written as (step, flip): "⊥ ⇐ (2,2↦1) ⇐ (3,1↦1)".
std::vector<std::string> forest_chains(const Trace& trace, const EncouragementForest& forest);

struct PropertyCheck {
  std::string name;
  bool pass = true;
  std::vector<int> witness;   // step indices pinning a violation
  std::string detail;
};

struct TraceReport {
  std::vector<PropertyCheck> checks;
  bool all_pass = true;
};

/// Structural laws of encouragement forests, checked against an explicit
/// forest (which need not be the computed one, so corrupted forests fail
/// with witnesses): gains stay positive across each encouragement interval;
/// only a position's first flip is courageous; no chain returns to a
/// position two links later; children of one parent occupy distinct
/// positions; no two root chains traverse the same positions in opposite
/// orders.
TraceReport verify_trace_properties(const Trace& trace, const EncouragementForest& forest);

}  // namespace vcsp
