#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vcsp/core.hpp"

// Span of an instance (sum over constraints of max minus min table entry),
// and exact minimisation of the span of a simple instance over all
// sign-equivalent reweightings.  The reweighting search is encoded as an
// integer program over the weight magnitudes: for every variable i and every
// subset Y of its stored neighbour weights, the sign of c_i + sum(Y) must be
// reproduced by the candidate magnitudes, giving one small linear side
// constraint per subset.

namespace vcsp {

Value span(const VcspInstance& instance);
/// Contribution of the constraints of one arity to the span.
Value span_arity(const VcspInstance& instance, int arity);

struct SpanVar {
  bool binary = false;
  int i = 0;
  int j = 0;              // 0 for unary variables
  Value weight = 0;       // source weight; its sign fixes the side partition

  std::string name() const;
};

/// k + sum(left) <= sum(right), or equality when eq is set.  Sides hold
/// indices into SpanMinProblem::vars and are disjoint for constructed
/// problems.  origin records the instance variable the constraint encodes.
struct SideConstraint {
  bool eq = false;
  int offset = 0;
  std::vector<int> left;
  std::vector<int> right;
  int origin = 0;
};

struct SpanMinProblem {
  std::vector<SpanVar> vars;
  std::vector<SideConstraint> constraints;

  int var_index(int i, int j = 0) const;          // -1 when absent
  std::vector<Value> feasible_hint() const;       // |weight| per variable
};

SpanMinProblem build_span_min_problem(const SimpleInstance& instance,
                                      int degree_limit = kDefaultDegreeLimit);

struct SpanMinSolution {
  std::vector<Value> values;
  Value objective = 0;
  std::uint64_t nodes = 0;
};

/// Exact optimum by deterministic branch-and-bound.  A node-capped doubling
/// objective budget first looks for a small incumbent (so huge source
/// magnitudes never widen the search); the exact phase then branches on
/// shared (binary) magnitudes only, fixing every magnitude whose constraints
/// mention no other open variable at its cheapest consistent value.
/// INFEASIBLE when a complete escalation proves no solution exists.
SpanMinSolution solve_span_min(const SpanMinProblem& problem);

struct MinimizeSpanResult {
  SimpleInstance simplified;
  SimpleInstance trimmed;
  SimpleInstance minimized;
  Value original_span = 0;
  Value trimmed_span = 0;
  Value minimized_span = 0;
  std::uint64_t solver_nodes = 0;
};

/// simplify, trim, rebuild weights with minimised magnitudes.  The result is
/// sign-equivalent to the input (asserted internally within the vertex
/// budget).
MinimizeSpanResult minimize_span(const VcspInstance& instance,
                                 std::uint64_t max_vertices = kDefaultMaxVertices,
                                 int degree_limit = kDefaultDegreeLimit);

}  // namespace vcsp
