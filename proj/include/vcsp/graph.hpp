#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vcsp/core.hpp"

// Fitness graph: directed graph on all assignments with an edge x -> y
// whenever y differs from x in exactly one variable and f(y) > f(x).
// Vertices are addressed by mixed-radix codes with variable 1 most
// significant, so code order equals lexicographic order on assignments.

namespace vcsp {

using AssignmentCode = std::uint64_t;

AssignmentCode assignment_code(const VcspInstance& instance, const Assignment& x);
Assignment code_assignment(const VcspInstance& instance, AssignmentCode code);

/// Fitness of every assignment, indexed by code.  SIZE_LIMIT if the
/// assignment space exceeds the budget.
std::vector<Value> fitness_table(const VcspInstance& instance,
                                 std::uint64_t max_vertices = kDefaultMaxVertices);

class FitnessGraph {
public:
  static FitnessGraph build(const VcspInstance& instance,
                            std::uint64_t max_vertices = kDefaultMaxVertices);

  const VcspInstance& instance() const { return instance_; }
  std::uint64_t vertex_count() const { return fitness_.size(); }
  std::uint64_t edge_count() const { return targets_.size(); }

  Value fitness(AssignmentCode v) const { return fitness_[v]; }
  std::span<const std::uint32_t> out_neighbours(AssignmentCode v) const;
  std::uint64_t out_degree(AssignmentCode v) const;
  bool has_edge(AssignmentCode from, AssignmentCode to) const;

  /// Codes with no improving flip, ascending.
  std::vector<AssignmentCode> local_optima() const;

  struct LongestPath {
    std::uint64_t length = 0;                 // number of edges
    std::vector<AssignmentCode> witness;      // length+1 vertices
  };

  /// Exact longest directed path by dynamic programming over vertices in
  /// (fitness, code) order.  Ties in the witness break toward the smallest
  /// code, and among maximum-length endpoints the smallest code wins.
  LongestPath longest_improving_path() const;

private:
  VcspInstance instance_;
  std::vector<Value> fitness_;
  std::vector<std::uint64_t> offsets_;
  std::vector<std::uint32_t> targets_;
  std::vector<std::uint64_t> place_;          // place value per variable

  explicit FitnessGraph(VcspInstance instance);
};

struct SignDependence {
  bool depends = false;
  /// Lexicographically smallest x whose improving i-flip stops improving
  /// after also flipping j.
  std::optional<Assignment> witness;
};

/// Whether flipping j can change the sign of i's fitness delta somewhere.
/// Boolean instances only; decided by exhaustive scan.
SignDependence sign_depends(const VcspInstance& instance, int i, int j,
                            std::uint64_t max_vertices = kDefaultMaxVertices);

bool sign_interact(const VcspInstance& instance, int i, int j,
                   std::uint64_t max_vertices = kDefaultMaxVertices);

/// Scan over a precomputed Boolean fitness table (internal building block,
/// exposed for reuse by the normal-form machinery).
SignDependence sign_depends_on_table(const std::vector<Value>& fitness, int n, int i, int j);

}  // namespace vcsp
