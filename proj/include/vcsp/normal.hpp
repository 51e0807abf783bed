#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "vcsp/core.hpp"

// Normal forms for binary Boolean instances: the simple form (unique up to
// the stored weights), exhaustive equivalence checks, and trimming of
// binary weights that never interact through the fitness graph.

namespace vcsp {

struct EquivalenceReport {
  enum class Kind { Magnitude, Sign };

  Kind kind = Kind::Magnitude;
  bool equal = false;
  /// Magnitude: first assignment (code order) where the fitness values
  /// differ.  Sign: first assignment whose edge pattern differs, together
  /// with the flipped variable and its target value.
  std::optional<Assignment> witness;
  int witness_var = 0;
  int witness_value = -1;
};

/// Rewrite a binary Boolean instance into simple form preserving every
/// fitness value: the constant collects f(0...0), each unary weight is the
/// variable's own slope at zero plus the row slopes of its binary tables,
/// and each binary weight is the table's second difference.
SimpleInstance simplify(const VcspInstance& instance);

EquivalenceReport magnitude_equivalent(const VcspInstance& a, const VcspInstance& b,
                                       std::uint64_t max_vertices = kDefaultMaxVertices);

/// Same fitness-graph edge set (domains may be arbitrary; compared
/// exhaustively over all single-variable flips).
EquivalenceReport sign_equivalent(const VcspInstance& a, const VcspInstance& b,
                                  std::uint64_t max_vertices = kDefaultMaxVertices);

struct TrimReport {
  struct Retained {
    int i = 0, j = 0;
    /// A direction (from, to) in which sign dependence holds, plus its
    /// witnessing assignment.
    int dep_from = 0, dep_to = 0;
    Assignment witness;
  };

  std::vector<std::pair<int, int>> removed;
  std::vector<Retained> retained;
};

/// Drop every stored binary weight whose endpoints do not sign-interact in
/// the input's fitness graph.  All removals are decided against the input,
/// then applied at once.  The result is sign-equivalent to the input
/// (checked internally) and trimming is idempotent.
SimpleInstance trim(const SimpleInstance& instance,
                    std::uint64_t max_vertices = kDefaultMaxVertices);

SimpleInstance trim_with_report(const SimpleInstance& instance, TrimReport& report,
                                std::uint64_t max_vertices = kDefaultMaxVertices);

}  // namespace vcsp
