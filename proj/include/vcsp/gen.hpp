#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "vcsp/core.hpp"
#include "vcsp/dynamics.hpp"

// Instance generators: the named families used throughout the test suite
// plus a seeded random substrate for property fuzzing.

namespace vcsp {

/// Boolean path on n variables: edge {i, i+1} carries the table
/// [i 0; 0 i] and variable n carries the unary (0, n).  Walking first
/// improvement from (10)^(n/2) climbs one fitness unit per step through
/// n(n+1)/2 flips.
VcspInstance quadratic_path(int n);

/// Domain-3 path on n+1 variables; variable 1 is the most significant
/// counter digit.  Edge {k, k+1} carries 3^(n-k) * P with
/// P(a, b) = ((a+b) mod 3) + 1, which makes binary counting from 0^(n+1)
/// to 01^n strictly improving when each carry is routed through the third
/// symbol.  For n <= 6 the generator replays that schedule and throws
/// GENERATOR_INVARIANT if any step fails to improve.
VcspInstance domain3_counting(int n);

/// The counting schedule itself: flips from the all-zeros assignment.
std::vector<Flip> domain3_counting_schedule(int n);

/// Chain of K linked 4-cycles plus one trigger variable n = 4K+1 with
/// unary table (1, -w).  Cycle weights are solved at generation time from
/// the strict-improvement inequalities of the intra-cycle transition
/// sequences; the cascade started from all-zeros-except-x_n makes variable
/// 1 fall from 1 to 0 exactly 2^K times.  Self-checked for K <= 3.
VcspInstance treewidth2_counting(int K);

Assignment treewidth2_start(int K);
std::vector<Flip> treewidth2_cascade(int K);

struct TreeDecomposition {
  std::vector<std::vector<int>> bags;
  std::vector<std::pair<int, int>> edges;   // bag indices

  int width() const;
};

TreeDecomposition treewidth2_decomposition(int K);

/// Generic validity check: bags cover every constraint scope, bag tree is a
/// tree, and each variable's bags form a connected subtree.
bool validate_tree_decomposition(const VcspInstance& instance, const TreeDecomposition& td,
                                 std::string* reason = nullptr);

/// Star reduction from subset sum: values s and target t map to n+2
/// Boolean variables where variables n+1 and n+2 sign-interact exactly
/// when some subset of s sums to t.
VcspInstance subsetsum_star(const std::vector<Value>& values, Value target);

enum class GraphShape { Path, Cycle, Tree, Random };

GraphShape parse_shape(const std::string& name);
const char* shape_name(GraphShape shape);

struct RandomSpec {
  int n = 2;
  GraphShape shape = GraphShape::Random;
  double density = 0.3;         // Random shape only
  Value wmin = -8;
  Value wmax = 8;
  bool simple_style = false;    // weights only, instead of full tables
  int domain = 2;
};

/// Seeded substrate (mt19937_64).  General style draws full tables
/// (resampling identically-zero binary tables so the shape survives into
/// the constraint graph) and gives each variable a unary table with
/// probability one half; simple style draws nonzero weights.
VcspInstance random_instance(const RandomSpec& spec, std::uint64_t seed);

}  // namespace vcsp
