#pragma once

#include <cstdint>
#include <string>
#include <vector>

// The release gate: fourteen self-contained checks covering normal forms,
// span bounds, trace structure, and the counting constructions.  Everything
// is integer-exact and deterministic for a fixed seed.

namespace vcsp {

struct CriterionResult {
  int index = 0;
  std::string label;
  bool pass = false;
  std::string detail;
};

struct AcceptanceReport {
  std::vector<CriterionResult> results;
  bool all_pass = true;
};

/// Criteria 1..13 with per-criterion RNG streams derived from seed.
AcceptanceReport run_criteria(std::uint64_t seed);

/// One line per criterion: "criterion 04 PASS  <label> (<detail>)".
std::string render_report(const AcceptanceReport& report);

/// Runs the criteria twice and appends criterion 14: the two rendered
/// reports must be byte-identical.
AcceptanceReport run_all(std::uint64_t seed);

}  // namespace vcsp
