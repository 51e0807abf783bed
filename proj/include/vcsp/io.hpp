#pragma once

#include <string>

#include "vcsp/core.hpp"
#include "vcsp/dynamics.hpp"

// Instance files are JSON objects:
//   {"n": 2, "domains": [2, 2],
//    "constraints": [{"scope": [1, 2], "values": [1, 2, 2, 3]}],
//    "name": "example"}
// Scopes are 1-based and strictly increasing; tables are row-major with the
// first scope variable most significant.  serialize() emits a canonical form
// (sorted scopes, sorted keys, two-space indent) and is a fixed point of
// parse-then-serialize.

namespace vcsp {

VcspInstance parse_instance(const std::string& text);
std::string serialize_instance(const VcspInstance& instance);

/// One JSON object per line: {"t": 1, "assignment": "1010", "fitness": 0,
/// "flip": "1↦0"}.  Record t carries the move applied to its assignment,
/// so the flip field is absent on the final record; a seeded trace carries
/// "seed" on the first record, and a truncated one carries
/// "hit_step_limit": true on the last.
std::string trace_to_jsonl(const Trace& trace);

/// Rebuild and validate a trace against its instance: assignments must be
/// valid, consecutive steps must differ in exactly one variable, and every
/// step must strictly improve fitness.
Trace trace_from_jsonl(const VcspInstance& instance, const std::string& text);

}  // namespace vcsp
