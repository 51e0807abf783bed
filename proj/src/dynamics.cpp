#include "vcsp/dynamics.hpp"

#include <algorithm>
#include <map>
#include <random>

namespace vcsp {

namespace {
constexpr const char* kArrow = "↦";  // maps-to
constexpr const char* kRoot = "⊥";   // bottom
constexpr const char* kLink = "⇐";   // double left arrow
}  // namespace

std::string flip_to_string(const Flip& flip) {
  return std::to_string(flip.var) + kArrow + std::to_string(flip.value);
}

Flip flip_from_string(const std::string& text) {
  std::size_t at = text.find(kArrow);
  if (at == std::string::npos || at == 0)
    throw Error(ErrorCode::BadTrace, "flip must look like 1" + std::string(kArrow) + "0");
  Flip flip;
  flip.var = std::atoi(text.substr(0, at).c_str());
  flip.value = std::atoi(text.substr(at + std::string(kArrow).size()).c_str());
  return flip;
}

PolicyKind parse_policy(const std::string& name) {
  if (name == "steepest") return PolicyKind::Steepest;
  if (name == "first") return PolicyKind::First;
  if (name == "random") return PolicyKind::Random;
  if (name == "worst") return PolicyKind::Worst;
  throw Error(ErrorCode::BadConfig, "unknown policy '" + name + "'");
}

const char* policy_name(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::Steepest: return "steepest";
    case PolicyKind::First: return "first";
    case PolicyKind::Random: return "random";
    case PolicyKind::Worst: return "worst";
  }
  return "?";
}

Trace run_search(const VcspInstance& instance, const Assignment& start,
                 const SearchPolicy& policy) {
  instance.validate_assignment(start);
  Trace trace{instance, {}, {}, {}, false, policy.kind == PolicyKind::Random, policy.seed};
  std::mt19937_64 rng(policy.seed);

  Assignment x = start;
  Value f = instance.evaluate(x);
  trace.assignments.push_back(x);
  trace.fitness.push_back(f);

  struct Move {
    Flip flip;
    Value delta;
  };
  std::vector<Move> moves;

  for (std::uint64_t step = 0;; ++step) {
    moves.clear();
    for (int var = 1; var <= instance.n(); ++var) {
      for (int b = 0; b < instance.domain(var); ++b) {
        if (b == x[var]) continue;
        Value delta = instance.flip_delta(x, var, b);
        if (delta > 0) moves.push_back({{var, b}, delta});
      }
    }
    if (moves.empty()) break;
    if (step >= policy.step_limit) {
      trace.hit_step_limit = true;
      break;
    }

    std::size_t pick = 0;
    switch (policy.kind) {
      case PolicyKind::First:
        break;
      case PolicyKind::Steepest:
        for (std::size_t k = 1; k < moves.size(); ++k)
          if (moves[k].delta > moves[pick].delta) pick = k;
        break;
      case PolicyKind::Worst:
        for (std::size_t k = 1; k < moves.size(); ++k)
          if (moves[k].delta < moves[pick].delta) pick = k;
        break;
      case PolicyKind::Random:
        pick = static_cast<std::size_t>(rng() % moves.size());
        break;
    }

    const Move& m = moves[pick];
    x.set(m.flip.var, m.flip.value);
    f = checked_add(f, m.delta);
    trace.flips.push_back(m.flip);
    trace.assignments.push_back(x);
    trace.fitness.push_back(f);
  }
  return trace;
}

Value gain(const VcspInstance& instance, const Assignment& x, int i, int b) {
  if (!instance.is_boolean())
    throw Error(ErrorCode::UnsupportedDomain, "gain is defined for Boolean domains");
  if (i < 1 || i > instance.n()) throw Error(ErrorCode::ScopeRange, "variable outside 1..n");
  if (b != 0 && b != 1) throw Error(ErrorCode::BadAssignment, "Boolean flip target must be 0 or 1");
  Assignment with_b = x.with(i, b);
  Assignment without_b = x.with(i, 1 - b);
  Value delta = 0;
  for (int ci : instance.incident(i)) {
    const Constraint& c = instance.constraints()[static_cast<std::size_t>(ci)];
    std::uint64_t idx1 = 0, idx0 = 0;
    for (int v : c.scope) {
      idx1 = idx1 * 2 + static_cast<std::uint64_t>(with_b[v]);
      idx0 = idx0 * 2 + static_cast<std::uint64_t>(without_b[v]);
    }
    delta = checked_add(delta, checked_add(c.values[idx1], -c.values[idx0]));
  }
  return delta;
}

Support supports(const Trace& trace, int t_prime, int t) {
  if (t_prime < 1 || t <= t_prime || t > trace.length() - 1)
    throw Error(ErrorCode::BadTrace, "support needs flip steps t' < t within the trace");
  const Flip& earlier = trace.flip(t_prime);   // (j, c)
  const Flip& later = trace.flip(t);           // (i, b)
  if (earlier.var == later.var) return Support::None;

  const Assignment& x = trace.assignment(t_prime);
  Value with_c = gain(trace.instance, x.with(earlier.var, earlier.value), later.var, later.value);
  Value without_c =
      gain(trace.instance, x.with(earlier.var, 1 - earlier.value), later.var, later.value);
  if (!(with_c > 0 && without_c <= 0)) return Support::None;
  return trace.assignment(t)[earlier.var] == earlier.value ? Support::Strong : Support::Weak;
}

EncouragementForest encouragement_forest(const Trace& trace) {
  if (!trace.instance.is_boolean())
    throw Error(ErrorCode::UnsupportedDomain, "encouragement is defined for Boolean domains");
  EncouragementForest forest;
  forest.parent.assign(static_cast<std::size_t>(trace.length()), 0);
  for (int t = 1; t <= trace.length() - 1; ++t) {
    const Flip& m = trace.flip(t);

    // Courageous flips are exactly those whose move gained at every step:
    // they never needed help, so they root a tree.
    bool helped = false;
    for (int s = 1; s <= t && !helped; ++s)
      helped = gain(trace.instance, trace.assignment(s), m.var, m.value) <= 0;
    if (!helped) continue;

    // Otherwise link to the most recent earlier flip (j, c) with j still
    // holding c at step t whose setting strictly raises the move's gain.
    // The raise is the same in every context, so it is measured at the
    // influencing flip's own step.  A supporter whose variable later
    // flipped back can leave the gain positive only through such a
    // persistent helper, and one always exists past the last step with
    // non-positive gain, so the link never reaches behind that step.
    for (int t_prime = t - 1; t_prime >= 1; --t_prime) {
      const Flip& earlier = trace.flip(t_prime);
      if (earlier.var == m.var) continue;
      if (trace.assignment(t)[earlier.var] != earlier.value) continue;
      const Assignment& x = trace.assignment(t_prime);
      Value with_c = gain(trace.instance, x.with(earlier.var, earlier.value), m.var, m.value);
      Value without_c =
          gain(trace.instance, x.with(earlier.var, 1 - earlier.value), m.var, m.value);
      if (with_c > without_c) {
        forest.parent[static_cast<std::size_t>(t)] = t_prime;
        break;
      }
    }
  }
  return forest;
}

std::vector<std::string> forest_chains(const Trace& trace, const EncouragementForest& forest) {
  int flips = trace.length() - 1;
  std::vector<bool> has_child(static_cast<std::size_t>(flips) + 1, false);
  for (int t = 1; t <= flips; ++t) {
    int p = forest.parent_of(t);
    if (p > 0) has_child[static_cast<std::size_t>(p)] = true;
  }
  std::vector<std::string> chains;
  for (int leaf = 1; leaf <= flips; ++leaf) {
    if (has_child[static_cast<std::size_t>(leaf)]) continue;
    std::vector<int> path;
    for (int at = leaf; at > 0; at = forest.parent_of(at)) path.push_back(at);
    std::reverse(path.begin(), path.end());
    std::string line = kRoot;
    for (int t : path)
      line += std::string(" ") + kLink + " (" + std::to_string(t) + "," +
              flip_to_string(trace.flip(t)) + ")";
    chains.push_back(std::move(line));
  }
  return chains;
}

namespace {

void finish(PropertyCheck& check, TraceReport& report) {
  report.all_pass = report.all_pass && check.pass;
  report.checks.push_back(std::move(check));
}

}  // namespace

TraceReport verify_trace_properties(const Trace& trace, const EncouragementForest& forest) {
  if (!trace.instance.is_boolean())
    throw Error(ErrorCode::UnsupportedDomain, "trace properties are defined for Boolean domains");
  int flips = trace.length() - 1;
  if (static_cast<int>(forest.parent.size()) != trace.length())
    throw Error(ErrorCode::BadTrace, "forest size does not match the trace");
  TraceReport report;

  {
    // Between an encouragement and the flip it encourages, the encouraged
    // move stays profitable.
    PropertyCheck check{"gain-positive-interval", true, {}, {}};
    for (int t2 = 1; t2 <= flips && check.pass; ++t2) {
      const Flip& m = trace.flip(t2);
      for (int t = forest.parent_of(t2) + 1; t <= t2; ++t) {
        if (gain(trace.instance, trace.assignment(t), m.var, m.value) <= 0) {
          check.pass = false;
          check.witness = {t2, t};
          check.detail = "flip " + std::to_string(t2) + " has non-positive gain at step " +
                         std::to_string(t);
          break;
        }
      }
    }
    finish(check, report);
  }

  {
    // A courageous flip must be the first flip at its position.
    PropertyCheck check{"courageous-first-flip", true, {}, {}};
    for (int t = 1; t <= flips && check.pass; ++t) {
      if (forest.parent_of(t) != 0) continue;
      for (int earlier = 1; earlier < t; ++earlier) {
        if (trace.flip(earlier).var == trace.flip(t).var) {
          check.pass = false;
          check.witness = {t, earlier};
          check.detail = "courageous flip " + std::to_string(t) + " repeats position " +
                         std::to_string(trace.flip(t).var);
          break;
        }
      }
    }
    finish(check, report);
  }

  {
    // No chain returns to a position two links later.
    PropertyCheck check{"no-position-reversal", true, {}, {}};
    for (int t3 = 1; t3 <= flips && check.pass; ++t3) {
      int t2 = forest.parent_of(t3);
      if (t2 == 0) continue;
      int t1 = forest.parent_of(t2);
      if (t1 == 0) continue;
      if (trace.flip(t1).var == trace.flip(t3).var) {
        check.pass = false;
        check.witness = {t1, t2, t3};
        check.detail = "chain revisits position " + std::to_string(trace.flip(t3).var);
      }
    }
    finish(check, report);
  }

  {
    // Two children of one parent sit at distinct positions.
    PropertyCheck check{"unique-child-position", true, {}, {}};
    std::map<std::pair<int, int>, int> seen;  // (parent, position) -> child
    for (int t = 1; t <= flips && check.pass; ++t) {
      int p = forest.parent_of(t);
      if (p == 0) continue;
      auto key = std::make_pair(p, trace.flip(t).var);
      auto [it, fresh] = seen.emplace(key, t);
      if (!fresh) {
        check.pass = false;
        check.witness = {p, it->second, t};
        check.detail = "children " + std::to_string(it->second) + " and " + std::to_string(t) +
                       " of " + std::to_string(p) + " share a position";
      }
    }
    finish(check, report);
  }

  {
    // No two root chains traverse the same positions in opposite orders.
    PropertyCheck check{"no-opposite-paths", true, {}, {}};
    std::map<std::vector<int>, int> paths;
    for (int t = 1; t <= flips; ++t) {
      std::vector<int> positions;
      for (int at = t; at > 0; at = forest.parent_of(at)) positions.push_back(trace.flip(at).var);
      std::reverse(positions.begin(), positions.end());
      paths.emplace(positions, t);
    }
    for (const auto& [positions, t] : paths) {
      std::vector<int> reversed(positions.rbegin(), positions.rend());
      auto it = paths.find(reversed);
      if (it != paths.end() && it->second != t) {
        check.pass = false;
        check.witness = {t, it->second};
        check.detail = "chains ending at " + std::to_string(t) + " and " +
                       std::to_string(it->second) + " reverse each other";
        break;
      }
    }
    finish(check, report);
  }

  return report;
}

}  // namespace vcsp
