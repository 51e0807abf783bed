#include "vcsp/span.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>

#include "vcsp/normal.hpp"

namespace vcsp {

Value span(const VcspInstance& instance) {
  Value total = 0;
  for (const Constraint& c : instance.constraints()) {
    auto [lo, hi] = std::minmax_element(c.values.begin(), c.values.end());
    total = checked_add(total, checked_add(*hi, -*lo));
  }
  return total;
}

Value span_arity(const VcspInstance& instance, int arity) {
  Value total = 0;
  for (const Constraint& c : instance.constraints()) {
    if (c.arity() != arity) continue;
    auto [lo, hi] = std::minmax_element(c.values.begin(), c.values.end());
    total = checked_add(total, checked_add(*hi, -*lo));
  }
  return total;
}

std::string SpanVar::name() const {
  if (binary) return "p_{" + std::to_string(i) + "," + std::to_string(j) + "}";
  return "p_" + std::to_string(i);
}

int SpanMinProblem::var_index(int i, int j) const {
  for (std::size_t k = 0; k < vars.size(); ++k) {
    const SpanVar& v = vars[k];
    if (j == 0 ? (!v.binary && v.i == i) : (v.binary && v.i == i && v.j == j))
      return static_cast<int>(k);
  }
  return -1;
}

std::vector<Value> SpanMinProblem::feasible_hint() const {
  std::vector<Value> hint;
  hint.reserve(vars.size());
  for (const SpanVar& v : vars) hint.push_back(std::llabs(v.weight));
  return hint;
}

SpanMinProblem build_span_min_problem(const SimpleInstance& instance, int degree_limit) {
  SpanMinProblem problem;
  // Canonical variable order: unary weights by index, then binary weights
  // by pair.  Both maps iterate in that order already.
  for (auto [i, w] : instance.unary()) problem.vars.push_back({false, i, 0, w});
  for (auto [ij, w] : instance.binary()) problem.vars.push_back({true, ij.first, ij.second, w});

  for (int i = 1; i <= instance.n(); ++i) {
    std::vector<int> incident;  // problem-variable index per stored neighbour weight
    for (auto [ij, w] : instance.binary()) {
      if (ij.first == i || ij.second == i)
        incident.push_back(problem.var_index(ij.first, ij.second));
    }
    if (static_cast<int>(incident.size()) > degree_limit)
      throw Error(ErrorCode::DegreeLimit,
                  "variable " + std::to_string(i) + " has more than " +
                      std::to_string(degree_limit) + " stored neighbour weights");
    int self = problem.var_index(i);
    Value ci = instance.unary_weight(i);

    for (std::uint64_t mask = 0; mask < (1ull << incident.size()); ++mask) {
      Value s = ci;
      std::vector<int> members;
      for (std::size_t b = 0; b < incident.size(); ++b) {
        if (mask & (1ull << b)) {
          members.push_back(incident[b]);
          s = checked_add(s, problem.vars[static_cast<std::size_t>(incident[b])].weight);
        }
      }
      if (self >= 0) members.push_back(self);
      if (members.empty() && s == 0) continue;  // vacuous

      std::vector<int> pos, neg;
      for (int v : members)
        (problem.vars[static_cast<std::size_t>(v)].weight > 0 ? pos : neg).push_back(v);
      std::sort(pos.begin(), pos.end());
      std::sort(neg.begin(), neg.end());

      SideConstraint sc;
      sc.origin = i;
      if (s < 0) {
        sc.eq = false;
        sc.offset = 1;
        sc.left = std::move(pos);
        sc.right = std::move(neg);
      } else if (s == 0) {
        sc.eq = true;
        sc.offset = 0;
        sc.left = std::move(pos);
        sc.right = std::move(neg);
      } else {
        sc.eq = false;
        sc.offset = 1;
        sc.left = std::move(neg);
        sc.right = std::move(pos);
      }
      problem.constraints.push_back(std::move(sc));
    }
  }
  return problem;
}

namespace {

using Wide = __int128;

class SpanMinSearch {
public:
  explicit SpanMinSearch(const SpanMinProblem& problem)
      : p_(problem), m_(problem.vars.size()), touching_(m_), used_(m_, 0) {
    for (std::size_t c = 0; c < p_.constraints.size(); ++c) {
      const SideConstraint& sc = p_.constraints[c];
      for (int v : sc.left) touching_[static_cast<std::size_t>(v)].push_back(c);
      for (int v : sc.right) touching_[static_cast<std::size_t>(v)].push_back(c);
    }
    // Branch on shared (binary) magnitudes first, grouped by the variable
    // whose neighbourhood they belong to, busiest neighbourhood first: the
    // tightest coupled constraints are then refuted near the root, and once
    // a neighbourhood is pinned its remaining magnitudes settle without
    // branching, so the unary entries here are rarely reached.
    std::map<int, std::vector<std::size_t>> stars;
    for (std::size_t v = 0; v < m_; ++v) {
      if (!p_.vars[v].binary) continue;
      stars[p_.vars[v].i].push_back(v);
      stars[p_.vars[v].j].push_back(v);
    }
    std::vector<int> hubs;
    for (const auto& [i, members] : stars) hubs.push_back(i);
    std::stable_sort(hubs.begin(), hubs.end(), [&](int a, int b) {
      return stars.at(a).size() > stars.at(b).size();
    });
    std::vector<char> listed(m_, 0);
    for (int i : hubs) {
      for (std::size_t v : stars.at(i)) {
        if (listed[v]) continue;
        listed[v] = 1;
        order_.push_back(v);
      }
    }
    for (std::size_t v = 0; v < m_; ++v)
      if (!listed[v]) order_.push_back(v);
  }

  SpanMinSolution run() {
    SpanMinSolution solution;
    std::vector<Value> incumbent;
    Value best = 0;
    bool have = false;

    // Problems built from an instance always accept their source magnitudes.
    std::vector<Value> hint = p_.feasible_hint();
    if (satisfies_all(hint)) {
      incumbent = std::move(hint);
      best = std::accumulate(incumbent.begin(), incumbent.end(), Value{0}, checked_add);
      have = true;
    }

    // Look for a small incumbent by doubling an objective budget, so that
    // huge source magnitudes never widen the later exact search.  Each probe
    // is node-capped: proving a budget infeasible can be expensive, and the
    // exact phase below does not need that proof.
    bool capped_any = false;
    for (Value budget = 1; budget <= (Value{1} << 20); budget *= 2) {
      if (have && budget >= best) break;
      capped_ = false;
      probe_base_ = nodes_;
      std::vector<Value> values(m_, -1);
      if (find_any(0, values, budget)) {
        Value total = std::accumulate(values.begin(), values.end(), Value{0}, checked_add);
        if (!have || total < best) {
          incumbent = std::move(values);
          best = total;
        }
        have = true;
        break;
      }
      if (capped_) {
        capped_any = true;
        if (have) break;  // the incumbent already bounds the exact phase
      }
    }
    if (!have) {
      if (capped_any)
        throw Error(ErrorCode::SizeLimit,
                    "search budget exhausted before any feasible magnitudes were found");
      // Every budget up to the escalation cap was searched to completion.
      throw Error(ErrorCode::Infeasible, "no assignment satisfies the side constraints");
    }

    std::vector<Value> values(m_, -1);
    optimize(0, values, incumbent, best);

    solution.values = std::move(incumbent);
    solution.objective = best;
    solution.nodes = nodes_;
    return solution;
  }

private:
  const SpanMinProblem& p_;
  std::size_t m_;
  std::vector<std::vector<std::size_t>> touching_;  // constraints per variable
  std::vector<std::size_t> order_;                  // branch order over variables
  std::vector<char> used_;                          // packing scratch
  std::uint64_t nodes_ = 0;
  std::uint64_t probe_base_ = 0;
  bool capped_ = false;

  static constexpr Value kInf = Value{1} << 62;
  static constexpr std::uint64_t kProbeNodeCap = 5000;

  bool satisfies_all(const std::vector<Value>& values) const {
    for (const SideConstraint& c : p_.constraints) {
      Wide l = c.offset, r = 0;
      for (int v : c.left) l += values[static_cast<std::size_t>(v)];
      for (int v : c.right) r += values[static_cast<std::size_t>(v)];
      if (c.eq ? (l != r) : (l > r)) return false;
    }
    return true;
  }

  // Bounds-consistency on [lo, hi] boxes; false when some constraint can no
  // longer be satisfied.  cap bounds every variable, so the sweep loop
  // terminates even on cyclic hand-built systems.
  bool propagate(std::vector<Value>& lo, std::vector<Value>& hi, Value cap) const {
    for (std::size_t v = 0; v < m_; ++v) {
      if (hi[v] > cap) hi[v] = cap;
      if (lo[v] > hi[v]) return false;
    }
    bool changed = true;
    while (changed) {
      changed = false;
      for (const SideConstraint& c : p_.constraints) {
        Wide min_l = c.offset, max_l = c.offset, min_r = 0, max_r = 0;
        for (int v : c.left) {
          min_l += lo[static_cast<std::size_t>(v)];
          max_l += hi[static_cast<std::size_t>(v)];
        }
        for (int v : c.right) {
          min_r += lo[static_cast<std::size_t>(v)];
          max_r += hi[static_cast<std::size_t>(v)];
        }
        if (min_l > max_r) return false;
        if (c.eq && min_r > max_l) return false;

        for (int vi : c.right) {
          std::size_t v = static_cast<std::size_t>(vi);
          Wide need = min_l - (max_r - hi[v]);
          if (need > lo[v]) {
            if (need > hi[v]) return false;
            lo[v] = static_cast<Value>(need);
            changed = true;
          }
          if (c.eq) {
            Wide most = max_l - (min_r - lo[v]);
            if (most < hi[v]) {
              if (most < lo[v]) return false;
              hi[v] = static_cast<Value>(most);
              changed = true;
            }
          }
        }
        for (int vi : c.left) {
          std::size_t v = static_cast<std::size_t>(vi);
          Wide most = max_r - (min_l - lo[v]);
          if (most < hi[v]) {
            if (most < lo[v]) return false;
            hi[v] = static_cast<Value>(most);
            changed = true;
          }
          if (c.eq) {
            Wide need = min_r - (max_l - hi[v]);
            if (need > lo[v]) {
              if (need > hi[v]) return false;
              lo[v] = static_cast<Value>(need);
              changed = true;
            }
          }
        }
      }
    }
    return true;
  }

  // Propagate, then repeatedly fix every open variable whose constraints
  // mention no other open variable: all its constraints are then intervals
  // in that variable alone, so its propagated minimum is both feasible and
  // cheapest, and nothing else depends on the choice.  Two such variables
  // never share a constraint, so fixing a whole round at once is exact.
  // Restores `values` and returns false when the node is infeasible.
  bool settle(std::vector<Value>& values, Value cap, std::vector<Value>& lo,
              std::vector<Value>& hi, std::vector<std::size_t>& fixed) {
    lo.assign(m_, 0);
    hi.assign(m_, kInf);
    for (std::size_t v = 0; v < m_; ++v)
      if (values[v] >= 0) lo[v] = hi[v] = values[v];
    for (;;) {
      if (!propagate(lo, hi, cap)) {
        undo(values, fixed);
        return false;
      }
      std::vector<std::size_t> alone;
      for (std::size_t v = 0; v < m_; ++v) {
        if (values[v] >= 0) continue;
        bool isolated = true;
        for (std::size_t ci : touching_[v]) {
          const SideConstraint& sc = p_.constraints[ci];
          for (int u : sc.left)
            isolated = isolated && (static_cast<std::size_t>(u) == v ||
                                    values[static_cast<std::size_t>(u)] >= 0);
          for (int u : sc.right)
            isolated = isolated && (static_cast<std::size_t>(u) == v ||
                                    values[static_cast<std::size_t>(u)] >= 0);
          if (!isolated) break;
        }
        if (isolated) alone.push_back(v);
      }
      if (alone.empty()) return true;
      for (std::size_t v : alone) {
        values[v] = lo[v];
        hi[v] = lo[v];
        fixed.push_back(v);
      }
    }
  }

  void undo(std::vector<Value>& values, std::vector<std::size_t>& fixed) const {
    for (std::size_t v : fixed) values[v] = -1;
    fixed.clear();
  }

  // One packing claim: sum(gain) >= offset + sum-of-lo(from), so when the
  // gain side is disjoint from every earlier claim, the objective rises by
  // the surplus over the gain side's own lower bounds.
  Wide claim(Wide offset, const std::vector<int>& from, const std::vector<int>& gain,
             const std::vector<Value>& lo) {
    Wide need = offset;
    for (int v : from) need += lo[static_cast<std::size_t>(v)];
    Wide have = 0;
    bool free = true;
    for (int v : gain) {
      have += lo[static_cast<std::size_t>(v)];
      free = free && !used_[static_cast<std::size_t>(v)];
    }
    if (!free || need <= have) return 0;
    for (int v : gain) used_[static_cast<std::size_t>(v)] = 1;
    return need - have;
  }

  // Objective lower bound: per-variable minimums plus a greedy packing of
  // constraint surpluses over pairwise-disjoint gain sides.  With `excl`
  // set, that variable contributes nothing — neither its own minimum nor
  // any claim through it — so the result bounds the objective without it.
  Wide packed_floor(Wide floor, const std::vector<Value>& lo, int excl = -1) {
    std::fill(used_.begin(), used_.end(), 0);
    if (excl >= 0) used_[static_cast<std::size_t>(excl)] = 1;
    Wide bound = floor;
    for (const SideConstraint& c : p_.constraints) {
      bound += claim(c.offset, c.left, c.right, lo);
      if (c.eq) bound += claim(-Wide(c.offset), c.right, c.left, lo);
    }
    return bound;
  }

  void optimize(std::size_t pos, std::vector<Value>& values, std::vector<Value>& incumbent,
                Value& best) {
    std::vector<Value> lo, hi;
    std::vector<std::size_t> fixed;
    if (!settle(values, best, lo, hi, fixed)) return;

    Wide floor = 0;
    for (std::size_t v = 0; v < m_; ++v) floor += values[v] >= 0 ? values[v] : lo[v];
    if (packed_floor(floor, lo) >= best) {  // cannot strictly improve the incumbent
      undo(values, fixed);
      return;
    }
    while (pos < m_ && values[order_[pos]] >= 0) ++pos;
    if (pos == m_) {
      const Value total = static_cast<Value>(floor);
      if (total < best && satisfies_all(values)) {
        best = total;
        incumbent = values;
      }
      undo(values, fixed);
      return;
    }

    const std::size_t v = order_[pos];
    const Wide others = packed_floor(floor - lo[v], lo, static_cast<int>(v));
    Value limit = static_cast<Value>(std::min<Wide>(hi[v], Wide(best) - 1 - others));
    for (Value val = lo[v]; val <= limit; ++val) {
      ++nodes_;
      values[v] = val;
      optimize(pos + 1, values, incumbent, best);
      values[v] = -1;
      // best may have shrunk; re-derive the value ceiling
      limit = static_cast<Value>(std::min<Wide>(hi[v], Wide(best) - 1 - others));
    }
    undo(values, fixed);
  }

  // First solution with magnitudes summing within the budget, by ascending
  // depth-first search.  On success `values` holds the full solution; a hit
  // of the probe node cap raises capped_ and unwinds quickly.
  bool find_any(std::size_t pos, std::vector<Value>& values, Value budget) {
    if (capped_) return false;
    if (nodes_ - probe_base_ > kProbeNodeCap) {
      capped_ = true;
      return false;
    }
    std::vector<Value> lo, hi;
    std::vector<std::size_t> fixed;
    if (!settle(values, budget, lo, hi, fixed)) return false;

    Wide floor = 0;
    for (std::size_t v = 0; v < m_; ++v) floor += values[v] >= 0 ? values[v] : lo[v];
    if (packed_floor(floor, lo) > budget) {
      undo(values, fixed);
      return false;
    }
    while (pos < m_ && values[order_[pos]] >= 0) ++pos;
    if (pos == m_) {
      if (satisfies_all(values)) return true;  // keep the settled assignments
      undo(values, fixed);
      return false;
    }

    const std::size_t v = order_[pos];
    const Wide others = packed_floor(floor - lo[v], lo, static_cast<int>(v));
    const Value limit = static_cast<Value>(std::min<Wide>(hi[v], Wide(budget) - others));
    for (Value val = lo[v]; val <= limit; ++val) {
      ++nodes_;
      values[v] = val;
      if (find_any(pos + 1, values, budget)) return true;
      values[v] = -1;
      if (capped_) break;
    }
    undo(values, fixed);
    return false;
  }
};

}  // namespace

SpanMinSolution solve_span_min(const SpanMinProblem& problem) {
  return SpanMinSearch(problem).run();
}

MinimizeSpanResult minimize_span(const VcspInstance& instance, std::uint64_t max_vertices,
                                 int degree_limit) {
  MinimizeSpanResult result{
      simplify(instance), SimpleInstance(instance.n(), 0, {}, {}),
      SimpleInstance(instance.n(), 0, {}, {}), 0, 0, 0, 0};
  result.original_span = span(instance);
  result.trimmed = trim(result.simplified, max_vertices);
  result.trimmed_span = result.trimmed.span_total();

  SpanMinProblem problem = build_span_min_problem(result.trimmed, degree_limit);
  SpanMinSolution solution = solve_span_min(problem);
  result.solver_nodes = solution.nodes;
  result.minimized_span = solution.objective;

  std::map<int, Value> unary;
  std::map<std::pair<int, int>, Value> binary;
  for (std::size_t k = 0; k < problem.vars.size(); ++k) {
    const SpanVar& v = problem.vars[k];
    Value magnitude = solution.values[k];
    if (magnitude == 0) continue;
    Value w = v.weight > 0 ? magnitude : -magnitude;
    if (v.binary)
      binary[{v.i, v.j}] = w;
    else
      unary[v.i] = w;
  }
  result.minimized = SimpleInstance(instance.n(), result.trimmed.constant(), std::move(unary),
                                    std::move(binary));

  EquivalenceReport eq =
      sign_equivalent(instance, result.minimized.to_vcsp(), max_vertices);
  if (!eq.equal)
    throw Error(ErrorCode::Internal, "span minimisation broke sign equivalence");
  return result;
}

}  // namespace vcsp
