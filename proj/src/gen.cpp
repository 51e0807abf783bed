#include "vcsp/gen.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <random>
#include <set>
#include <sstream>

namespace vcsp {
namespace {

Value pow3(int e) {
  Value v = 1;
  for (int k = 0; k < e; ++k) v = checked_mul(v, 3);
  return v;
}

std::string cat(const char* prefix, int a) {
  std::ostringstream out;
  out << prefix << '(' << a << ')';
  return out.str();
}

}  // namespace

VcspInstance quadratic_path(int n) {
  if (n < 1 || n > 62) throw Error(ErrorCode::BadConfig, "quadratic_path needs 1 <= n <= 62");
  std::vector<Constraint> cs;
  for (int i = 1; i < n; ++i)
    cs.push_back({{i, i + 1}, {Value{i}, 0, 0, Value{i}}});
  cs.push_back({{n}, {0, Value{n}}});
  return VcspInstance(n, std::vector<int>(n, 2), std::move(cs), cat("quadratic_path", n));
}

std::vector<Flip> domain3_counting_schedule(int n) {
  if (n < 1 || n > 20) throw Error(ErrorCode::BadConfig, "schedule needs 1 <= n <= 20");
  // Variables 2..n+1 hold the counter, variable v carrying bit n+2-v
  // (variable 2 is the most significant counter bit).  One increment:
  // turn the trailing block of 1s into the carry symbol working from its
  // most significant end, flip the 0 above the block to 1, then clear the
  // carry symbols starting from the least significant end.
  auto var_of_bit = [n](int p) { return n + 2 - p; };
  std::vector<Flip> flips;
  for (std::uint64_t m = 0; m + 1 < (std::uint64_t{1} << n); ++m) {
    const int k = std::countr_one(m);
    for (int p = k; p >= 1; --p) flips.push_back({var_of_bit(p), 2});
    flips.push_back({var_of_bit(k + 1), 1});
    for (int p = 1; p <= k; ++p) flips.push_back({var_of_bit(p), 0});
  }
  return flips;
}

VcspInstance domain3_counting(int n) {
  if (n < 1 || n > 36) throw Error(ErrorCode::BadConfig, "domain3_counting needs 1 <= n <= 36");
  std::vector<Constraint> cs;
  for (int k = 1; k <= n; ++k) {
    const Value scale = pow3(n - k);
    std::vector<Value> table(9);
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        table[static_cast<std::size_t>(a * 3 + b)] = checked_mul(scale, ((a + b) % 3) + 1);
    cs.push_back({{k, k + 1}, std::move(table)});
  }
  VcspInstance instance(n + 1, std::vector<int>(n + 1, 3), std::move(cs), cat("domain3_counting", n));

  if (n <= 6) {
    Assignment x{std::vector<int>(static_cast<std::size_t>(n) + 1, 0)};
    std::uint64_t steps = 0;
    for (const Flip& f : domain3_counting_schedule(n)) {
      const Value delta = instance.flip_delta(x, f.var, f.value);
      if (delta <= 0)
        throw Error(ErrorCode::GeneratorInvariant,
                    "domain3_counting: non-improving step " + std::to_string(steps + 1) +
                        " at variable " + std::to_string(f.var));
      x.set(f.var, f.value);
      ++steps;
    }
    const std::uint64_t expect = 3 * (std::uint64_t{1} << n) - 2 * static_cast<std::uint64_t>(n) - 3;
    bool final_ok = x[1] == 0;
    for (int v = 2; v <= n + 1; ++v) final_ok = final_ok && x[v] == 1;
    if (steps != expect || !final_ok)
      throw Error(ErrorCode::GeneratorInvariant, "domain3_counting: schedule shape mismatch");
  }
  return instance;
}

namespace {

struct CycleWeights {
  Value u1, u2, u3, u4, e12, e23, e34, e14, a;
};

// One linked 4-cycle with back-pressure w on its first variable.  The
// strict-improvement requirements of the up and down transition sequences
// reduce to a system of one-unit-margin linear inequalities over the nine
// weights; they are solved by a deterministic least-magnitude backtracking
// search so the construction carries no magic numbers.
CycleWeights solve_cycle(Value w) {
  // Variable order: u1, e12, u2, e23, u3, e34, e14, u4, a.
  struct Ineq {
    std::vector<int> vars;  // indices into the order above
    Value add;
    bool ge;  // true: sum + add >= 1, false: sum + add <= -1
  };
  const std::vector<Ineq> system = {
      {{0}, w, false},        // pressured first variable must prefer 0
      {{0, 1}, 0, true},      // second variable pulls the first up
      {{1, 2}, 0, false},     // ... but itself prefers 0 beside it
      {{2, 3}, 0, true},      // third pulls the second up
      {{3, 4}, 0, false},
      {{4, 5}, 0, true},      // fourth pulls the third up
      {{5, 6, 7}, 0, false},  // fourth retreats once both rings close
      {{0, 6}, 0, true},      // fourth pulls the first up across the chord
      {{7, 8}, 0, true},      // live input pulls the fourth up
  };

  std::array<Value, 9> val{};
  auto search = [&](auto&& self, int idx) -> bool {
    if (idx == 9) return true;
    Value lb = std::numeric_limits<Value>::min() / 4;
    Value ub = std::numeric_limits<Value>::max() / 4;
    for (const Ineq& q : system) {
      int last = -1;
      for (int v : q.vars) last = std::max(last, v);
      if (last != idx) continue;
      Value rest = q.add;
      for (int v : q.vars)
        if (v != idx) rest = checked_add(rest, val[static_cast<std::size_t>(v)]);
      if (q.ge)
        lb = std::max(lb, checked_add(1, -rest));
      else
        ub = std::min(ub, checked_add(-1, -rest));
    }
    if (lb > ub) return false;
    const Value first = std::clamp<Value>(0, lb, ub);
    std::vector<Value> cands;
    for (Value d = 0; d <= 128; ++d) {
      if (first + d <= ub) cands.push_back(first + d);
      if (d > 0 && first - d >= lb) cands.push_back(first - d);
    }
    std::sort(cands.begin(), cands.end(), [](Value a, Value b) {
      const Value aa = a < 0 ? -a : a, bb = b < 0 ? -b : b;
      return aa != bb ? aa < bb : a > b;
    });
    for (Value c : cands) {
      val[static_cast<std::size_t>(idx)] = c;
      if (self(self, idx + 1)) return true;
    }
    return false;
  };
  if (!search(search, 0))
    throw Error(ErrorCode::GeneratorInvariant, "cycle weight system unexpectedly infeasible");

  CycleWeights cw{val[0] /*u1*/, val[2] /*u2*/, val[4] /*u3*/, val[7] /*u4*/,
                  val[1] /*e12*/, val[3] /*e23*/, val[5] /*e34*/, val[6] /*e14*/,
                  val[8] /*a*/};
  for (const Ineq& q : system) {
    Value s = q.add;
    for (int v : q.vars) s = checked_add(s, val[static_cast<std::size_t>(v)]);
    if (q.ge ? s < 1 : s > -1)
      throw Error(ErrorCode::GeneratorInvariant, "cycle weight check failed");
  }
  return cw;
}

std::vector<CycleWeights> cycle_chain(int K) {
  std::vector<CycleWeights> chain;
  Value w = 0;
  for (int i = 0; i < K; ++i) {
    chain.push_back(solve_cycle(w));
    w = chain.back().a;
  }
  return chain;
}

void emit_up(int i, std::vector<Flip>& out);
void emit_down(int i, std::vector<Flip>& out);

int local(int i, int k) { return 4 * i + k; }

void emit_up(int i, std::vector<Flip>& out) {
  out.push_back({local(i, 4), 1});
  out.push_back({local(i, 1), 1});
  if (i > 0) emit_up(i - 1, out);
  out.push_back({local(i, 3), 1});
}

void emit_down(int i, std::vector<Flip>& out) {
  out.push_back({local(i, 4), 0});
  out.push_back({local(i, 1), 0});
  if (i > 0) emit_down(i - 1, out);
  out.push_back({local(i, 2), 1});
  out.push_back({local(i, 3), 0});
  out.push_back({local(i, 1), 1});
  if (i > 0) emit_up(i - 1, out);
  out.push_back({local(i, 2), 0});
  out.push_back({local(i, 1), 0});
  if (i > 0) emit_down(i - 1, out);
}

}  // namespace

Assignment treewidth2_start(int K) {
  if (K < 1 || K > 40) throw Error(ErrorCode::BadConfig, "treewidth2 needs 1 <= K <= 40");
  const int n = 4 * K + 1;
  Assignment x{std::vector<int>(static_cast<std::size_t>(n), 0)};
  x.set(n, 1);
  return x;
}

std::vector<Flip> treewidth2_cascade(int K) {
  if (K < 1 || K > 40) throw Error(ErrorCode::BadConfig, "treewidth2 needs 1 <= K <= 40");
  std::vector<Flip> flips;
  emit_up(K - 1, flips);
  flips.push_back({4 * K + 1, 0});
  emit_down(K - 1, flips);
  return flips;
}

VcspInstance treewidth2_counting(int K) {
  if (K < 1 || K > 40) throw Error(ErrorCode::BadConfig, "treewidth2 needs 1 <= K <= 40");
  const int n = 4 * K + 1;
  const std::vector<CycleWeights> chain = cycle_chain(K);

  std::vector<Constraint> cs;
  for (int i = 0; i < K; ++i) {
    const CycleWeights& cw = chain[static_cast<std::size_t>(i)];
    cs.push_back({{local(i, 1)}, {0, cw.u1}});
    cs.push_back({{local(i, 2)}, {0, cw.u2}});
    cs.push_back({{local(i, 3)}, {0, cw.u3}});
    cs.push_back({{local(i, 4)}, {0, cw.u4}});
    cs.push_back({{local(i, 1), local(i, 2)}, {0, 0, 0, cw.e12}});
    cs.push_back({{local(i, 2), local(i, 3)}, {0, 0, 0, cw.e23}});
    cs.push_back({{local(i, 3), local(i, 4)}, {0, 0, 0, cw.e34}});
    cs.push_back({{local(i, 1), local(i, 4)}, {0, 0, 0, cw.e14}});
    cs.push_back({{local(i, 4), local(i, 4) + 1}, {0, 0, 0, cw.a}});
  }
  cs.push_back({{n}, {1, -chain.back().a}});
  VcspInstance instance(n, std::vector<int>(static_cast<std::size_t>(n), 2), std::move(cs),
                        cat("treewidth2_counting", K));

  if (K <= 8) {
    Assignment x = treewidth2_start(K);
    std::uint64_t step = 0, falls = 0;
    for (const Flip& f : treewidth2_cascade(K)) {
      if (x[f.var] == f.value)
        throw Error(ErrorCode::GeneratorInvariant, "treewidth2: redundant cascade step");
      const Value delta = instance.flip_delta(x, f.var, f.value);
      if (delta <= 0)
        throw Error(ErrorCode::GeneratorInvariant,
                    "treewidth2: non-improving step " + std::to_string(step + 1) +
                        " at variable " + std::to_string(f.var));
      if (f.var == 1 && f.value == 0) ++falls;
      x.set(f.var, f.value);
      ++step;
    }
    bool zero = true;
    for (int v = 1; v <= n; ++v) zero = zero && x[v] == 0;
    if (!zero || falls != (std::uint64_t{1} << K))
      throw Error(ErrorCode::GeneratorInvariant, "treewidth2: cascade shape mismatch");
  }
  return instance;
}

int TreeDecomposition::width() const {
  int w = -1;
  for (const auto& bag : bags) w = std::max(w, static_cast<int>(bag.size()) - 1);
  return w;
}

TreeDecomposition treewidth2_decomposition(int K) {
  if (K < 1 || K > 40) throw Error(ErrorCode::BadConfig, "treewidth2 needs 1 <= K <= 40");
  TreeDecomposition td;
  for (int i = 0; i < K; ++i) {
    td.bags.push_back({local(i, 1), local(i, 2), local(i, 4)});
    td.bags.push_back({local(i, 2), local(i, 3), local(i, 4)});
    td.bags.push_back({local(i, 4), local(i, 4) + 1});
    const int b1 = 3 * i, b2 = 3 * i + 1, link = 3 * i + 2;
    td.edges.emplace_back(b1, b2);
    td.edges.emplace_back(b2, link);
    if (i + 1 < K) td.edges.emplace_back(link, 3 * (i + 1));
  }
  return td;
}

bool validate_tree_decomposition(const VcspInstance& instance, const TreeDecomposition& td,
                                 std::string* reason) {
  auto fail = [&](const std::string& why) {
    if (reason) *reason = why;
    return false;
  };
  const int b = static_cast<int>(td.bags.size());
  if (b == 0) return fail("no bags");
  for (const auto& bag : td.bags)
    for (int v : bag)
      if (v < 1 || v > instance.n()) return fail("bag contains out-of-range variable");

  // Bag graph must be a tree.
  if (static_cast<int>(td.edges.size()) != b - 1) return fail("bag graph is not a tree");
  std::vector<std::vector<int>> adj(static_cast<std::size_t>(b));
  for (auto [p, q] : td.edges) {
    if (p < 0 || p >= b || q < 0 || q >= b || p == q) return fail("bad bag edge");
    adj[static_cast<std::size_t>(p)].push_back(q);
    adj[static_cast<std::size_t>(q)].push_back(p);
  }
  std::vector<char> seen(static_cast<std::size_t>(b), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 0;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    ++reached;
    for (int v : adj[static_cast<std::size_t>(u)])
      if (!seen[static_cast<std::size_t>(v)]) {
        seen[static_cast<std::size_t>(v)] = 1;
        stack.push_back(v);
      }
  }
  if (reached != b) return fail("bag graph is not connected");

  // Every constraint scope inside some bag.
  for (const Constraint& c : instance.constraints()) {
    bool covered = false;
    for (const auto& bag : td.bags) {
      bool all = true;
      for (int v : c.scope) all = all && std::find(bag.begin(), bag.end(), v) != bag.end();
      if (all) {
        covered = true;
        break;
      }
    }
    if (!covered) return fail("constraint scope not covered by any bag");
  }

  // Bags holding each variable must induce a connected subtree.
  for (int v = 1; v <= instance.n(); ++v) {
    std::vector<char> holds(static_cast<std::size_t>(b), 0);
    int count = 0, root = -1;
    for (int p = 0; p < b; ++p) {
      const auto& bag = td.bags[static_cast<std::size_t>(p)];
      if (std::find(bag.begin(), bag.end(), v) != bag.end()) {
        holds[static_cast<std::size_t>(p)] = 1;
        ++count;
        root = p;
      }
    }
    if (count == 0) return fail("variable " + std::to_string(v) + " missing from all bags");
    std::vector<char> vis(static_cast<std::size_t>(b), 0);
    std::vector<int> work{root};
    vis[static_cast<std::size_t>(root)] = 1;
    int got = 0;
    while (!work.empty()) {
      const int u = work.back();
      work.pop_back();
      ++got;
      for (int q : adj[static_cast<std::size_t>(u)])
        if (holds[static_cast<std::size_t>(q)] && !vis[static_cast<std::size_t>(q)]) {
          vis[static_cast<std::size_t>(q)] = 1;
          work.push_back(q);
        }
    }
    if (got != count)
      return fail("bags holding variable " + std::to_string(v) + " are disconnected");
  }
  if (reason) reason->clear();
  return true;
}

VcspInstance subsetsum_star(const std::vector<Value>& values, Value target) {
  if (values.empty() || values.size() > 60)
    throw Error(ErrorCode::BadConfig, "subsetsum_star needs 1 to 60 values");
  for (Value s : values)
    if (s < 1) throw Error(ErrorCode::BadConfig, "subsetsum_star values must be positive");
  if (target < 1) throw Error(ErrorCode::BadConfig, "subsetsum_star target must be positive");

  const int n = static_cast<int>(values.size());
  const int hub = n + 2;
  std::vector<Constraint> cs;
  for (int i = 1; i <= n + 1; ++i) cs.push_back({{i}, {0, 1}});
  cs.push_back({{hub}, {0, checked_add(checked_mul(-3, target), -1)}});
  for (int i = 1; i <= n; ++i)
    cs.push_back({{i, hub}, {0, 0, 0, checked_mul(3, values[static_cast<std::size_t>(i - 1)])}});
  cs.push_back({{n + 1, hub}, {0, 0, 0, 2}});
  std::ostringstream name;
  name << "subsetsum_star(n=" << n << ",t=" << target << ')';
  return VcspInstance(hub, std::vector<int>(static_cast<std::size_t>(hub), 2), std::move(cs),
                      name.str());
}

GraphShape parse_shape(const std::string& name) {
  if (name == "path") return GraphShape::Path;
  if (name == "cycle") return GraphShape::Cycle;
  if (name == "tree") return GraphShape::Tree;
  if (name == "random") return GraphShape::Random;
  throw Error(ErrorCode::BadConfig, "unknown graph shape: " + name);
}

const char* shape_name(GraphShape shape) {
  switch (shape) {
    case GraphShape::Path: return "path";
    case GraphShape::Cycle: return "cycle";
    case GraphShape::Tree: return "tree";
    case GraphShape::Random: return "random";
  }
  return "?";
}

VcspInstance random_instance(const RandomSpec& spec, std::uint64_t seed) {
  if (spec.n < 1 || spec.n > 100000) throw Error(ErrorCode::BadConfig, "n out of range");
  if (spec.domain < 2 || spec.domain > 64) throw Error(ErrorCode::BadConfig, "domain out of range");
  if (spec.simple_style && spec.domain != 2)
    throw Error(ErrorCode::BadConfig, "simple style needs Boolean domains");
  if (spec.wmin > spec.wmax) throw Error(ErrorCode::BadConfig, "empty weight range");
  constexpr Value kCap = Value{1} << 31;
  if (spec.wmin < -kCap || spec.wmax > kCap)
    throw Error(ErrorCode::BadConfig, "weight bounds exceed 2^31");
  if (spec.wmin == 0 && spec.wmax == 0)
    throw Error(ErrorCode::BadConfig, "weight range holds no nonzero value");
  if (!(spec.density >= 0.0 && spec.density <= 1.0))
    throw Error(ErrorCode::BadConfig, "density must lie in [0, 1]");
  if (spec.shape == GraphShape::Cycle && spec.n < 3)
    throw Error(ErrorCode::BadConfig, "cycle needs n >= 3");

  const int n = spec.n;
  std::mt19937_64 rng(seed);
  // rng() % k carries negligible modulo bias here and keeps the byte
  // stream identical across standard libraries.
  auto below = [&rng](std::uint64_t k) { return rng() % k; };
  auto weight = [&](bool nonzero) {
    const std::uint64_t span = static_cast<std::uint64_t>(spec.wmax - spec.wmin) + 1;
    for (int tries = 0; tries < 10000; ++tries) {
      const Value w = spec.wmin + static_cast<Value>(below(span));
      if (!nonzero || w != 0) return w;
    }
    throw Error(ErrorCode::Internal, "weight resampling failed");
  };

  std::vector<std::pair<int, int>> edges;
  switch (spec.shape) {
    case GraphShape::Path:
      for (int i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
      break;
    case GraphShape::Cycle:
      for (int i = 1; i < n; ++i) edges.emplace_back(i, i + 1);
      edges.emplace_back(1, n);
      break;
    case GraphShape::Tree: {
      if (n == 2) edges.emplace_back(1, 2);
      if (n <= 2) break;
      std::vector<int> seq(static_cast<std::size_t>(n - 2));
      for (int& s : seq) s = 1 + static_cast<int>(below(static_cast<std::uint64_t>(n)));
      std::vector<int> deg(static_cast<std::size_t>(n) + 1, 1);
      for (int s : seq) ++deg[static_cast<std::size_t>(s)];
      std::set<int> leaves;
      for (int v = 1; v <= n; ++v)
        if (deg[static_cast<std::size_t>(v)] == 1) leaves.insert(v);
      for (int s : seq) {
        const int leaf = *leaves.begin();
        leaves.erase(leaves.begin());
        edges.emplace_back(std::min(leaf, s), std::max(leaf, s));
        if (--deg[static_cast<std::size_t>(s)] == 1) leaves.insert(s);
      }
      const int a = *leaves.begin(), b = *leaves.rbegin();
      edges.emplace_back(std::min(a, b), std::max(a, b));
      break;
    }
    case GraphShape::Random:
      for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
          if (static_cast<double>(rng() >> 11) * 0x1.0p-53 < spec.density) edges.emplace_back(i, j);
      break;
  }
  std::sort(edges.begin(), edges.end());

  std::vector<Constraint> cs;
  for (int i = 1; i <= n; ++i) {
    if ((rng() & 1) == 0) continue;
    if (spec.simple_style) {
      cs.push_back({{i}, {0, weight(true)}});
    } else {
      std::vector<Value> table(static_cast<std::size_t>(spec.domain));
      bool zero = true;
      for (int tries = 0; tries < 10000 && zero; ++tries) {
        for (Value& t : table) {
          t = weight(false);
          zero = zero && t == 0;
        }
      }
      cs.push_back({{i}, std::move(table)});
    }
  }
  for (auto [i, j] : edges) {
    if (spec.simple_style) {
      cs.push_back({{i, j}, {0, 0, 0, weight(true)}});
    } else {
      std::vector<Value> table(static_cast<std::size_t>(spec.domain) *
                               static_cast<std::size_t>(spec.domain));
      bool zero = true;
      for (int tries = 0; tries < 10000 && zero; ++tries) {
        for (Value& t : table) {
          t = weight(false);
          zero = zero && t == 0;
        }
      }
      if (zero) throw Error(ErrorCode::Internal, "table resampling failed");
      cs.push_back({{i, j}, std::move(table)});
    }
  }

  std::ostringstream name;
  name << "random(n=" << n << ",shape=" << shape_name(spec.shape) << ",seed=" << seed << ')';
  return VcspInstance(n, std::vector<int>(static_cast<std::size_t>(n), spec.domain), std::move(cs),
                      name.str());
}

}  // namespace vcsp
