#include "vcsp/graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace vcsp {

namespace {

std::vector<std::uint64_t> place_values(const VcspInstance& instance) {
  int n = instance.n();
  std::vector<std::uint64_t> place(static_cast<std::size_t>(n) + 1, 1);
  for (int var = n - 1; var >= 1; --var)
    place[static_cast<std::size_t>(var)] =
        place[static_cast<std::size_t>(var) + 1] *
        static_cast<std::uint64_t>(instance.domain(var + 1));
  return place;
}

}  // namespace

AssignmentCode assignment_code(const VcspInstance& instance, const Assignment& x) {
  instance.validate_assignment(x);
  AssignmentCode code = 0;
  for (int var = 1; var <= instance.n(); ++var)
    code = code * static_cast<std::uint64_t>(instance.domain(var)) +
           static_cast<std::uint64_t>(x[var]);
  return code;
}

Assignment code_assignment(const VcspInstance& instance, AssignmentCode code) {
  int n = instance.n();
  std::vector<int> values(static_cast<std::size_t>(n));
  for (int var = n; var >= 1; --var) {
    std::uint64_t d = static_cast<std::uint64_t>(instance.domain(var));
    values[static_cast<std::size_t>(var) - 1] = static_cast<int>(code % d);
    code /= d;
  }
  return Assignment(std::move(values));
}

std::vector<Value> fitness_table(const VcspInstance& instance, std::uint64_t max_vertices) {
  std::uint64_t count = instance.vertex_count(max_vertices);
  std::vector<Value> fit(count);
  Assignment x(std::vector<int>(static_cast<std::size_t>(instance.n()), 0));
  for (std::uint64_t code = 0;; ++code) {
    fit[code] = instance.evaluate(x);
    // Odometer step in code order: increment the least significant variable.
    int var = instance.n();
    while (var >= 1) {
      int v = x[var] + 1;
      if (v < instance.domain(var)) {
        x.set(var, v);
        break;
      }
      x.set(var, 0);
      --var;
    }
    if (var == 0) break;
  }
  return fit;
}

FitnessGraph::FitnessGraph(VcspInstance instance) : instance_(std::move(instance)) {}

FitnessGraph FitnessGraph::build(const VcspInstance& instance, std::uint64_t max_vertices) {
  std::uint64_t count = instance.vertex_count(max_vertices);
  if (count > (1ull << 31))
    throw Error(ErrorCode::SizeLimit, "fitness graph supports at most 2^31 vertices");
  FitnessGraph g(instance);
  g.fitness_ = fitness_table(instance, max_vertices);
  g.place_ = place_values(instance);

  int n = instance.n();
  auto flips_of = [&](AssignmentCode code, auto&& emit) {
    AssignmentCode rest = code;
    for (int var = n; var >= 1; --var) {
      std::uint64_t d = static_cast<std::uint64_t>(instance.domain(var));
      int value = static_cast<int>(rest % d);
      rest /= d;
      std::uint64_t place = g.place_[static_cast<std::size_t>(var)];
      for (int b = 0; b < static_cast<int>(d); ++b) {
        if (b == value) continue;
        emit(code + (static_cast<std::uint64_t>(b) - static_cast<std::uint64_t>(value)) * place);
      }
    }
  };

  g.offsets_.assign(count + 1, 0);
  for (AssignmentCode v = 0; v < count; ++v) {
    std::uint64_t deg = 0;
    flips_of(v, [&](AssignmentCode w) {
      if (g.fitness_[w] > g.fitness_[v]) ++deg;
    });
    g.offsets_[v + 1] = g.offsets_[v] + deg;
  }
  g.targets_.resize(g.offsets_[count]);
  for (AssignmentCode v = 0; v < count; ++v) {
    std::uint64_t at = g.offsets_[v];
    flips_of(v, [&](AssignmentCode w) {
      if (g.fitness_[w] > g.fitness_[v]) g.targets_[at++] = static_cast<std::uint32_t>(w);
    });
    std::sort(g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]),
              g.targets_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]));
  }
  return g;
}

std::span<const std::uint32_t> FitnessGraph::out_neighbours(AssignmentCode v) const {
  return {targets_.data() + offsets_[v], targets_.data() + offsets_[v + 1]};
}

std::uint64_t FitnessGraph::out_degree(AssignmentCode v) const {
  return offsets_[v + 1] - offsets_[v];
}

bool FitnessGraph::has_edge(AssignmentCode from, AssignmentCode to) const {
  auto ns = out_neighbours(from);
  return std::binary_search(ns.begin(), ns.end(), static_cast<std::uint32_t>(to));
}

std::vector<AssignmentCode> FitnessGraph::local_optima() const {
  std::vector<AssignmentCode> result;
  for (AssignmentCode v = 0; v < vertex_count(); ++v)
    if (out_degree(v) == 0) result.push_back(v);
  return result;
}

FitnessGraph::LongestPath FitnessGraph::longest_improving_path() const {
  std::uint64_t count = vertex_count();
  std::vector<std::uint32_t> order(count);
  std::iota(order.begin(), order.end(), 0u);
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (fitness_[a] != fitness_[b]) return fitness_[a] < fitness_[b];
    return a < b;
  });

  constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> dist(count, 0);
  std::vector<std::uint32_t> pred(count, kNone);
  // Edges strictly increase fitness, so (fitness, code) order is topological.
  for (std::uint32_t u : order) {
    for (std::uint32_t w : out_neighbours(u)) {
      std::uint32_t cand = dist[u] + 1;
      if (cand > dist[w] || (cand == dist[w] && pred[w] != kNone && u < pred[w])) {
        dist[w] = cand;
        pred[w] = u;
      }
    }
  }

  std::uint32_t best = 0;
  std::uint64_t best_len = 0;
  for (std::uint64_t v = 0; v < count; ++v) {
    if (dist[v] > best_len) {
      best_len = dist[v];
      best = static_cast<std::uint32_t>(v);
    }
  }

  LongestPath result;
  result.length = best_len;
  std::uint32_t at = best;
  result.witness.push_back(at);
  while (pred[at] != kNone) {
    at = pred[at];
    result.witness.push_back(at);
  }
  std::reverse(result.witness.begin(), result.witness.end());
  return result;
}

SignDependence sign_depends_on_table(const std::vector<Value>& fitness, int n, int i, int j) {
  if (i == j) throw Error(ErrorCode::BadConfig, "sign dependence needs two distinct variables");
  std::uint64_t count = fitness.size();
  std::uint64_t bit_i = 1ull << (n - i);
  std::uint64_t bit_j = 1ull << (n - j);
  for (std::uint64_t x = 0; x < count; ++x) {
    Value d0 = fitness[x ^ bit_i] - fitness[x];
    if (d0 <= 0) continue;
    Value d1 = fitness[(x ^ bit_i) ^ bit_j] - fitness[x ^ bit_j];
    if (d1 <= 0) {
      SignDependence r;
      r.depends = true;
      std::vector<int> values(static_cast<std::size_t>(n));
      for (int var = 1; var <= n; ++var)
        values[static_cast<std::size_t>(var) - 1] =
            static_cast<int>((x >> (n - var)) & 1ull);
      r.witness = Assignment(std::move(values));
      return r;
    }
  }
  return {};
}

SignDependence sign_depends(const VcspInstance& instance, int i, int j,
                            std::uint64_t max_vertices) {
  if (!instance.is_boolean())
    throw Error(ErrorCode::UnsupportedDomain, "sign dependence is defined for Boolean domains");
  if (i < 1 || i > instance.n() || j < 1 || j > instance.n())
    throw Error(ErrorCode::ScopeRange, "variable outside 1..n");
  std::vector<Value> fit = fitness_table(instance, max_vertices);
  return sign_depends_on_table(fit, instance.n(), i, j);
}

bool sign_interact(const VcspInstance& instance, int i, int j, std::uint64_t max_vertices) {
  if (!instance.is_boolean())
    throw Error(ErrorCode::UnsupportedDomain, "sign interaction is defined for Boolean domains");
  if (i < 1 || i > instance.n() || j < 1 || j > instance.n())
    throw Error(ErrorCode::ScopeRange, "variable outside 1..n");
  std::vector<Value> fit = fitness_table(instance, max_vertices);
  return sign_depends_on_table(fit, instance.n(), i, j).depends ||
         sign_depends_on_table(fit, instance.n(), j, i).depends;
}

}  // namespace vcsp
