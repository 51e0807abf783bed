#include "vcsp/normal.hpp"

#include <algorithm>

#include "vcsp/graph.hpp"

namespace vcsp {

SimpleInstance simplify(const VcspInstance& instance) {
  if (!instance.is_boolean())
    throw Error(ErrorCode::UnsupportedDomain, "simplification is defined for Boolean domains");
  if (instance.max_arity() > 2)
    throw Error(ErrorCode::UnsupportedArity, "simplification is defined for arity at most 2");

  Value constant = 0;
  std::map<int, Value> unary;
  std::map<std::pair<int, int>, Value> binary;
  auto bump = [](std::map<int, Value>& m, int key, Value delta) {
    m[key] = checked_add(m[key], delta);
  };

  for (const Constraint& c : instance.constraints()) {
    switch (c.arity()) {
      case 0:
        constant = checked_add(constant, c.values[0]);
        break;
      case 1:
        constant = checked_add(constant, c.values[0]);
        bump(unary, c.scope[0], checked_add(c.values[1], -c.values[0]));
        break;
      case 2: {
        // Table [T00 T01; T10 T11] with rows indexed by the smaller variable.
        Value t00 = c.values[0], t01 = c.values[1], t10 = c.values[2], t11 = c.values[3];
        constant = checked_add(constant, t00);
        bump(unary, c.scope[0], checked_add(t10, -t00));
        bump(unary, c.scope[1], checked_add(t01, -t00));
        Value w = checked_add(checked_add(t00, -t01), checked_add(-t10, t11));
        if (w != 0) binary[{c.scope[0], c.scope[1]}] = w;
        break;
      }
      default:
        break;
    }
  }
  return SimpleInstance(instance.n(), constant, std::move(unary), std::move(binary));
}

namespace {

void require_same_shape(const VcspInstance& a, const VcspInstance& b) {
  if (a.n() != b.n() || a.domains() != b.domains())
    throw Error(ErrorCode::ShapeMismatch, "instances differ in variable count or domains");
}

}  // namespace

EquivalenceReport magnitude_equivalent(const VcspInstance& a, const VcspInstance& b,
                                       std::uint64_t max_vertices) {
  require_same_shape(a, b);
  EquivalenceReport report;
  report.kind = EquivalenceReport::Kind::Magnitude;
  std::vector<Value> fa = fitness_table(a, max_vertices);
  std::vector<Value> fb = fitness_table(b, max_vertices);
  for (std::uint64_t code = 0; code < fa.size(); ++code) {
    if (fa[code] != fb[code]) {
      report.witness = code_assignment(a, code);
      return report;
    }
  }
  report.equal = true;
  return report;
}

EquivalenceReport sign_equivalent(const VcspInstance& a, const VcspInstance& b,
                                  std::uint64_t max_vertices) {
  require_same_shape(a, b);
  EquivalenceReport report;
  report.kind = EquivalenceReport::Kind::Sign;
  std::vector<Value> fa = fitness_table(a, max_vertices);
  std::vector<Value> fb = fitness_table(b, max_vertices);

  int n = a.n();
  std::vector<std::uint64_t> place(static_cast<std::size_t>(n) + 1, 1);
  for (int var = n - 1; var >= 1; --var)
    place[static_cast<std::size_t>(var)] =
        place[static_cast<std::size_t>(var) + 1] * static_cast<std::uint64_t>(a.domain(var + 1));

  for (std::uint64_t code = 0; code < fa.size(); ++code) {
    std::uint64_t rest = code;
    for (int var = n; var >= 1; --var) {
      std::uint64_t d = static_cast<std::uint64_t>(a.domain(var));
      int value = static_cast<int>(rest % d);
      rest /= d;
      for (int target = 0; target < static_cast<int>(d); ++target) {
        if (target == value) continue;
        std::uint64_t other =
            code + (static_cast<std::uint64_t>(target) - static_cast<std::uint64_t>(value)) *
                       place[static_cast<std::size_t>(var)];
        bool edge_a = fa[other] > fa[code];
        bool edge_b = fb[other] > fb[code];
        if (edge_a != edge_b) {
          report.witness = code_assignment(a, code);
          report.witness_var = var;
          report.witness_value = target;
          return report;
        }
      }
    }
  }
  report.equal = true;
  return report;
}

SimpleInstance trim_with_report(const SimpleInstance& instance, TrimReport& report,
                                std::uint64_t max_vertices) {
  report = {};
  VcspInstance embedded = instance.to_vcsp();
  std::vector<Value> fit = fitness_table(embedded, max_vertices);

  std::map<std::pair<int, int>, Value> kept;
  for (auto [ij, w] : instance.binary()) {
    auto [i, j] = ij;
    SignDependence d = sign_depends_on_table(fit, instance.n(), i, j);
    int from = i, to = j;
    if (!d.depends) {
      d = sign_depends_on_table(fit, instance.n(), j, i);
      from = j;
      to = i;
    }
    if (d.depends) {
      kept[ij] = w;
      report.retained.push_back({i, j, from, to, *d.witness});
    } else {
      report.removed.emplace_back(i, j);
    }
  }

  SimpleInstance result(instance.n(), instance.constant(), instance.unary(), std::move(kept));
  EquivalenceReport eq = sign_equivalent(embedded, result.to_vcsp(), max_vertices);
  if (!eq.equal)
    throw Error(ErrorCode::Internal, "trim produced a sign-inequivalent instance");
  return result;
}

SimpleInstance trim(const SimpleInstance& instance, std::uint64_t max_vertices) {
  TrimReport report;
  return trim_with_report(instance, report, max_vertices);
}

}  // namespace vcsp
