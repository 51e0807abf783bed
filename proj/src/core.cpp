#include "vcsp/core.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace vcsp {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadJson: return "BAD_JSON";
    case ErrorCode::BadDomain: return "BAD_DOMAIN";
    case ErrorCode::ScopeRange: return "SCOPE_RANGE";
    case ErrorCode::ScopeOrder: return "SCOPE_ORDER";
    case ErrorCode::DuplicateScope: return "DUPLICATE_SCOPE";
    case ErrorCode::TableSize: return "TABLE_SIZE";
    case ErrorCode::BadAssignment: return "BAD_ASSIGNMENT";
    case ErrorCode::SizeLimit: return "SIZE_LIMIT";
    case ErrorCode::DegreeLimit: return "DEGREE_LIMIT";
    case ErrorCode::UnsupportedArity: return "UNSUPPORTED_ARITY";
    case ErrorCode::UnsupportedDomain: return "UNSUPPORTED_DOMAIN";
    case ErrorCode::NotSimple: return "NOT_SIMPLE";
    case ErrorCode::ShapeMismatch: return "SHAPE_MISMATCH";
    case ErrorCode::Overflow: return "OVERFLOW";
    case ErrorCode::Infeasible: return "INFEASIBLE";
    case ErrorCode::GeneratorInvariant: return "GENERATOR_INVARIANT";
    case ErrorCode::BadTrace: return "BAD_TRACE";
    case ErrorCode::BadConfig: return "BAD_CONFIG";
    case ErrorCode::IoError: return "IO_ERROR";
    case ErrorCode::Internal: return "INTERNAL";
  }
  return "UNKNOWN";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

Value checked_add(Value a, Value b) {
  Value r;
  if (__builtin_add_overflow(a, b, &r))
    throw Error(ErrorCode::Overflow, "64-bit overflow in addition");
  return r;
}

Value checked_mul(Value a, Value b) {
  Value r;
  if (__builtin_mul_overflow(a, b, &r))
    throw Error(ErrorCode::Overflow, "64-bit overflow in multiplication");
  return r;
}

Assignment Assignment::with(int var, int value) const {
  Assignment y(*this);
  y.set(var, value);
  return y;
}

namespace {

std::uint64_t table_size_for(const std::vector<int>& scope, const std::vector<int>& domains) {
  std::uint64_t size = 1;
  for (int v : scope) {
    size *= static_cast<std::uint64_t>(domains[static_cast<std::size_t>(v) - 1]);
    if (size > (1ull << 40))
      throw Error(ErrorCode::TableSize, "constraint table would have more than 2^40 entries");
  }
  return size;
}

}  // namespace

VcspInstance::VcspInstance(int n, std::vector<int> domains, std::vector<Constraint> constraints,
                           std::string name)
    : n_(n), domains_(std::move(domains)), constraints_(std::move(constraints)),
      name_(std::move(name)) {
  if (n_ < 1) throw Error(ErrorCode::BadDomain, "instance needs at least one variable");
  if (static_cast<int>(domains_.size()) != n_)
    throw Error(ErrorCode::BadDomain, "domain list length does not match n");
  for (int k = 0; k < n_; ++k) {
    if (domains_[static_cast<std::size_t>(k)] < 2)
      throw Error(ErrorCode::BadDomain,
                  "variable " + std::to_string(k + 1) + " has domain size below 2");
  }
  for (const Constraint& c : constraints_) {
    int prev = 0;
    for (int v : c.scope) {
      if (v < 1 || v > n_)
        throw Error(ErrorCode::ScopeRange,
                    "scope variable " + std::to_string(v) + " outside 1.." + std::to_string(n_));
      if (v <= prev)
        throw Error(ErrorCode::ScopeOrder, "scope must be strictly increasing");
      prev = v;
    }
    std::uint64_t want = table_size_for(c.scope, domains_);
    if (c.values.size() != want)
      throw Error(ErrorCode::TableSize,
                  "table has " + std::to_string(c.values.size()) + " entries, expected " +
                      std::to_string(want));
  }
  std::sort(constraints_.begin(), constraints_.end(),
            [](const Constraint& a, const Constraint& b) { return a.scope < b.scope; });
  for (std::size_t i = 1; i < constraints_.size(); ++i) {
    if (constraints_[i].scope == constraints_[i - 1].scope)
      throw Error(ErrorCode::DuplicateScope, "two constraints share a scope");
  }
  incident_.assign(static_cast<std::size_t>(n_) + 1, {});
  for (std::size_t ci = 0; ci < constraints_.size(); ++ci)
    for (int v : constraints_[ci].scope)
      incident_[static_cast<std::size_t>(v)].push_back(static_cast<int>(ci));
}

int VcspInstance::max_arity() const {
  int m = 0;
  for (const Constraint& c : constraints_) m = std::max(m, c.arity());
  return m;
}

bool VcspInstance::is_boolean() const {
  return std::all_of(domains_.begin(), domains_.end(), [](int d) { return d == 2; });
}

std::uint64_t VcspInstance::vertex_count(std::uint64_t max_vertices) const {
  std::uint64_t v = 1;
  for (int d : domains_) {
    v *= static_cast<std::uint64_t>(d);
    if (v > max_vertices)
      throw Error(ErrorCode::SizeLimit,
                  "assignment space exceeds budget of " + std::to_string(max_vertices) +
                      " vertices");
  }
  return v;
}

void VcspInstance::validate_assignment(const Assignment& x) const {
  if (x.size() != n_)
    throw Error(ErrorCode::BadAssignment,
                "assignment has " + std::to_string(x.size()) + " values, instance has " +
                    std::to_string(n_) + " variables");
  for (int var = 1; var <= n_; ++var) {
    if (x[var] < 0 || x[var] >= domain(var))
      throw Error(ErrorCode::BadAssignment,
                  "variable " + std::to_string(var) + " has value outside its domain");
  }
}

Value VcspInstance::constraint_value(const Constraint& c, const Assignment& x) const {
  std::uint64_t idx = 0;
  for (int v : c.scope)
    idx = idx * static_cast<std::uint64_t>(domain(v)) + static_cast<std::uint64_t>(x[v]);
  return c.values[idx];
}

Value VcspInstance::evaluate(const Assignment& x) const {
  validate_assignment(x);
  Value total = 0;
  for (const Constraint& c : constraints_) total = checked_add(total, constraint_value(c, x));
  return total;
}

Value VcspInstance::flip_delta(const Assignment& x, int var, int value) const {
  Assignment y = x.with(var, value);
  Value delta = 0;
  for (int ci : incident(var)) {
    const Constraint& c = constraints_[static_cast<std::size_t>(ci)];
    delta = checked_add(delta, checked_add(constraint_value(c, y), -constraint_value(c, x)));
  }
  return delta;
}

const std::vector<int>& VcspInstance::incident(int var) const {
  return incident_[static_cast<std::size_t>(var)];
}

const Constraint* VcspInstance::find_scope(const std::vector<int>& scope) const {
  for (const Constraint& c : constraints_)
    if (c.scope == scope) return &c;
  return nullptr;
}

bool VcspInstance::operator==(const VcspInstance& o) const {
  if (n_ != o.n_ || domains_ != o.domains_ || constraints_.size() != o.constraints_.size())
    return false;
  for (std::size_t i = 0; i < constraints_.size(); ++i)
    if (constraints_[i].scope != o.constraints_[i].scope ||
        constraints_[i].values != o.constraints_[i].values)
      return false;
  return name_ == o.name_;
}

bool ConstraintGraph::has_edge(int i, int j) const {
  if (i > j) std::swap(i, j);
  return std::binary_search(edges.begin(), edges.end(), std::make_pair(i, j));
}

int ConstraintGraph::max_degree() const {
  int m = 0;
  for (int v = 1; v <= n; ++v) m = std::max(m, degree(v));
  return m;
}

std::vector<int> ConstraintGraph::components() const {
  std::vector<int> comp(static_cast<std::size_t>(n) + 1, -1);
  int next = 0;
  for (int s = 1; s <= n; ++s) {
    if (comp[static_cast<std::size_t>(s)] >= 0) continue;
    std::vector<int> stack{s};
    comp[static_cast<std::size_t>(s)] = next;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : neighbours[static_cast<std::size_t>(v)]) {
        if (comp[static_cast<std::size_t>(w)] < 0) {
          comp[static_cast<std::size_t>(w)] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return comp;
}

bool ConstraintGraph::connected() const {
  std::vector<int> comp = components();
  for (int v = 1; v <= n; ++v)
    if (comp[static_cast<std::size_t>(v)] != 0) return false;
  return true;
}

bool ConstraintGraph::is_tree() const {
  return connected() && edges.size() == static_cast<std::size_t>(n) - 1;
}

ConstraintGraph constraint_graph(const VcspInstance& instance) {
  if (instance.max_arity() > 2)
    throw Error(ErrorCode::UnsupportedArity, "constraint graph needs arity at most 2");
  ConstraintGraph g;
  g.n = instance.n();
  g.neighbours.assign(static_cast<std::size_t>(g.n) + 1, {});
  for (const Constraint& c : instance.constraints()) {
    if (c.arity() != 2) continue;
    bool nonzero = std::any_of(c.values.begin(), c.values.end(), [](Value v) { return v != 0; });
    if (!nonzero) continue;
    g.edges.emplace_back(c.scope[0], c.scope[1]);
  }
  std::sort(g.edges.begin(), g.edges.end());
  for (auto [i, j] : g.edges) {
    g.neighbours[static_cast<std::size_t>(i)].push_back(j);
    g.neighbours[static_cast<std::size_t>(j)].push_back(i);
  }
  for (auto& ns : g.neighbours) std::sort(ns.begin(), ns.end());
  return g;
}

SimpleInstance::SimpleInstance(int n, Value constant, std::map<int, Value> unary,
                               std::map<std::pair<int, int>, Value> binary)
    : n_(n), constant_(constant), unary_(std::move(unary)), binary_(std::move(binary)) {
  if (n_ < 1) throw Error(ErrorCode::BadDomain, "instance needs at least one variable");
  for (auto it = unary_.begin(); it != unary_.end();) {
    if (it->first < 1 || it->first > n_)
      throw Error(ErrorCode::ScopeRange, "unary weight on variable outside 1..n");
    it = it->second == 0 ? unary_.erase(it) : std::next(it);
  }
  for (auto it = binary_.begin(); it != binary_.end();) {
    auto [i, j] = it->first;
    if (i < 1 || j < 1 || i > n_ || j > n_)
      throw Error(ErrorCode::ScopeRange, "binary weight on variable outside 1..n");
    if (i >= j) throw Error(ErrorCode::ScopeOrder, "binary weight pair must have i < j");
    it = it->second == 0 ? binary_.erase(it) : std::next(it);
  }
}

std::optional<SimpleInstance> SimpleInstance::from_vcsp(const VcspInstance& instance) {
  if (!instance.is_boolean()) return std::nullopt;
  Value constant = 0;
  std::map<int, Value> unary;
  std::map<std::pair<int, int>, Value> binary;
  for (const Constraint& c : instance.constraints()) {
    switch (c.arity()) {
      case 0:
        constant = checked_add(constant, c.values[0]);
        break;
      case 1:
        if (c.values[0] != 0) return std::nullopt;
        if (c.values[1] != 0) unary[c.scope[0]] = c.values[1];
        break;
      case 2:
        if (c.values[0] != 0 || c.values[1] != 0 || c.values[2] != 0) return std::nullopt;
        if (c.values[3] != 0) binary[{c.scope[0], c.scope[1]}] = c.values[3];
        break;
      default:
        return std::nullopt;
    }
  }
  return SimpleInstance(instance.n(), constant, std::move(unary), std::move(binary));
}

VcspInstance SimpleInstance::to_vcsp(std::string name) const {
  std::vector<Constraint> cs;
  if (constant_ != 0) cs.push_back({{}, {constant_}});
  for (auto [i, c] : unary_) cs.push_back({{i}, {0, c}});
  for (auto [ij, c] : binary_) cs.push_back({{ij.first, ij.second}, {0, 0, 0, c}});
  return VcspInstance(n_, std::vector<int>(static_cast<std::size_t>(n_), 2), std::move(cs),
                      std::move(name));
}

Value SimpleInstance::unary_weight(int i) const {
  auto it = unary_.find(i);
  return it == unary_.end() ? 0 : it->second;
}

Value SimpleInstance::binary_weight(int i, int j) const {
  if (i > j) std::swap(i, j);
  auto it = binary_.find({i, j});
  return it == binary_.end() ? 0 : it->second;
}

Value SimpleInstance::span1() const {
  Value s = 0;
  for (auto [i, c] : unary_) s = checked_add(s, std::llabs(c));
  return s;
}

Value SimpleInstance::span2() const {
  Value s = 0;
  for (auto [ij, c] : binary_) s = checked_add(s, std::llabs(c));
  return s;
}

std::string format_assignment(const VcspInstance& instance, const Assignment& x) {
  instance.validate_assignment(x);
  bool digits = true;
  for (int d : instance.domains()) digits = digits && d <= 10;
  std::ostringstream out;
  for (int var = 1; var <= instance.n(); ++var) {
    if (!digits && var > 1) out << ',';
    out << x[var];
  }
  return out.str();
}

Assignment parse_assignment(const VcspInstance& instance, const std::string& text) {
  std::vector<int> values;
  if (text.find(',') != std::string::npos) {
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ','))
      values.push_back(std::atoi(item.c_str()));
  } else {
    for (char ch : text) {
      if (ch < '0' || ch > '9')
        throw Error(ErrorCode::BadAssignment, std::string("bad assignment character '") + ch + "'");
      values.push_back(ch - '0');
    }
  }
  Assignment x(std::move(values));
  instance.validate_assignment(x);
  return x;
}

}  // namespace vcsp
