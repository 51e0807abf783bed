#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

// Core model: integer-valued constraint instances over finite domains,
// their fitness function, and the simple (unary/binary weight) form used
// by the normalisation and span machinery.

namespace vcsp {

using Value = std::int64_t;

inline constexpr std::uint64_t kDefaultMaxVertices = 1ull << 22;
inline constexpr std::uint64_t kDefaultStepLimit = 1ull << 20;
inline constexpr int kDefaultDegreeLimit = 20;

enum class ErrorCode {
  BadJson,
  BadDomain,
  ScopeRange,
  ScopeOrder,
  DuplicateScope,
  TableSize,
  BadAssignment,
  SizeLimit,
  DegreeLimit,
  UnsupportedArity,
  UnsupportedDomain,
  NotSimple,
  ShapeMismatch,
  Overflow,
  Infeasible,
  GeneratorInvariant,
  BadTrace,
  BadConfig,
  IoError,
  Internal,
};

/// Stable machine-readable name ("TABLE_SIZE", "SCOPE_ORDER", ...).
const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

/// 64-bit arithmetic with overflow reported as an error rather than wrapped.
Value checked_add(Value a, Value b);
Value checked_mul(Value a, Value b);

/// Total assignment; values[k] is the value of variable k+1.
struct Assignment {
  std::vector<int> values;

  Assignment() = default;
  explicit Assignment(std::vector<int> v) : values(std::move(v)) {}

  int size() const { return static_cast<int>(values.size()); }
  int operator[](int var) const { return values[static_cast<std::size_t>(var) - 1]; }
  void set(int var, int value) { values[static_cast<std::size_t>(var) - 1] = value; }
  Assignment with(int var, int value) const;

  bool operator==(const Assignment&) const = default;
  bool operator<(const Assignment& o) const { return values < o.values; }
};

/// One valued constraint: a scope of 1-based variable ids (strictly
/// increasing) and a row-major value table with the first scope variable
/// most significant.  A nullary constraint has an empty scope and exactly
/// one table entry.
struct Constraint {
  std::vector<int> scope;
  std::vector<Value> values;

  int arity() const { return static_cast<int>(scope.size()); }
};

class VcspInstance {
public:
  VcspInstance(int n, std::vector<int> domains, std::vector<Constraint> constraints,
               std::string name = {});

  int n() const { return n_; }
  const std::vector<int>& domains() const { return domains_; }
  int domain(int var) const { return domains_[static_cast<std::size_t>(var) - 1]; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::string& name() const { return name_; }

  int max_arity() const;
  bool is_boolean() const;

  /// Product of the domain sizes; SIZE_LIMIT if it exceeds the budget.
  std::uint64_t vertex_count(std::uint64_t max_vertices = kDefaultMaxVertices) const;

  void validate_assignment(const Assignment& x) const;
  Value evaluate(const Assignment& x) const;

  /// f(x[var := value]) - f(x), summing only constraints whose scope
  /// contains var.
  Value flip_delta(const Assignment& x, int var, int value) const;

  /// Indices into constraints() of the constraints touching var.
  const std::vector<int>& incident(int var) const;

  const Constraint* find_scope(const std::vector<int>& scope) const;

  bool operator==(const VcspInstance& o) const;

private:
  int n_;
  std::vector<int> domains_;
  std::vector<Constraint> constraints_;
  std::string name_;
  std::vector<std::vector<int>> incident_;

  Value constraint_value(const Constraint& c, const Assignment& x) const;
};

/// Undirected graph with an edge per binary constraint whose table is not
/// identically zero.  Only defined for instances of arity at most two.
struct ConstraintGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;         // i < j, sorted
  std::vector<std::vector<int>> neighbours;       // neighbours[var], 1-based

  bool has_edge(int i, int j) const;
  int degree(int var) const { return static_cast<int>(neighbours[static_cast<std::size_t>(var)].size()); }
  int max_degree() const;
  bool connected() const;
  bool is_tree() const;
  /// Component id per variable (1-based, component ids start at 0).
  std::vector<int> components() const;
};

ConstraintGraph constraint_graph(const VcspInstance& instance);

/// Boolean instance in simple form: a constant, nonzero unary weights c_i
/// (value added when x_i = 1) and nonzero binary weights c_ij (added when
/// x_i = x_j = 1).  Zero weights are dropped at construction.
class SimpleInstance {
public:
  SimpleInstance(int n, Value constant, std::map<int, Value> unary,
                 std::map<std::pair<int, int>, Value> binary);

  /// Recognise an instance that is literally an embedding of simple form:
  /// Boolean, unary tables (0, c), binary tables [0 0; 0 c], at most one
  /// nullary constraint.  Zero-weight tables are accepted and dropped.
  static std::optional<SimpleInstance> from_vcsp(const VcspInstance& instance);

  VcspInstance to_vcsp(std::string name = {}) const;

  int n() const { return n_; }
  Value constant() const { return constant_; }
  const std::map<int, Value>& unary() const { return unary_; }
  const std::map<std::pair<int, int>, Value>& binary() const { return binary_; }

  Value unary_weight(int i) const;
  Value binary_weight(int i, int j) const;

  /// Sum of |c_i| over stored unary weights.
  Value span1() const;
  /// Sum of |c_ij| over stored binary weights.
  Value span2() const;
  Value span_total() const { return checked_add(span1(), span2()); }

  bool operator==(const SimpleInstance&) const = default;

private:
  int n_;
  Value constant_;
  std::map<int, Value> unary_;
  std::map<std::pair<int, int>, Value> binary_;
};

/// Digit string when every domain has size at most 10 ("1010"),
/// comma-separated values otherwise.
std::string format_assignment(const VcspInstance& instance, const Assignment& x);
Assignment parse_assignment(const VcspInstance& instance, const std::string& text);

}  // namespace vcsp
