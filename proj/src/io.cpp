#include "vcsp/io.hpp"

#include <json.hpp>

#include <initializer_list>
#include <limits>
#include <sstream>

namespace vcsp {
namespace {

using nlohmann::json;

Value require_int(const json& j, const std::string& where) {
  if (j.is_number_unsigned()) {
    const std::uint64_t u = j.get<std::uint64_t>();
    if (u <= static_cast<std::uint64_t>(std::numeric_limits<Value>::max()))
      return static_cast<Value>(u);
    throw Error(ErrorCode::Overflow, where + " exceeds the 64-bit signed range");
  }
  if (j.is_number_integer()) return j.get<std::int64_t>();
  throw Error(ErrorCode::BadJson, where + " must be an integer");
}

int require_small_int(const json& j, const std::string& where) {
  const Value v = require_int(j, where);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    throw Error(ErrorCode::BadJson, where + " is out of range");
  return static_cast<int>(v);
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const std::string& where) {
  for (const auto& item : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || item.key() == k;
    if (!ok) throw Error(ErrorCode::BadJson, where + " has unknown key \"" + item.key() + '"');
  }
}

}  // namespace

VcspInstance parse_instance(const std::string& text) {
  const json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::BadJson, "input is not valid JSON");
  if (!j.is_object()) throw Error(ErrorCode::BadJson, "instance must be a JSON object");
  reject_unknown_keys(j, {"n", "domains", "constraints", "name"}, "instance");
  if (!j.contains("n")) throw Error(ErrorCode::BadJson, "instance is missing \"n\"");
  const int n = require_small_int(j.at("n"), "\"n\"");
  if (n < 1) throw Error(ErrorCode::BadDomain, "instance needs at least one variable");

  std::vector<int> domains;
  if (!j.contains("domains")) {
    domains.assign(static_cast<std::size_t>(n), 2);
  } else if (j.at("domains").is_array()) {
    for (const json& d : j.at("domains")) domains.push_back(require_small_int(d, "domain size"));
  } else {
    domains.assign(static_cast<std::size_t>(n), require_small_int(j.at("domains"), "domain size"));
  }

  std::vector<Constraint> constraints;
  if (j.contains("constraints")) {
    if (!j.at("constraints").is_array())
      throw Error(ErrorCode::BadJson, "\"constraints\" must be an array");
    for (const json& c : j.at("constraints")) {
      if (!c.is_object()) throw Error(ErrorCode::BadJson, "constraint must be a JSON object");
      reject_unknown_keys(c, {"scope", "values"}, "constraint");
      if (!c.contains("scope") || !c.at("scope").is_array())
        throw Error(ErrorCode::BadJson, "constraint is missing its \"scope\" array");
      if (!c.contains("values") || !c.at("values").is_array())
        throw Error(ErrorCode::BadJson, "constraint is missing its \"values\" array");
      Constraint out;
      for (const json& v : c.at("scope")) out.scope.push_back(require_small_int(v, "scope entry"));
      for (const json& v : c.at("values")) out.values.push_back(require_int(v, "table value"));
      constraints.push_back(std::move(out));
    }
  }

  std::string name;
  if (j.contains("name")) {
    if (!j.at("name").is_string()) throw Error(ErrorCode::BadJson, "\"name\" must be a string");
    name = j.at("name").get<std::string>();
  }
  return VcspInstance(n, std::move(domains), std::move(constraints), std::move(name));
}

std::string serialize_instance(const VcspInstance& instance) {
  json j;
  j["n"] = instance.n();
  j["domains"] = instance.domains();
  json cs = json::array();
  for (const Constraint& c : instance.constraints()) {
    json jc;
    jc["scope"] = c.scope;
    jc["values"] = c.values;
    cs.push_back(std::move(jc));
  }
  j["constraints"] = std::move(cs);
  if (!instance.name().empty()) j["name"] = instance.name();
  return j.dump(2) + "\n";
}

std::string trace_to_jsonl(const Trace& trace) {
  std::string out;
  const int T = trace.length();
  for (int t = 1; t <= T; ++t) {
    json rec;
    rec["t"] = t;
    rec["assignment"] = format_assignment(trace.instance, trace.assignment(t));
    rec["fitness"] = trace.fitness_at(t);
    if (t < T) rec["flip"] = flip_to_string(trace.flip(t));
    if (t == 1 && trace.seeded) rec["seed"] = trace.seed;
    if (t == T && trace.hit_step_limit) rec["hit_step_limit"] = true;
    out += rec.dump();
    out += '\n';
  }
  return out;
}

Trace trace_from_jsonl(const VcspInstance& instance, const std::string& text) {
  Trace trace{instance, {}, {}, {}, false, false, 0};
  std::istringstream in(text);
  std::string line;
  int t = 0;
  int limit_at = 0;
  std::vector<bool> has_flip;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    ++t;
    const std::string where = "trace line " + std::to_string(t);
    const json rec = json::parse(line, nullptr, false);
    if (rec.is_discarded() || !rec.is_object())
      throw Error(ErrorCode::BadTrace, where + " is not a JSON object");
    reject_unknown_keys(rec, {"t", "assignment", "fitness", "flip", "seed", "hit_step_limit"},
                        where);
    if (!rec.contains("t") || !rec.contains("assignment") || !rec.contains("fitness"))
      throw Error(ErrorCode::BadTrace, where + " is missing t, assignment, or fitness");
    if (require_int(rec.at("t"), where + " step") != t)
      throw Error(ErrorCode::BadTrace, where + " has step index out of sequence");
    if (!rec.at("assignment").is_string())
      throw Error(ErrorCode::BadTrace, where + " assignment must be a string");
    Assignment x = parse_assignment(instance, rec.at("assignment").get<std::string>());
    const Value f = require_int(rec.at("fitness"), where + " fitness");
    if (f != instance.evaluate(x))
      throw Error(ErrorCode::BadTrace, where + " fitness disagrees with the instance");
    trace.assignments.push_back(std::move(x));
    trace.fitness.push_back(f);
    if (rec.contains("flip")) {
      if (!rec.at("flip").is_string())
        throw Error(ErrorCode::BadTrace, where + " flip must be a string");
      trace.flips.push_back(flip_from_string(rec.at("flip").get<std::string>()));
      has_flip.push_back(true);
    } else {
      has_flip.push_back(false);
    }
    if (rec.contains("seed")) {
      if (t != 1) throw Error(ErrorCode::BadTrace, "seed may only appear on the first record");
      const nlohmann::json& seed = rec.at("seed");
      // Seeds use the full unsigned 64-bit range.
      if (seed.is_number_unsigned())
        trace.seed = seed.get<std::uint64_t>();
      else if (seed.is_number_integer() && seed.get<std::int64_t>() >= 0)
        trace.seed = static_cast<std::uint64_t>(seed.get<std::int64_t>());
      else
        throw Error(ErrorCode::BadTrace, "seed must be a non-negative integer");
      trace.seeded = true;
    }
    if (rec.contains("hit_step_limit")) {
      if (!rec.at("hit_step_limit").is_boolean() || !rec.at("hit_step_limit").get<bool>())
        throw Error(ErrorCode::BadTrace, where + " hit_step_limit must be true when present");
      limit_at = t;
    }
  }
  const int T = trace.length();
  if (T == 0) throw Error(ErrorCode::BadTrace, "trace holds no records");
  if (limit_at != 0 && limit_at != T)
    throw Error(ErrorCode::BadTrace, "hit_step_limit may only appear on the final record");
  trace.hit_step_limit = limit_at == T && limit_at != 0;
  for (int s = 1; s <= T; ++s) {
    if (has_flip[static_cast<std::size_t>(s) - 1] != (s < T))
      throw Error(ErrorCode::BadTrace,
                  s < T ? "trace record " + std::to_string(s) + " is missing its flip"
                        : "final trace record must not carry a flip");
  }
  for (int s = 1; s + 1 <= T; ++s) {
    const Assignment& a = trace.assignment(s);
    const Assignment& b = trace.assignment(s + 1);
    const Flip& m = trace.flip(s);
    if (m.var < 1 || m.var > instance.n())
      throw Error(ErrorCode::BadTrace, "flip at step " + std::to_string(s) + " names a bad variable");
    for (int v = 1; v <= instance.n(); ++v) {
      const bool same = a[v] == b[v];
      if (v == m.var ? (same || b[v] != m.value) : !same)
        throw Error(ErrorCode::BadTrace,
                    "assignments at steps " + std::to_string(s) + " and " + std::to_string(s + 1) +
                        " do not differ by the recorded flip");
    }
    if (trace.fitness_at(s + 1) <= trace.fitness_at(s))
      throw Error(ErrorCode::BadTrace, "step " + std::to_string(s) + " does not improve fitness");
  }
  return trace;
}

}  // namespace vcsp
