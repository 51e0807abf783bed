#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "vcsp/acceptance.hpp"
#include "vcsp/core.hpp"
#include "vcsp/dynamics.hpp"
#include "vcsp/gen.hpp"
#include "vcsp/graph.hpp"
#include "vcsp/io.hpp"
#include "vcsp/normal.hpp"
#include "vcsp/span.hpp"

namespace {

using nlohmann::json;

struct Options {
  std::string input = "-";
  std::string output = "-";
  std::uint64_t seed = 0;
  std::uint64_t max_vertices = vcsp::kDefaultMaxVertices;
  std::uint64_t step_limit = vcsp::kDefaultStepLimit;
  std::string policy = "first";
  std::string format = "json";
  bool format_given = false;
  bool force = false;
};

void add_common(CLI::App* cmd, Options& opts) {
  cmd->add_option("-i,--input", opts.input, "Instance file, or - for standard input");
  cmd->add_option("-o,--output", opts.output, "Output file, or - for standard output");
  cmd->add_option("--seed", opts.seed, "Seed for randomised behaviour");
  cmd->add_option("--max-vertices", opts.max_vertices,
                  "Largest assignment space that will be enumerated (default 2^22)");
  cmd->add_option("--step-limit", opts.step_limit, "Largest number of search steps (default 2^20)");
  cmd->add_option("--policy", opts.policy, "Move policy: steepest, first, random, or worst")
      ->check(CLI::IsMember({"steepest", "first", "random", "worst"}));
  cmd->add_option("--format", opts.format, "Output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->each([&opts](const std::string&) { opts.format_given = true; });
  cmd->add_flag("--force", opts.force, "Lift the vertex and step budgets to their hard maxima");
}

void apply_force(Options& opts) {
  if (!opts.force) return;
  opts.max_vertices = (std::uint64_t{1} << 31) - 1;
  opts.step_limit = std::uint64_t{1} << 62;
}

std::string read_stream(std::istream& in) {
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::string read_input(const std::string& path) {
  if (path == "-") return read_stream(std::cin);
  std::ifstream in(path, std::ios::binary);
  if (!in) throw vcsp::Error(vcsp::ErrorCode::IoError, "cannot open " + path);
  return read_stream(in);
}

void write_output(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw vcsp::Error(vcsp::ErrorCode::IoError, "cannot open " + path);
  out << text;
  if (!out) throw vcsp::Error(vcsp::ErrorCode::IoError, "cannot write " + path);
}

vcsp::VcspInstance load_instance(const Options& opts) {
  return vcsp::parse_instance(read_input(opts.input));
}

long long parse_int_arg(const std::string& text) {
  std::size_t pos = 0;
  long long value = 0;
  try {
    value = std::stoll(text, &pos);
  } catch (...) {
    pos = 0;
  }
  if (pos != text.size() || text.empty())
    throw vcsp::Error(vcsp::ErrorCode::BadConfig, "not an integer: " + text);
  return value;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

/// One-row table: either a JSON object or a CSV header + data line.
std::string render_row(const Options& opts,
                       const std::vector<std::pair<std::string, json>>& fields) {
  if (opts.format == "csv") {
    std::string head, row;
    for (const auto& [key, value] : fields) {
      if (!head.empty()) {
        head += ',';
        row += ',';
      }
      head += key;
      row += csv_escape(value.is_string() ? value.get<std::string>() : value.dump());
    }
    return head + '\n' + row + '\n';
  }
  json out;
  for (const auto& [key, value] : fields) out[key] = value;
  return out.dump(2) + "\n";
}

json witness_json(const vcsp::VcspInstance& instance,
                  const std::optional<vcsp::Assignment>& witness) {
  if (!witness) return nullptr;
  return vcsp::format_assignment(instance, *witness);
}

int run_eval(const Options& opts, const std::string& assign) {
  const vcsp::VcspInstance x = load_instance(opts);
  const vcsp::Assignment a = vcsp::parse_assignment(x, assign);
  write_output(opts.output, render_row(opts, {{"assignment", vcsp::format_assignment(x, a)},
                                              {"fitness", x.evaluate(a)}}));
  return 0;
}

int run_simplify(const Options& opts) {
  const vcsp::VcspInstance x = load_instance(opts);
  write_output(opts.output, vcsp::serialize_instance(vcsp::simplify(x).to_vcsp(x.name())));
  return 0;
}

int run_trim(const Options& opts) {
  const vcsp::VcspInstance x = load_instance(opts);
  const auto simple = vcsp::SimpleInstance::from_vcsp(x);
  if (!simple)
    throw vcsp::Error(vcsp::ErrorCode::NotSimple,
                      "input is not in simple form; run simplify first");
  write_output(opts.output,
               vcsp::serialize_instance(vcsp::trim(*simple, opts.max_vertices).to_vcsp(x.name())));
  return 0;
}

int run_normalize(const Options& opts) {
  const vcsp::VcspInstance x = load_instance(opts);
  const vcsp::SimpleInstance trimmed = vcsp::trim(vcsp::simplify(x), opts.max_vertices);
  write_output(opts.output, vcsp::serialize_instance(trimmed.to_vcsp(x.name())));
  return 0;
}

int run_span(const Options& opts) {
  const vcsp::VcspInstance x = load_instance(opts);
  write_output(opts.output, render_row(opts, {{"span", vcsp::span(x)},
                                              {"unary_span", vcsp::span_arity(x, 1)},
                                              {"binary_span", vcsp::span_arity(x, 2)}}));
  return 0;
}

int run_minspan(const Options& opts) {
  const vcsp::VcspInstance x = load_instance(opts);
  const vcsp::MinimizeSpanResult r =
      vcsp::minimize_span(x, opts.max_vertices, opts.force ? 62 : vcsp::kDefaultDegreeLimit);
  if (opts.format == "csv") {
    write_output(opts.output, render_row(opts, {{"original_span", r.original_span},
                                                {"trimmed_span", r.trimmed_span},
                                                {"minimized_span", r.minimized_span},
                                                {"solver_nodes", r.solver_nodes}}));
    return 0;
  }
  json out;
  out["original_span"] = r.original_span;
  out["trimmed_span"] = r.trimmed_span;
  out["minimized_span"] = r.minimized_span;
  out["solver_nodes"] = r.solver_nodes;
  out["instance"] = json::parse(vcsp::serialize_instance(r.minimized.to_vcsp(x.name())));
  write_output(opts.output, out.dump(2) + "\n");
  return 0;
}

int run_graph_stats(const Options& opts) {
  const vcsp::VcspInstance x = load_instance(opts);
  const vcsp::FitnessGraph g = vcsp::FitnessGraph::build(x, opts.max_vertices);
  std::uint64_t max_out = 0;
  vcsp::Value lo = g.fitness(0), hi = g.fitness(0);
  for (std::uint64_t v = 0; v < g.vertex_count(); ++v) {
    max_out = std::max(max_out, g.out_degree(v));
    lo = std::min(lo, g.fitness(v));
    hi = std::max(hi, g.fitness(v));
  }
  write_output(opts.output,
               render_row(opts, {{"vertices", g.vertex_count()},
                                 {"edges", g.edge_count()},
                                 {"local_optima", g.local_optima().size()},
                                 {"max_out_degree", max_out},
                                 {"min_fitness", lo},
                                 {"max_fitness", hi}}));
  return 0;
}

int run_longest_path(const Options& opts) {
  const vcsp::VcspInstance x = load_instance(opts);
  const vcsp::FitnessGraph g = vcsp::FitnessGraph::build(x, opts.max_vertices);
  const auto longest = g.longest_improving_path();
  if (!opts.format_given) {
    write_output(opts.output, std::to_string(longest.length) + "\n");
    return 0;
  }
  if (opts.format == "csv") {
    write_output(opts.output, render_row(opts, {{"length", longest.length}}));
    return 0;
  }
  json states = json::array();
  for (vcsp::AssignmentCode code : longest.witness)
    states.push_back(vcsp::format_assignment(x, vcsp::code_assignment(x, code)));
  json out;
  out["length"] = longest.length;
  out["witness"] = std::move(states);
  write_output(opts.output, out.dump(2) + "\n");
  return 0;
}

int run_search(const Options& opts, const std::string& start_text) {
  const vcsp::VcspInstance x = load_instance(opts);
  vcsp::Assignment start{std::vector<int>(static_cast<std::size_t>(x.n()), 0)};
  if (!start_text.empty()) start = vcsp::parse_assignment(x, start_text);
  vcsp::SearchPolicy policy;
  policy.kind = vcsp::parse_policy(opts.policy);
  policy.seed = opts.seed;
  policy.step_limit = opts.step_limit;
  const vcsp::Trace trace = vcsp::run_search(x, start, policy);
  write_output(opts.output, vcsp::trace_to_jsonl(trace));
  return trace.hit_step_limit ? 2 : 0;
}

int run_analyze_trace(const Options& opts, const std::string& instance_path) {
  const vcsp::VcspInstance x = vcsp::parse_instance(read_input(instance_path));
  const vcsp::Trace trace = vcsp::trace_from_jsonl(x, read_input(opts.input));
  const vcsp::EncouragementForest forest = vcsp::encouragement_forest(trace);
  const vcsp::TraceReport report = vcsp::verify_trace_properties(trace, forest);
  if (opts.format == "csv") {
    std::string text = "name,pass,witness,detail\n";
    for (const vcsp::PropertyCheck& check : report.checks) {
      std::string witness;
      for (int step : check.witness) witness += (witness.empty() ? "" : " ") + std::to_string(step);
      text += check.name + ',' + (check.pass ? "true" : "false") + ',' + csv_escape(witness) + ',' +
              csv_escape(check.detail) + '\n';
    }
    write_output(opts.output, text);
    return report.all_pass ? 0 : 3;
  }
  json out;
  out["length"] = trace.length();
  json flips = json::array();
  for (int t = 1; t < trace.length(); ++t) flips.push_back(vcsp::flip_to_string(trace.flip(t)));
  out["flips"] = std::move(flips);
  json parents = json::array();
  for (int t = 1; t < trace.length(); ++t) parents.push_back(forest.parent_of(t));
  out["forest"] = std::move(parents);
  out["chains"] = vcsp::forest_chains(trace, forest);
  json checks = json::array();
  for (const vcsp::PropertyCheck& check : report.checks) {
    json c;
    c["name"] = check.name;
    c["pass"] = check.pass;
    c["witness"] = check.witness;
    c["detail"] = check.detail;
    checks.push_back(std::move(c));
  }
  out["properties"] = std::move(checks);
  out["all_pass"] = report.all_pass;
  out["hit_step_limit"] = trace.hit_step_limit;
  write_output(opts.output, out.dump(2) + "\n");
  return report.all_pass ? 0 : 3;
}

int run_equiv(const Options& opts, const std::string& mode, const std::string& other_path) {
  const vcsp::VcspInstance a = load_instance(opts);
  const vcsp::VcspInstance b = vcsp::parse_instance(read_input(other_path));
  const vcsp::EquivalenceReport report = mode == "magnitude"
                                             ? vcsp::magnitude_equivalent(a, b, opts.max_vertices)
                                             : vcsp::sign_equivalent(a, b, opts.max_vertices);
  std::vector<std::pair<std::string, json>> fields = {{"mode", mode}, {"equal", report.equal}};
  fields.emplace_back("witness", witness_json(a, report.witness));
  if (report.kind == vcsp::EquivalenceReport::Kind::Sign && report.witness) {
    fields.emplace_back("witness_var", report.witness_var);
    fields.emplace_back("witness_value", report.witness_value);
  }
  write_output(opts.output, render_row(opts, fields));
  return 0;
}

int run_sign_interact(const Options& opts, int i, int j) {
  const vcsp::VcspInstance x = load_instance(opts);
  const vcsp::SignDependence ij = vcsp::sign_depends(x, i, j, opts.max_vertices);
  const vcsp::SignDependence ji = vcsp::sign_depends(x, j, i, opts.max_vertices);
  write_output(opts.output,
               render_row(opts, {{"i", i},
                                 {"j", j},
                                 {"interact", ij.depends || ji.depends},
                                 {"i_depends_on_j", ij.depends},
                                 {"j_depends_on_i", ji.depends},
                                 {"witness", witness_json(x, ij.depends ? ij.witness : ji.witness)}}));
  return 0;
}

struct GenFlags {
  std::string shape = "random";
  double density = 0.3;
  vcsp::Value wmin = -8;
  vcsp::Value wmax = 8;
  std::string style = "general";
  int domain = 2;
  bool decomposition = false;
};

int run_gen(const Options& opts, const GenFlags& flags, const std::string& family,
            const std::vector<std::string>& args) {
  auto need = [&](std::size_t count) {
    if (args.size() != count)
      throw vcsp::Error(vcsp::ErrorCode::BadConfig,
                        family + " expects " + std::to_string(count) + " argument(s)");
  };
  if (family == "quadratic_path") {
    need(1);
    write_output(opts.output,
                 vcsp::serialize_instance(vcsp::quadratic_path(
                     static_cast<int>(parse_int_arg(args[0])))));
    return 0;
  }
  if (family == "domain3_counting") {
    need(1);
    write_output(opts.output,
                 vcsp::serialize_instance(vcsp::domain3_counting(
                     static_cast<int>(parse_int_arg(args[0])))));
    return 0;
  }
  if (family == "treewidth2_counting") {
    need(1);
    const int k = static_cast<int>(parse_int_arg(args[0]));
    if (flags.decomposition) {
      const vcsp::TreeDecomposition td = vcsp::treewidth2_decomposition(k);
      json out;
      out["bags"] = td.bags;
      json edges = json::array();
      for (auto [p, q] : td.edges) edges.push_back(json::array({p, q}));
      out["edges"] = std::move(edges);
      out["width"] = td.width();
      write_output(opts.output, out.dump(2) + "\n");
      return 0;
    }
    write_output(opts.output, vcsp::serialize_instance(vcsp::treewidth2_counting(k)));
    return 0;
  }
  if (family == "subsetsum_star") {
    need(2);
    std::vector<vcsp::Value> values;
    std::string item;
    std::istringstream list(args[0]);
    while (std::getline(list, item, ',')) values.push_back(parse_int_arg(item));
    write_output(opts.output, vcsp::serialize_instance(
                                  vcsp::subsetsum_star(values, parse_int_arg(args[1]))));
    return 0;
  }
  if (family == "random") {
    need(1);
    vcsp::RandomSpec spec;
    spec.n = static_cast<int>(parse_int_arg(args[0]));
    spec.shape = vcsp::parse_shape(flags.shape);
    spec.density = flags.density;
    spec.wmin = flags.wmin;
    spec.wmax = flags.wmax;
    spec.simple_style = flags.style == "simple";
    spec.domain = flags.domain;
    write_output(opts.output, vcsp::serialize_instance(vcsp::random_instance(spec, opts.seed)));
    return 0;
  }
  throw vcsp::Error(vcsp::ErrorCode::BadConfig, "unknown family: " + family);
}

int run_verify_paper(const Options& opts) {
  const vcsp::AcceptanceReport report = vcsp::run_all(opts.seed);
  write_output(opts.output, vcsp::render_report(report));
  return report.all_pass ? 0 : 3;
}

int exit_code_for(vcsp::ErrorCode code) {
  switch (code) {
    case vcsp::ErrorCode::SizeLimit:
    case vcsp::ErrorCode::DegreeLimit:
      return 2;
    default:
      return 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Valued-constraint fitness landscape toolkit"};
  app.require_subcommand(1);
  Options opts;

  std::string assign;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate an assignment's fitness");
  add_common(eval, opts);
  eval->add_option("--assign", assign, "Assignment to evaluate")->required();

  CLI::App* simplify = app.add_subcommand("simplify", "Rewrite into magnitude-preserving simple form");
  add_common(simplify, opts);

  CLI::App* trim = app.add_subcommand("trim", "Drop simple-form weights between sign-independent variables");
  add_common(trim, opts);

  CLI::App* normalize = app.add_subcommand("normalize", "Simplify, then trim");
  add_common(normalize, opts);

  CLI::App* span = app.add_subcommand("span", "Sum of per-constraint value ranges");
  add_common(span, opts);

  CLI::App* minspan = app.add_subcommand("minspan", "Minimise span over sign-equivalent reweightings");
  add_common(minspan, opts);

  CLI::App* stats = app.add_subcommand("graph-stats", "Fitness graph summary");
  add_common(stats, opts);

  CLI::App* longest = app.add_subcommand("longest-path", "Length of the longest improving path");
  add_common(longest, opts);

  std::string start_text;
  CLI::App* search = app.add_subcommand("search", "Walk improving flips and emit the trace");
  add_common(search, opts);
  search->add_option("--start", start_text, "Start assignment (default all zeros)");

  std::string instance_path;
  CLI::App* analyze = app.add_subcommand("analyze-trace", "Flips, encouragement forest, and property checks of a trace");
  add_common(analyze, opts);
  analyze->add_option("--instance", instance_path, "Instance the trace walks on")->required();

  std::string mode, other_path;
  CLI::App* equiv = app.add_subcommand("equiv", "Compare two instances");
  add_common(equiv, opts);
  equiv->add_option("mode", mode, "magnitude or sign")
      ->required()
      ->check(CLI::IsMember({"magnitude", "sign"}));
  equiv->add_option("--other", other_path, "Second instance file")->required();

  int var_i = 0, var_j = 0;
  CLI::App* interact = app.add_subcommand("sign-interact", "Whether two variables sign-interact");
  add_common(interact, opts);
  interact->add_option("first", var_i, "First variable")->required();
  interact->add_option("second", var_j, "Second variable")->required();

  GenFlags gen_flags;
  std::string family;
  std::vector<std::string> family_args;
  CLI::App* gen = app.add_subcommand("gen", "Emit a generated instance");
  add_common(gen, opts);
  gen->add_option("family", family,
                  "quadratic_path | domain3_counting | treewidth2_counting | subsetsum_star | random")
      ->required();
  gen->add_option("args", family_args, "Family parameters");
  gen->add_option("--shape", gen_flags.shape, "random family: path, cycle, tree, or random")
      ->check(CLI::IsMember({"path", "cycle", "tree", "random"}));
  gen->add_option("--density", gen_flags.density, "random family: edge probability for shape random");
  gen->add_option("--wmin", gen_flags.wmin, "random family: smallest weight");
  gen->add_option("--wmax", gen_flags.wmax, "random family: largest weight");
  gen->add_option("--style", gen_flags.style, "random family: general tables or simple weights")
      ->check(CLI::IsMember({"general", "simple"}));
  gen->add_option("--domain", gen_flags.domain, "random family: domain size");
  gen->add_flag("--decomposition", gen_flags.decomposition,
                "treewidth2_counting: emit the tree decomposition instead of the instance");

  CLI::App* verify = app.add_subcommand("verify-paper", "Run the full acceptance suite");
  add_common(verify, opts);

  CLI11_PARSE(app, argc, argv);
  apply_force(opts);

  try {
    if (*eval) return run_eval(opts, assign);
    if (*simplify) return run_simplify(opts);
    if (*trim) return run_trim(opts);
    if (*normalize) return run_normalize(opts);
    if (*span) return run_span(opts);
    if (*minspan) return run_minspan(opts);
    if (*stats) return run_graph_stats(opts);
    if (*longest) return run_longest_path(opts);
    if (*search) return run_search(opts, start_text);
    if (*analyze) return run_analyze_trace(opts, instance_path);
    if (*equiv) return run_equiv(opts, mode, other_path);
    if (*interact) return run_sign_interact(opts, var_i, var_j);
    if (*gen) return run_gen(opts, gen_flags, family, family_args);
    if (*verify) return run_verify_paper(opts);
  } catch (const vcsp::Error& e) {
    json err;
    err["error"] = vcsp::error_code_name(e.code());
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    json err;
    err["error"] = "INTERNAL";
    err["message"] = e.what();
    std::cerr << err.dump() << "\n";
    return 1;
  }
  return 1;
}
