#include "polysize/inference.h"

#include <algorithm>
#include <functional>
#include <set>

#include "polysize/desugar.h"
#include "polysize/inhabitant.h"
#include "polysize/interpolate.h"
#include "polysize/restriction.h"

namespace polysize {

Value generate_input(const SizedType& param,
                     const std::map<std::string, std::int64_t>& sizes,
                     std::int64_t& next_element, Heap& heap) {
  if (param.is_int()) return Value::from_int(1);
  if (param.is_var()) return Value::from_int(next_element++);
  Valuation point;
  for (const auto& [v, n] : sizes) point[v] = static_cast<long>(n);
  Rational len = param.size().evaluate(point);
  if (!is_integer(len) || len < 0)
    throw InferenceError("IncompleteMeasurement",
                         "input size " + param.size().to_string() +
                             " is not a natural number");
  std::int64_t n = len.get_num().get_si();
  std::vector<Value> heads;
  heads.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    if (param.elem().is_list())
      heads.push_back(generate_input(param.elem(), sizes, next_element, heap));
    else
      heads.push_back(Value::from_int(next_element++));
  }
  Value out = Value::null();
  for (auto it = heads.rbegin(); it != heads.rend(); ++it)
    out = Value::location(heap.alloc(*it, out));
  return out;
}

namespace {

Measurement measure(const std::string& f, const TypeTemplate& tmpl,
                    const Node& node, Interpreter& interp,
                    const InferenceConfig& config) {
  std::map<std::string, std::int64_t> sizes;
  for (std::size_t i = 0; i < tmpl.size_vars.size(); ++i)
    sizes[tmpl.size_vars[i]] = node[i];
  Heap heap;
  std::int64_t next = config.seed;
  std::vector<Value> args;
  Measurement m;
  m.node = node;
  for (const auto& p : tmpl.type.params) {
    args.push_back(generate_input(p, sizes, next, heap));
    m.inputs.push_back(read_value(args.back(), heap));
  }
  Value out = interp.call(f, args, heap);
  m.output = read_value(out, heap);
  m.sizes = measure_sizes(out, heap, static_cast<int>(tmpl.placeholders.size()));
  return m;
}

}  // namespace

Candidate get_size_aware_type(int d, const std::string& f,
                              const TypeTemplate& tmpl, Interpreter& interp,
                              const InferenceConfig& config) {
  const int k = static_cast<int>(tmpl.size_vars.size());
  Candidate out;
  std::vector<Polynomial> derived;
  for (std::size_t j = 0; j < tmpl.placeholders.size(); ++j) {
    LevelReport level;
    level.level = static_cast<int>(j) + 1;
    level.placeholder = tmpl.placeholders[j];
    level.degree = d;
    if (j > 0 && derived.back().is_zero()) {
      level.zero_shortcut = true;
      derived.push_back(Polynomial{});
      out.levels.push_back(std::move(level));
      continue;
    }
    level.nodes = nca_nodes_growing(k, d, derived, tmpl.size_vars,
                                    config.growth_limit);
    std::vector<Rational> values;
    for (const auto& node : level.nodes.nodes) {
      Measurement m = measure(f, tmpl, node, interp, config);
      const LevelSize& s = m.sizes[j];
      if (!s.known) {
        std::string at;
        for (std::size_t i = 0; i < node.size(); ++i)
          at += (i ? "," : "") + std::to_string(node[i]);
        throw InferenceError("IncompleteMeasurement",
                             "level " + std::to_string(j + 1) +
                                 " of the output is empty at (" + at + ")");
      }
      values.push_back(Rational(static_cast<long>(s.length)));
      level.rows.push_back(std::move(m));
    }
    level.derived = derive_polynomial(d, tmpl.size_vars, level.nodes.nodes,
                                      values);
    derived.push_back(level.derived);
    out.levels.push_back(std::move(level));
  }
  std::map<std::string, Polynomial> subst;
  for (std::size_t j = 0; j < derived.size(); ++j)
    subst[tmpl.placeholders[j]] = derived[j];
  out.type = tmpl.type;
  out.type.result = out.type.result.substitute_sizes(subst);
  return out;
}

namespace {

std::string classify(const std::string& kind) {
  if (kind == "BudgetExhausted")
    return "evaluation did not terminate within the budget on a test input";
  if (kind == "NonShapelyObservation")
    return "the output is not shapely: lists at one level differ in length";
  if (kind == "Rejected")
    return "the checker rejected every candidate up to the degree cap; the "
           "size may not be polynomial or the checker may be incomplete";
  if (kind == "IncompleteMeasurement" || kind == "SingularSystem" ||
      kind == "NodeSearchExhausted")
    return "no consistent measurements could be obtained up to the degree cap";
  return "evaluation failed on a test input (" + kind + ")";
}

bool stops_search(const std::string& kind) {
  return kind != "Rejected" && kind != "IncompleteMeasurement" &&
         kind != "SingularSystem" && kind != "NodeSearchExhausted";
}

std::string rejection_message(const FunctionReport& r) {
  if (r.error) return *r.error;
  if (const Decision* d = r.first_failure())
    return d->obligation.to_string() + " fails";
  return "rejected";
}

Program strip_annotations(const Program& p) {
  Program out = p;
  for (auto& f : out.functions) {
    auto g = std::make_shared<FunDef>(*f);
    g->declared_type.reset();
    f = g;
  }
  return out;
}

}  // namespace

DegreeCapExceeded::DegreeCapExceeded(const InferenceResult& result)
    : InferenceError("DegreeCapExceeded",
                     "no type found for '" + result.function + "': " +
                         result.cause),
      cause_(result.cause) {
  for (auto it = result.attempts.rbegin(); it != result.attempts.rend(); ++it) {
    if (!it->candidate) continue;
    last_candidate_ = it->candidate->type;
    if (it->check)
      for (const auto& d : it->check->decisions)
        if (d.verdict == Verdict::kFails)
          last_obligations_.push_back(d.obligation.to_string());
    break;
  }
}

std::vector<InferenceResult> infer_group(const Program& source,
                                         const std::vector<std::string>& group,
                                         const Signature& sigma,
                                         const InferenceConfig& config) {
  Program core = desugar(strip_annotations(source));
  for (const auto& name : group)
    if (!core.find_function(name))
      throw TypeError("UnknownFunction", "unknown function '" + name + "'");
  std::map<std::string, UFunType> underlying = infer_underlying(core);
  Interpreter interp(replace_externs(core), config.eval);

  std::vector<InferenceResult> results;
  bool any_lists = false;
  for (const auto& name : group) {
    InferenceResult r;
    r.function = name;
    r.tmpl = annotate_with_variables(underlying.at(name));
    any_lists = any_lists || !r.tmpl.placeholders.empty();
    results.push_back(std::move(r));
  }

  std::string last_kind;
  for (int d = config.start_degree; d <= config.max_degree; ++d) {
    std::vector<Candidate> candidates;
    std::string kind, message;
    for (auto& r : results) {
      try {
        candidates.push_back(
            get_size_aware_type(d, r.function, r.tmpl, interp, config));
      } catch (const Error& e) {
        kind = e.kind();
        message = e.what();
        DegreeAttempt a;
        a.degree = d;
        a.failure_kind = kind;
        a.failure = message;
        r.attempts.push_back(std::move(a));
        break;
      }
    }
    if (!kind.empty()) {
      last_kind = kind;
      if (stops_search(kind)) break;
      continue;
    }
    Signature extended = sigma;
    for (std::size_t i = 0; i < results.size(); ++i)
      extended[results[i].function] = candidates[i].type;
    bool all = true;
    std::vector<FunctionReport> reports;
    for (std::size_t i = 0; i < results.size(); ++i) {
      const FunDef& f = *core.find_function(results[i].function);
      reports.push_back(check_function(f, candidates[i].type, extended));
      all = all && reports.back().accepted();
    }
    for (std::size_t i = 0; i < results.size(); ++i) {
      DegreeAttempt a;
      a.degree = d;
      a.candidate = candidates[i];
      a.check = reports[i];
      if (!reports[i].accepted()) {
        a.failure_kind = "Rejected";
        a.failure = rejection_message(reports[i]);
      }
      results[i].attempts.push_back(std::move(a));
    }
    if (all) {
      for (std::size_t i = 0; i < results.size(); ++i)
        results[i].type = candidates[i].type;
      return results;
    }
    last_kind = "Rejected";
    // Without output lists every degree yields the same candidate.
    if (!any_lists) break;
  }
  for (auto& r : results) r.cause = classify(last_kind);
  return results;
}

InferenceResult try_increasing_degrees(const Program& p, const std::string& f,
                                       const Signature& sigma,
                                       const InferenceConfig& config) {
  return infer_group(p, {f}, sigma, config).front();
}

std::optional<FirstOrderType> stabilized_candidate(
    const Program& source, const std::string& f,
    const InferenceConfig& config) {
  Program core = desugar(source);
  if (!core.find_function(f))
    throw TypeError("UnknownFunction", "unknown function '" + f + "'");
  TypeTemplate tmpl = annotate_with_variables(infer_underlying(core).at(f));
  Interpreter interp(replace_externs(core), config.eval);
  std::optional<FirstOrderType> previous;
  for (int d = config.start_degree; d <= config.max_degree; ++d) {
    FirstOrderType t;
    try {
      t = get_size_aware_type(d, f, tmpl, interp, config).type;
    } catch (const InferenceError&) {
      previous.reset();
      continue;
    }
    if (previous && *previous == t) return t;
    previous = t;
  }
  return std::nullopt;
}

bool ProgramInference::success() const {
  return std::all_of(functions.begin(), functions.end(),
                     [](const InferenceResult& r) { return r.success(); });
}

std::vector<std::vector<std::string>> call_graph_sccs(const Program& p) {
  std::map<std::string, std::vector<std::string>> edges;
  std::vector<std::string> names;
  for (const auto& f : p.functions) names.push_back(f->name);
  std::set<std::string> known(names.begin(), names.end());
  for (const auto& f : p.functions)
    for (const auto& c : callees(*f->body))
      if (known.count(c)) edges[f->name].push_back(c);

  // Tarjan: SCCs are emitted callees first.
  std::map<std::string, int> index, low;
  std::set<std::string> on_stack;
  std::vector<std::string> stack;
  std::vector<std::vector<std::string>> out;
  int counter = 0;
  std::function<void(const std::string&)> visit = [&](const std::string& v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack.insert(v);
    for (const auto& w : edges[v]) {
      if (!index.count(w)) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack.count(w)) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] != index[v]) return;
    std::vector<std::string> group;
    std::string w;
    do {
      w = stack.back();
      stack.pop_back();
      on_stack.erase(w);
      group.push_back(w);
    } while (w != v);
    std::reverse(group.begin(), group.end());
    out.push_back(std::move(group));
  };
  for (const auto& n : names)
    if (!index.count(n)) visit(n);
  return out;
}

ProgramInference infer_program(const Program& source,
                               const InferenceConfig& config) {
  Program p = desugar(strip_annotations(source));
  require_restriction(p);
  ProgramInference out;
  for (const auto& ext : p.externs) {
    if (!ext.type)
      throw TypeError("MissingAnnotation",
                      "extern '" + ext.name + "' needs a type annotation",
                      ext.pos);
    std::string err = validate_first_order_type(*ext.type);
    if (!err.empty())
      throw TypeError("InvalidAnnotation", "extern '" + ext.name + "': " + err,
                      ext.pos);
    out.signature[ext.name] = *ext.type;
  }
  for (const auto& group : call_graph_sccs(p)) {
    auto results = infer_group(p, group, out.signature, config);
    for (auto& r : results) {
      if (r.type) out.signature[r.function] = *r.type;
      out.functions.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace polysize
