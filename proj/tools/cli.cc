#include "cli.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "polysize/checker.h"
#include "polysize/desugar.h"
#include "polysize/eval.h"
#include "polysize/inference.h"
#include "polysize/inhabitant.h"
#include "polysize/overload.h"
#include "polysize/parser.h"
#include "polysize/printer.h"
#include "polysize/restriction.h"

namespace polysize::cli {

namespace {

using nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::string input_path;
  int max_degree = 6;
  std::uint64_t budget = 10'000'000;
  std::int64_t seed = 42;
  std::string format = "text";
  bool debug_assert = false;
  bool annotate = false;
  std::string function;
  std::vector<std::string> literals;

  bool structured() const { return format == "structured"; }
};

class Reporter {
 public:
  Reporter(const RunConfig& cfg, std::ostream& out, std::ostream& err)
      : cfg_(cfg), out_(out), err_(err) {}

  void record(const ordered_json& j) { out_ << j.dump() << "\n"; }

  int fail(int status, const Error& e) {
    if (cfg_.structured()) {
      ordered_json j;
      j["record"] = "error";
      j["kind"] = e.kind();
      j["message"] = e.what();
      if (e.pos().line > 0) j["pos"] = to_string(e.pos());
      record(j);
    } else {
      err_ << "error: " << e.kind() << ": " << e.what() << "\n";
    }
    return status;
  }

 private:
  const RunConfig& cfg_;
  std::ostream& out_;
  std::ostream& err_;
};

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path);
  if (!file) throw Error("IOError", "cannot read '" + path + "'");
  buf << file.rdbuf();
  return buf.str();
}

EvalOptions eval_options(const RunConfig& cfg) {
  EvalOptions o;
  o.budget = cfg.budget;
  o.debug_assert = cfg.debug_assert;
  return o;
}

ordered_json obligation_json(const std::string& function, const Decision& d) {
  ordered_json j;
  j["record"] = "obligation";
  j["function"] = function;
  j["rule"] = d.obligation.rule;
  j["d"] = d.obligation.d.to_string();
  j["goal"] = d.obligation.goal_string();
  j["verdict"] = to_string(d.verdict);
  if (d.obligation.pos.line > 0) j["pos"] = to_string(d.obligation.pos);
  return j;
}

int cmd_check(const RunConfig& cfg, const Program& p, std::ostream& out,
              Reporter& rep) {
  ProgramReport report = check_program(p);
  int status = kOk;
  for (const auto& f : report.functions) {
    if (f.error_kind == "MissingAnnotation") status = kInputError;
    else if (!f.accepted() && status == kOk) status = kRejected;
    if (cfg.structured()) {
      for (const auto& d : f.decisions) rep.record(obligation_json(f.name, d));
      ordered_json j;
      j["record"] = "function";
      j["name"] = f.name;
      j["type"] = f.type ? f.type->to_string() : "";
      j["accepted"] = f.accepted();
      j["fragment_violations"] = f.fragment_violations;
      if (f.error) {
        j["error_kind"] = f.error_kind;
        j["error"] = *f.error;
      }
      j["warnings"] = f.warnings;
      rep.record(j);
      continue;
    }
    out << f.name;
    if (f.type) out << " : " << f.type->to_string();
    out << "\n";
    for (const auto& w : f.warnings) out << "  warning: " << w << "\n";
    for (const auto& d : f.decisions)
      out << "  " << to_string(d.verdict) << "  " << d.obligation.to_string()
          << "  [" << d.obligation.rule << "]\n";
    if (f.accepted()) {
      out << "  accepted\n";
    } else if (f.error) {
      out << "  rejected: " << f.error_kind << ": " << *f.error << "\n";
    } else if (const Decision* d = f.first_failure()) {
      out << "  rejected: " << d->obligation.to_string() << " fails";
      if (d->obligation.pos.line > 0)
        out << " at " << to_string(d->obligation.pos);
      out << "\n";
    }
  }
  if (cfg.structured()) {
    ordered_json j;
    j["record"] = "summary";
    j["command"] = "check";
    j["accepted"] = report.accepted();
    rep.record(j);
  } else {
    out << (report.accepted() ? "all functions accepted\n"
                              : "some functions rejected\n");
  }
  return status;
}

ordered_json node_json(const Node& n) {
  ordered_json j = ordered_json::array();
  for (auto x : n) j.push_back(x);
  return j;
}

void infer_records(const InferenceResult& r, Reporter& rep) {
  for (const auto& a : r.attempts) {
    if (a.candidate) {
      for (const auto& level : a.candidate->levels) {
        for (const auto& row : level.rows) {
          ordered_json j;
          j["record"] = "measurement";
          j["function"] = r.function;
          j["degree"] = a.degree;
          j["level"] = level.level;
          j["node"] = node_json(row.node);
          ordered_json inputs = ordered_json::array();
          for (const auto& in : row.inputs) inputs.push_back(in.to_string());
          j["inputs"] = inputs;
          j["output"] = row.output.to_string();
          ordered_json sizes = ordered_json::array();
          for (const auto& s : row.sizes) sizes.push_back(s.to_string());
          j["sizes"] = sizes;
          rep.record(j);
        }
        ordered_json j;
        j["record"] = "level";
        j["function"] = r.function;
        j["degree"] = a.degree;
        j["level"] = level.level;
        j["placeholder"] = level.placeholder;
        j["zero_shortcut"] = level.zero_shortcut;
        j["polynomial"] = level.derived.to_string();
        rep.record(j);
      }
    }
    ordered_json j;
    j["record"] = "attempt";
    j["function"] = r.function;
    j["degree"] = a.degree;
    j["candidate"] = a.candidate ? a.candidate->type.to_string() : "";
    j["accepted"] = a.failure_kind.empty();
    if (!a.failure_kind.empty()) {
      j["failure_kind"] = a.failure_kind;
      j["failure"] = a.failure;
    }
    rep.record(j);
  }
  ordered_json j;
  j["record"] = "type";
  j["function"] = r.function;
  j["success"] = r.success();
  if (r.type) j["type"] = r.type->to_string();
  else j["cause"] = r.cause;
  rep.record(j);
}

int cmd_infer(const RunConfig& cfg, const Program& p, std::ostream& out,
              std::ostream& err, Reporter& rep) {
  InferenceConfig ic;
  ic.max_degree = cfg.max_degree;
  ic.seed = cfg.seed;
  ic.eval = eval_options(cfg);
  ProgramInference result = infer_program(p, ic);
  for (const auto& r : result.functions) {
    if (cfg.structured()) {
      infer_records(r, rep);
      continue;
    }
    if (r.success()) {
      if (!cfg.annotate) out << r.function << " : " << r.type->to_string() << "\n";
      continue;
    }
    DegreeCapExceeded e(r);
    err << "error: DegreeCapExceeded: " << r.function << ": " << r.cause
        << "\n";
    for (const auto& a : r.attempts)
      err << "  degree " << a.degree << ": "
          << (a.candidate ? a.candidate->type.to_string() + ": " : "")
          << a.failure_kind << ": " << a.failure << "\n";
    if (e.last_candidate())
      err << "  last candidate: " << e.last_candidate()->to_string() << "\n";
    for (const auto& o : e.last_obligations())
      err << "  failing obligation: " << o << "\n";
  }
  if (cfg.annotate && !cfg.structured()) {
    std::map<std::string, FirstOrderType> types;
    for (const auto& r : result.functions)
      if (r.type) types[r.function] = *r.type;
    out << print_program(p, types);
  }
  return result.success() ? kOk : kDegreeCap;
}

int cmd_eval(const RunConfig& cfg, const Program& p, std::ostream& out,
             Reporter& rep) {
  Program runnable = replace_externs(p);
  Interpreter interp(runnable, eval_options(cfg));
  Heap heap;
  Value v;
  if (cfg.function.empty()) {
    if (!p.main)
      throw Error("UsageError", "the program has no main expression; name a "
                                "function to call");
    v = interp.run_main(heap);
  } else {
    const FunDef* f = runnable.find_function(cfg.function);
    if (!f)
      throw Error("UsageError", "unknown function '" + cfg.function + "'");
    if (f->params.size() != cfg.literals.size())
      throw Error("UsageError", "function '" + cfg.function + "' expects " +
                                    std::to_string(f->params.size()) +
                                    " arguments");
    std::vector<Value> args;
    for (const auto& lit : cfg.literals)
      args.push_back(build_value(Reading::parse(lit), heap));
    v = interp.call(cfg.function, args, heap);
  }
  std::string text = read_value(v, heap).to_string();
  if (cfg.structured()) {
    ordered_json j;
    j["record"] = "value";
    j["value"] = text;
    j["steps"] = interp.steps();
    rep.record(j);
  } else {
    out << text << "\n";
  }
  return kOk;
}

ordered_json expr_json(const Expr& e) {
  ordered_json j;
  std::visit(
      Overload{
          [&](const IntConst& x) { j["node"] = "int"; j["value"] = x.value; },
          [&](const Nil&) { j["node"] = "nil"; },
          [&](const Var& x) { j["node"] = "var"; j["name"] = x.name; },
          [&](const BinOp& x) {
            j["node"] = "binop";
            j["op"] = to_string(x.op);
            j["lhs"] = expr_json(*x.lhs);
            j["rhs"] = expr_json(*x.rhs);
          },
          [&](const Cons& x) {
            j["node"] = "cons";
            j["head"] = expr_json(*x.head);
            j["tail"] = expr_json(*x.tail);
          },
          [&](const FunApp& x) {
            j["node"] = "call";
            j["callee"] = x.callee;
            ordered_json args = ordered_json::array();
            for (const auto& a : x.args) args.push_back(expr_json(*a));
            j["args"] = args;
          },
          [&](const Let& x) {
            j["node"] = "let";
            j["binder"] = x.binder;
            j["bound"] = expr_json(*x.bound);
            j["body"] = expr_json(*x.body);
          },
          [&](const If& x) {
            j["node"] = "if";
            j["cond"] = expr_json(*x.cond);
            j["then"] = expr_json(*x.then_branch);
            j["else"] = expr_json(*x.else_branch);
          },
          [&](const Match& x) {
            j["node"] = "match";
            j["scrutinee"] = expr_json(*x.scrutinee);
            j["nil"] = expr_json(*x.nil_branch);
            j["head"] = x.head_binder;
            j["tail"] = x.tail_binder;
            j["cons"] = expr_json(*x.cons_branch);
          },
          [&](const LetFun& x) {
            j["node"] = "letfun";
            j["name"] = x.def->name;
            j["params"] = x.def->params;
            if (x.def->declared_type) j["type"] = x.def->declared_type->to_string();
            j["def"] = expr_json(*x.def->body);
            j["body"] = expr_json(*x.body);
          },
          [&](const LetExtern& x) {
            j["node"] = "letextern";
            j["name"] = x.decl.name;
            j["params"] = x.decl.params;
            if (x.decl.type) j["type"] = x.decl.type->to_string();
            j["body"] = expr_json(*x.body);
          },
      },
      e.node);
  return j;
}

int cmd_ast(const RunConfig& cfg, const Program& p, std::ostream& out,
            Reporter& rep) {
  Program core = desugar(p);
  if (!cfg.structured()) {
    out << print_program(core);
    return kOk;
  }
  for (const auto& ext : core.externs) {
    ordered_json j;
    j["record"] = "extern";
    j["name"] = ext.name;
    j["params"] = ext.params;
    if (ext.type) j["type"] = ext.type->to_string();
    rep.record(j);
  }
  for (const auto& f : core.functions) {
    ordered_json j;
    j["record"] = "function";
    j["name"] = f->name;
    j["params"] = f->params;
    if (f->declared_type) j["type"] = f->declared_type->to_string();
    j["body"] = expr_json(*f->body);
    rep.record(j);
  }
  if (core.main) {
    ordered_json j;
    j["record"] = "main";
    j["body"] = expr_json(*core.main);
    rep.record(j);
  }
  return kOk;
}

int dispatch(const RunConfig& cfg, std::istream& in, std::ostream& out,
             std::ostream& err) {
  Reporter rep(cfg, out, err);
  try {
    Program p = parse_program(read_input(cfg.input_path, in));
    if (cfg.command == "check") return cmd_check(cfg, p, out, rep);
    if (cfg.command == "infer") return cmd_infer(cfg, p, out, err, rep);
    if (cfg.command == "eval") return cmd_eval(cfg, p, out, rep);
    return cmd_ast(cfg, p, out, rep);
  } catch (const EvalError& e) {
    return rep.fail(kRuntimeError, e);
  } catch (const NonShapelyObservation& e) {
    return rep.fail(kRuntimeError, e);
  } catch (const DegreeCapExceeded& e) {
    return rep.fail(kDegreeCap, e);
  } catch (const Error& e) {
    return rep.fail(kInputError, e);
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Size-aware type checking and inference for a first-order "
               "list language"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* sub) {
    sub->add_option("input", cfg.input_path, "Source file, or - for stdin")
        ->required();
    sub->add_option("--max-degree", cfg.max_degree,
                    "Highest polynomial degree tried by inference")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--budget", cfg.budget, "Evaluation step budget")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "First element value of test inputs");
    sub->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"text", "structured"}));
    sub->add_flag("--debug-assert", cfg.debug_assert,
                  "Check benign sharing at every let");
  };
  CLI::App* check = app.add_subcommand("check", "Check annotated functions");
  common(check);
  CLI::App* infer = app.add_subcommand("infer", "Infer size-aware types");
  common(infer);
  infer->add_flag("--annotate", cfg.annotate,
                  "Print the program with inferred annotations");
  CLI::App* eval = app.add_subcommand("eval", "Evaluate main or a function");
  common(eval);
  // Function name and value literals are taken verbatim: CLI11 would read
  // "[1,2]" as container syntax.
  eval->allow_extras();
  eval->footer("Arguments after INPUT: FUNCTION [LITERAL ...], e.g. "
               "append \"[1,2]\" \"[]\"");
  CLI::App* ast = app.add_subcommand("ast", "Print the desugared program");
  common(ast);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }
  for (CLI::App* sub : {check, infer, eval, ast})
    if (sub->parsed()) cfg.command = sub->get_name();
  if (eval->parsed()) {
    std::vector<std::string> rest = eval->remaining();
    if (!rest.empty()) {
      cfg.function = rest.front();
      cfg.literals.assign(rest.begin() + 1, rest.end());
    }
  }
  return dispatch(cfg, in, out, err);
}

}  // namespace polysize::cli
