#include "polysize/checker.h"

#include <functional>

#include "polysize/desugar.h"
#include "polysize/overload.h"
#include "polysize/restriction.h"
#include "polysize/underlying.h"

namespace polysize {

std::string Obligation::goal_string() const {
  switch (kind) {
    case GoalKind::kPolyEq:
      return lhs.to_string() + " = " + rhs.to_string();
    case GoalKind::kPolyZero:
      return lhs.to_string() + " = 0";
    case GoalKind::kTypeEq:
      return lhs_type.to_string() + " = " + rhs_type.to_string();
  }
  return {};
}

std::string Obligation::to_string() const {
  std::string ds = d.to_string();
  return (ds.empty() ? "" : "{" + ds + "} ") + "⊢ " + goal_string();
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::kHolds: return "HOLDS";
    case Verdict::kFails: return "FAILS";
    case Verdict::kVacuous: return "VACUOUS";
  }
  return "?";
}

Verdict decide_entailment(const Obligation& ob) {
  FragmentSolution sol = solve_fragment(ob.d);
  if (!sol.satisfiable) return Verdict::kVacuous;
  bool holds = false;
  switch (ob.kind) {
    case GoalKind::kPolyEq:
      holds = entails_equal(ob.d, ob.lhs, ob.rhs);
      break;
    case GoalKind::kPolyZero:
      holds = entails_zero(ob.d, ob.lhs);
      break;
    case GoalKind::kTypeEq:
      holds = type_equiv(ob.d, ob.lhs_type, ob.rhs_type);
      break;
  }
  return holds ? Verdict::kHolds : Verdict::kFails;
}

ThetaResult theta(const std::vector<SizedType>& formals,
                  const std::vector<SizedType>& actuals,
                  const ConstraintSet& d) {
  if (formals.size() != actuals.size())
    throw TypeError("ShapeMismatch", "argument count differs");
  ThetaResult out;
  std::map<std::string, bool> size_dead;
  std::map<std::string, bool> type_dead;
  std::function<void(const SizedType&, const SizedType&, bool)> walk =
      [&](const SizedType& f, const SizedType& a, bool dead) {
        if (f.is_var()) {
          const std::string& v = f.var_name();
          auto it = out.types.find(v);
          if (it == out.types.end()) {
            out.types.emplace(v, a);
            type_dead[v] = dead;
          } else if (type_dead[v] && !dead) {
            it->second = a;
            type_dead[v] = false;
          } else if (!dead) {
            out.type_eqs.emplace_back(it->second, a);
          }
          return;
        }
        if (f.is_int()) {
          if (!a.is_int())
            throw TypeError("ShapeMismatch",
                            "expected Int, got " + a.to_string());
          return;
        }
        if (!a.is_list())
          throw TypeError("ShapeMismatch", "expected a list for " +
                                               f.to_string() + ", got " +
                                               a.to_string());
        auto vars = f.size().variables();
        if (vars.size() != 1 ||
            f.size() != Polynomial::variable(*vars.begin()))
          throw TypeError("InvalidAnnotation",
                          "parameter size " + f.size().to_string() +
                              " is not a size variable");
        const std::string& n = *vars.begin();
        auto it = out.sizes.find(n);
        if (it == out.sizes.end()) {
          out.sizes.emplace(n, a.size());
          size_dead[n] = dead;
        } else if (size_dead[n] && !dead) {
          it->second = a.size();
          size_dead[n] = false;
        } else if (!dead) {
          out.c.emplace_back(it->second, a.size());
        }
        walk(f.elem(), a.elem(), dead || entails_zero(d, a.size()));
      };
  for (std::size_t i = 0; i < formals.size(); ++i)
    walk(formals[i], actuals[i], false);
  return out;
}

bool FunctionReport::accepted() const {
  if (error) return false;
  for (const auto& dec : decisions)
    if (dec.verdict == Verdict::kFails) return false;
  return true;
}

const Decision* FunctionReport::first_failure() const {
  for (const auto& dec : decisions)
    if (dec.verdict == Verdict::kFails) return &dec;
  return nullptr;
}

bool ProgramReport::accepted() const {
  for (const auto& f : functions)
    if (!f.accepted()) return false;
  return true;
}

namespace {

// Fills type variables of `formal` missing from `types` from the matching
// positions of the underlying type `actual`, with all sizes 0.
void bind_from_underlying(const SizedType& formal, const UType& actual,
                          std::map<std::string, SizedType>& types) {
  if (formal.is_var()) {
    if (!types.count(formal.var_name()))
      types.emplace(formal.var_name(), with_sizes(actual, Polynomial{}));
    return;
  }
  if (formal.is_list() && actual.is_list())
    bind_from_underlying(formal.elem(), actual.elem(), types);
}

class Checker {
 public:
  explicit Checker(const NodeTypes& node_types) : node_types_(node_types) {}

  std::vector<Obligation> obligations;
  int fragment_violations = 0;

  void check_def(const FunDef& f, const FirstOrderType& type,
                 const Signature& sigma) {
    Context g;
    for (std::size_t i = 0; i < f.params.size(); ++i)
      g[f.params[i]] = type.params[i];
    check(ConstraintSet{}, g, sigma, *f.body, type.result);
  }

 private:
  void emit_poly(const ConstraintSet& d, GoalKind kind, Polynomial lhs,
                 Polynomial rhs, SourcePos pos, const char* rule) {
    Obligation ob;
    ob.d = d;
    ob.kind = kind;
    ob.lhs = std::move(lhs);
    ob.rhs = std::move(rhs);
    ob.pos = pos;
    ob.rule = rule;
    obligations.push_back(std::move(ob));
  }
  void emit_type(const ConstraintSet& d, SizedType a, SizedType b,
                 SourcePos pos, const char* rule) {
    Obligation ob;
    ob.d = d;
    ob.kind = GoalKind::kTypeEq;
    ob.lhs_type = std::move(a);
    ob.rhs_type = std::move(b);
    ob.pos = pos;
    ob.rule = rule;
    obligations.push_back(std::move(ob));
  }

  static const std::string& var_of(const ExprPtr& e) {
    const auto* v = e->as<Var>();
    if (!v)
      throw TypeError("NotCoreForm", "operand is not a variable", e->pos);
    return v->name;
  }

  static const SizedType& lookup(const Context& g, const ExprPtr& e) {
    const std::string& x = var_of(e);
    auto it = g.find(x);
    if (it == g.end())
      throw TypeError("UnboundVariable", "unbound variable '" + x + "'",
                      e->pos);
    return it->second;
  }

  const UType& node_type(const Expr& e) const {
    auto it = node_types_.find(&e);
    if (it == node_types_.end())
      throw TypeError("InternalError", "missing underlying type", e.pos);
    return it->second;
  }

  static const SizedType& as_list(const SizedType& t, SourcePos pos) {
    if (!t.is_list())
      throw TypeError("ShapeMismatch",
                      "expected a list type, got " + t.to_string(), pos);
    return t;
  }

  SizedType apply(const ConstraintSet& d, const Context& g,
                  const Signature& sigma, const Expr& e, const FunApp& app) {
    auto it = sigma.find(app.callee);
    if (it == sigma.end())
      throw TypeError("UnknownFunction",
                      "no type for function '" + app.callee + "'", e.pos);
    const FirstOrderType& ft = it->second;
    std::vector<SizedType> actuals;
    for (const auto& a : app.args) actuals.push_back(lookup(g, a));
    ThetaResult th = theta(ft.params, actuals, d);
    for (const auto& [p, q] : th.c)
      emit_poly(d, GoalKind::kPolyEq, p, q, e.pos, "FunApp");
    for (const auto& [a, b] : th.type_eqs)
      emit_type(d, a, b, e.pos, "FunApp");
    bind_from_underlying(ft.result, node_type(e), th.types);
    return ft.result.substitute_sizes(th.sizes).substitute_types(th.types);
  }

  Signature extend_nested(const Signature& sigma, const Expr& e) {
    Signature out = sigma;
    if (const auto* lf = e.as<LetFun>()) {
      const FunDef& def = *lf->def;
      if (!def.declared_type)
        throw TypeError("MissingAnnotation",
                        "nested function '" + def.name +
                            "' needs a type annotation",
                        e.pos);
      std::string err = validate_first_order_type(*def.declared_type);
      if (!err.empty()) throw TypeError("InvalidAnnotation", err, e.pos);
      out[def.name] = *def.declared_type;
      check_def(def, *def.declared_type, out);
    } else if (const auto* le = e.as<LetExtern>()) {
      if (!le->decl.type)
        throw TypeError("MissingAnnotation",
                        "extern '" + le->decl.name +
                            "' needs a type annotation",
                        e.pos);
      out[le->decl.name] = *le->decl.type;
    }
    return out;
  }

  ConstraintSet nil_constraints(const ConstraintSet& d, const Polynomial& p) {
    if (!in_fragment(p)) ++fragment_violations;
    return d.with(p);
  }

  void check(const ConstraintSet& d, const Context& g, const Signature& sigma,
             const Expr& e, const SizedType& tau) {
    std::visit(
        Overload{
            [&](const IntConst&) {},
            [&](const BinOp&) {},
            [&](const Nil&) {
              emit_poly(d, GoalKind::kPolyZero, as_list(tau, e.pos).size(), {},
                        e.pos, "Nil");
            },
            [&](const Var& x) {
              auto it = g.find(x.name);
              if (it == g.end())
                throw TypeError("UnboundVariable",
                                "unbound variable '" + x.name + "'", e.pos);
              emit_type(d, it->second, tau, e.pos, "Var");
            },
            [&](const Cons& x) {
              const SizedType& list = as_list(tau, e.pos);
              const SizedType& hd = lookup(g, x.head);
              const SizedType& tl = as_list(lookup(g, x.tail), e.pos);
              emit_poly(d, GoalKind::kPolyEq, list.size(),
                        tl.size() + Polynomial::constant(1), e.pos, "Cons");
              emit_type(d, hd, list.elem(), e.pos, "Cons");
              emit_type(d, tl, SizedType::list(list.elem(), tl.size()), e.pos,
                        "Cons");
            },
            [&](const FunApp& x) {
              SizedType result = apply(d, g, sigma, e, x);
              emit_type(d, result, tau, e.pos, "FunApp");
            },
            [&](const Let& x) {
              SizedType bound = synth(d, g, sigma, *x.bound);
              Context inner = g;
              inner[x.binder] = bound;
              check(d, inner, sigma, *x.body, tau);
            },
            [&](const If& x) {
              lookup(g, x.cond);
              check(d, g, sigma, *x.then_branch, tau);
              check(d, g, sigma, *x.else_branch, tau);
            },
            [&](const Match& x) {
              const SizedType& l = as_list(lookup(g, x.scrutinee), e.pos);
              check(nil_constraints(d, l.size()), g, sigma, *x.nil_branch,
                    tau);
              Context inner = g;
              inner[x.head_binder] = l.elem();
              inner[x.tail_binder] = SizedType::list(
                  l.elem(), l.size() - Polynomial::constant(1));
              check(d, inner, sigma, *x.cons_branch, tau);
            },
            [&](const LetFun& x) {
              check(d, g, extend_nested(sigma, e), *x.body, tau);
            },
            [&](const LetExtern& x) {
              check(d, g, extend_nested(sigma, e), *x.body, tau);
            },
        },
        e.node);
  }

  SizedType synth(const ConstraintSet& d, const Context& g,
                  const Signature& sigma, const Expr& e) {
    return std::visit(
        Overload{
            [&](const IntConst&) { return SizedType::integer(); },
            [&](const BinOp&) { return SizedType::integer(); },
            [&](const Nil&) { return with_sizes(node_type(e), Polynomial{}); },
            [&](const Var& x) {
              auto it = g.find(x.name);
              if (it == g.end())
                throw TypeError("UnboundVariable",
                                "unbound variable '" + x.name + "'", e.pos);
              return it->second;
            },
            [&](const Cons& x) {
              const SizedType& hd = lookup(g, x.head);
              const SizedType& tl = as_list(lookup(g, x.tail), e.pos);
              emit_type(d, tl, SizedType::list(hd, tl.size()), e.pos, "Cons");
              return SizedType::list(hd, tl.size() + Polynomial::constant(1));
            },
            [&](const FunApp& x) { return apply(d, g, sigma, e, x); },
            [&](const Let& x) {
              SizedType bound = synth(d, g, sigma, *x.bound);
              Context inner = g;
              inner[x.binder] = bound;
              return synth(d, inner, sigma, *x.body);
            },
            [&](const If& x) {
              lookup(g, x.cond);
              SizedType t = synth(d, g, sigma, *x.then_branch);
              check(d, g, sigma, *x.else_branch, t);
              return t;
            },
            [&](const Match& x) {
              const SizedType& l = as_list(lookup(g, x.scrutinee), e.pos);
              Context inner = g;
              inner[x.head_binder] = l.elem();
              inner[x.tail_binder] = SizedType::list(
                  l.elem(), l.size() - Polynomial::constant(1));
              SizedType t = synth(d, inner, sigma, *x.cons_branch);
              check(nil_constraints(d, l.size()), g, sigma, *x.nil_branch, t);
              return t;
            },
            [&](const LetFun& x) {
              return synth(d, g, extend_nested(sigma, e), *x.body);
            },
            [&](const LetExtern& x) {
              return synth(d, g, extend_nested(sigma, e), *x.body);
            },
        },
        e.node);
  }

  const NodeTypes& node_types_;
};

}  // namespace

FunctionReport check_function(const FunDef& f, const FirstOrderType& type,
                              const Signature& sigma) {
  FunctionReport report;
  report.name = f.name;
  report.type = type;
  std::string err = validate_first_order_type(type);
  if (err.empty() && type.params.size() != f.params.size())
    err = "annotation has " + std::to_string(type.params.size()) +
          " parameters, definition has " + std::to_string(f.params.size());
  if (!err.empty()) {
    report.error = err;
    report.error_kind = "InvalidAnnotation";
    return report;
  }
  auto restriction = validate_restriction(f);
  if (!restriction.ok()) throw restriction.violations.front();
  report.warnings = totality_warnings(type);

  Signature full = sigma;
  full[f.name] = type;
  try {
    NodeTypes node_types = infer_node_types(f, type, full);
    Checker checker(node_types);
    checker.check_def(f, type, full);
    report.fragment_violations = checker.fragment_violations;
    for (auto& ob : checker.obligations) {
      Verdict v = decide_entailment(ob);
      report.decisions.push_back({std::move(ob), v});
    }
  } catch (const TypeError& e) {
    report.error = e.what();
    report.error_kind = e.kind();
  }
  return report;
}

Signature program_signature(const Program& p) {
  Signature sigma;
  for (const auto& ext : p.externs)
    if (ext.type) sigma[ext.name] = *ext.type;
  for (const auto& f : p.functions)
    if (f->declared_type) sigma[f->name] = *f->declared_type;
  return sigma;
}

ProgramReport check_program(const Program& source) {
  Program p = desugar(source);
  require_restriction(p);
  for (const auto& ext : p.externs) {
    if (!ext.type)
      throw TypeError("MissingAnnotation",
                      "extern '" + ext.name + "' needs a type annotation",
                      ext.pos);
    std::string err = validate_first_order_type(*ext.type);
    if (!err.empty())
      throw TypeError("InvalidAnnotation",
                      "extern '" + ext.name + "': " + err, ext.pos);
  }
  Signature sigma = program_signature(p);
  ProgramReport out;
  for (const auto& f : p.functions) {
    if (!f->declared_type) {
      FunctionReport r;
      r.name = f->name;
      r.error = "function '" + f->name + "' has no type annotation";
      r.error_kind = "MissingAnnotation";
      out.functions.push_back(std::move(r));
      continue;
    }
    out.functions.push_back(check_function(*f, *f->declared_type, sigma));
  }
  return out;
}

}  // namespace polysize
