#include "polysize/restriction.h"

#include <map>

#include "polysize/overload.h"

namespace polysize {

namespace {

enum class Origin { kParam, kMatch, kLet };

using Env = std::map<std::string, Origin>;

void walk(const std::string& fname, const Expr& e, const Env& env,
          std::vector<RestrictionViolation>& out) {
  auto sub = [&](const ExprPtr& x, const Env& en) {
    walk(fname, *x, en, out);
  };
  std::visit(
      Overload{
          [&](const IntConst&) {},
          [&](const Nil&) {},
          [&](const Var&) {},
          [&](const BinOp&) {},
          [&](const Cons&) {},
          [&](const FunApp&) {},
          [&](const Let& x) {
            sub(x.bound, env);
            Env inner = env;
            inner[x.binder] = Origin::kLet;
            sub(x.body, inner);
          },
          [&](const If& x) {
            sub(x.then_branch, env);
            sub(x.else_branch, env);
          },
          [&](const Match& x) {
            const auto* v = x.scrutinee->as<Var>();
            std::string name = v ? v->name : "<expression>";
            auto it = v ? env.find(v->name) : env.end();
            if (it == env.end() || it->second == Origin::kLet)
              out.emplace_back(fname, name, e.pos);
            sub(x.nil_branch, env);
            Env inner = env;
            inner[x.head_binder] = Origin::kMatch;
            inner[x.tail_binder] = Origin::kMatch;
            sub(x.cons_branch, inner);
          },
          [&](const LetFun& x) {
            auto nested = validate_restriction(*x.def);
            for (auto& v : nested.violations) out.push_back(std::move(v));
            sub(x.body, env);
          },
          [&](const LetExtern& x) { sub(x.body, env); },
      },
      e.node);
}

}  // namespace

RestrictionReport validate_restriction(const FunDef& f) {
  RestrictionReport report;
  Env env;
  for (const auto& p : f.params) env[p] = Origin::kParam;
  walk(f.name, *f.body, env, report.violations);
  return report;
}

RestrictionReport validate_restriction(const Program& p) {
  RestrictionReport report;
  for (const auto& f : p.functions) {
    auto r = validate_restriction(*f);
    for (auto& v : r.violations) report.violations.push_back(std::move(v));
  }
  return report;
}

void require_restriction(const Program& p) {
  auto report = validate_restriction(p);
  if (!report.ok()) throw report.violations.front();
}

}  // namespace polysize
