#include "polysize/ast.h"

#include "polysize/overload.h"

namespace polysize {

const char* to_string(BinOpKind op) {
  switch (op) {
    case BinOpKind::kAdd: return "+";
    case BinOpKind::kSub: return "-";
    case BinOpKind::kDiv: return "div";
    case BinOpKind::kMod: return "mod";
  }
  return "?";
}

const FunDef* Program::find_function(const std::string& name) const {
  for (const auto& f : functions)
    if (f->name == name) return f.get();
  return nullptr;
}

const ExternDecl* Program::find_extern(const std::string& name) const {
  for (const auto& e : externs)
    if (e.name == name) return &e;
  return nullptr;
}

namespace {

bool equal_ptr(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return equal(*a, *b);
}

bool equal_extern(const ExternDecl& a, const ExternDecl& b) {
  return a.name == b.name && a.params == b.params && a.type == b.type;
}

}  // namespace

bool equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      Overload{
          [&](const IntConst& x) { return x.value == b.as<IntConst>()->value; },
          [&](const BinOp& x) {
            const auto* y = b.as<BinOp>();
            return x.op == y->op && equal_ptr(x.lhs, y->lhs) &&
                   equal_ptr(x.rhs, y->rhs);
          },
          [&](const Nil&) { return true; },
          [&](const Var& x) { return x.name == b.as<Var>()->name; },
          [&](const Cons& x) {
            const auto* y = b.as<Cons>();
            return equal_ptr(x.head, y->head) && equal_ptr(x.tail, y->tail);
          },
          [&](const FunApp& x) {
            const auto* y = b.as<FunApp>();
            if (x.callee != y->callee || x.args.size() != y->args.size())
              return false;
            for (std::size_t i = 0; i < x.args.size(); ++i)
              if (!equal_ptr(x.args[i], y->args[i])) return false;
            return true;
          },
          [&](const Let& x) {
            const auto* y = b.as<Let>();
            return x.binder == y->binder && equal_ptr(x.bound, y->bound) &&
                   equal_ptr(x.body, y->body);
          },
          [&](const If& x) {
            const auto* y = b.as<If>();
            return equal_ptr(x.cond, y->cond) &&
                   equal_ptr(x.then_branch, y->then_branch) &&
                   equal_ptr(x.else_branch, y->else_branch);
          },
          [&](const Match& x) {
            const auto* y = b.as<Match>();
            return x.head_binder == y->head_binder &&
                   x.tail_binder == y->tail_binder &&
                   equal_ptr(x.scrutinee, y->scrutinee) &&
                   equal_ptr(x.nil_branch, y->nil_branch) &&
                   equal_ptr(x.cons_branch, y->cons_branch);
          },
          [&](const LetFun& x) {
            const auto* y = b.as<LetFun>();
            return equal(*x.def, *y->def) && equal_ptr(x.body, y->body);
          },
          [&](const LetExtern& x) {
            const auto* y = b.as<LetExtern>();
            return equal_extern(x.decl, y->decl) && equal_ptr(x.body, y->body);
          },
      },
      a.node);
}

bool equal(const FunDef& a, const FunDef& b) {
  return a.name == b.name && a.params == b.params &&
         a.declared_type == b.declared_type && equal_ptr(a.body, b.body);
}

bool equal(const Program& a, const Program& b) {
  if (a.functions.size() != b.functions.size() ||
      a.externs.size() != b.externs.size())
    return false;
  for (std::size_t i = 0; i < a.functions.size(); ++i)
    if (!equal(*a.functions[i], *b.functions[i])) return false;
  for (std::size_t i = 0; i < a.externs.size(); ++i)
    if (!equal_extern(a.externs[i], b.externs[i])) return false;
  return equal_ptr(a.main, b.main);
}

namespace {

void collect_free(const Expr& e, std::set<std::string>& bound,
                  std::set<std::string>& out) {
  auto sub = [&](const ExprPtr& x) { collect_free(*x, bound, out); };
  auto under = [&](const ExprPtr& x, std::vector<std::string> names) {
    std::set<std::string> saved = bound;
    for (auto& n : names) bound.insert(std::move(n));
    collect_free(*x, bound, out);
    bound = std::move(saved);
  };
  std::visit(Overload{
                 [&](const IntConst&) {},
                 [&](const Nil&) {},
                 [&](const Var& x) {
                   if (!bound.count(x.name)) out.insert(x.name);
                 },
                 [&](const BinOp& x) {
                   sub(x.lhs);
                   sub(x.rhs);
                 },
                 [&](const Cons& x) {
                   sub(x.head);
                   sub(x.tail);
                 },
                 [&](const FunApp& x) {
                   for (const auto& a : x.args) sub(a);
                 },
                 [&](const Let& x) {
                   sub(x.bound);
                   under(x.body, {x.binder});
                 },
                 [&](const If& x) {
                   sub(x.cond);
                   sub(x.then_branch);
                   sub(x.else_branch);
                 },
                 [&](const Match& x) {
                   sub(x.scrutinee);
                   sub(x.nil_branch);
                   under(x.cons_branch, {x.head_binder, x.tail_binder});
                 },
                 [&](const LetFun& x) { sub(x.body); },
                 [&](const LetExtern& x) { sub(x.body); },
             },
             e.node);
}

void collect_callees(const Expr& e, std::set<std::string>& out) {
  auto sub = [&](const ExprPtr& x) { collect_callees(*x, out); };
  std::visit(Overload{
                 [&](const IntConst&) {},
                 [&](const Nil&) {},
                 [&](const Var&) {},
                 [&](const BinOp& x) {
                   sub(x.lhs);
                   sub(x.rhs);
                 },
                 [&](const Cons& x) {
                   sub(x.head);
                   sub(x.tail);
                 },
                 [&](const FunApp& x) {
                   out.insert(x.callee);
                   for (const auto& a : x.args) sub(a);
                 },
                 [&](const Let& x) {
                   sub(x.bound);
                   sub(x.body);
                 },
                 [&](const If& x) {
                   sub(x.cond);
                   sub(x.then_branch);
                   sub(x.else_branch);
                 },
                 [&](const Match& x) {
                   sub(x.scrutinee);
                   sub(x.nil_branch);
                   sub(x.cons_branch);
                 },
                 [&](const LetFun& x) {
                   sub(x.def->body);
                   sub(x.body);
                 },
                 [&](const LetExtern& x) { sub(x.body); },
             },
             e.node);
}

}  // namespace

std::set<std::string> free_variables(const Expr& e) {
  std::set<std::string> bound;
  std::set<std::string> out;
  collect_free(e, bound, out);
  return out;
}

std::set<std::string> callees(const Expr& e) {
  std::set<std::string> out;
  collect_callees(e, out);
  return out;
}

bool is_core(const Expr& e) {
  auto var = [](const ExprPtr& x) { return x->is<Var>(); };
  return std::visit(
      Overload{
          [&](const IntConst&) { return true; },
          [&](const Nil&) { return true; },
          [&](const Var&) { return true; },
          [&](const BinOp& x) { return var(x.lhs) && var(x.rhs); },
          [&](const Cons& x) { return var(x.head) && var(x.tail); },
          [&](const FunApp& x) {
            for (const auto& a : x.args)
              if (!var(a)) return false;
            return true;
          },
          [&](const Let& x) { return is_core(*x.bound) && is_core(*x.body); },
          [&](const If& x) {
            return var(x.cond) && is_core(*x.then_branch) &&
                   is_core(*x.else_branch);
          },
          [&](const Match& x) {
            return var(x.scrutinee) && is_core(*x.nil_branch) &&
                   is_core(*x.cons_branch);
          },
          [&](const LetFun& x) {
            return is_core(*x.def->body) && is_core(*x.body);
          },
          [&](const LetExtern& x) { return is_core(*x.body); },
      },
      e.node);
}

}  // namespace polysize
