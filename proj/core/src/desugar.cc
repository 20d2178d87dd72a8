#include "polysize/desugar.h"

#include <algorithm>

#include "polysize/overload.h"

namespace polysize {

namespace {

// Largest k such that "$k" occurs as a binder or variable in e.
int max_reserved(const Expr& e);

int reserved_index(const std::string& name) {
  if (name.size() < 2 || name[0] != '$') return 0;
  int k = 0;
  for (std::size_t i = 1; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') return 0;
    k = k * 10 + (name[i] - '0');
    if (k > 1000000) return 0;
  }
  return k;
}

int max_reserved(const Expr& e) {
  auto m = [](const ExprPtr& x) { return max_reserved(*x); };
  return std::visit(
      Overload{
          [](const IntConst&) { return 0; },
          [](const Nil&) { return 0; },
          [](const Var& x) { return reserved_index(x.name); },
          [&](const BinOp& x) { return std::max(m(x.lhs), m(x.rhs)); },
          [&](const Cons& x) { return std::max(m(x.head), m(x.tail)); },
          [&](const FunApp& x) {
            int k = 0;
            for (const auto& a : x.args) k = std::max(k, m(a));
            return k;
          },
          [&](const Let& x) {
            return std::max({reserved_index(x.binder), m(x.bound), m(x.body)});
          },
          [&](const If& x) {
            return std::max({m(x.cond), m(x.then_branch), m(x.else_branch)});
          },
          [&](const Match& x) {
            return std::max({m(x.scrutinee), reserved_index(x.head_binder),
                             reserved_index(x.tail_binder), m(x.nil_branch),
                             m(x.cons_branch)});
          },
          [&](const LetFun& x) { return m(x.body); },
          [&](const LetExtern& x) { return m(x.body); },
      },
      e.node);
}

class Desugarer {
 public:
  explicit Desugarer(int start) : counter_(start) {}

  ExprPtr norm(const ExprPtr& e) {
    return std::visit(
        Overload{
            [&](const IntConst&) { return e; },
            [&](const Nil&) { return e; },
            [&](const Var&) { return e; },
            [&](const BinOp&) { return basic(e); },
            [&](const Cons&) { return basic(e); },
            [&](const FunApp&) { return basic(e); },
            [&](const Let& x) {
              // Operands of a basic bound expression are hoisted above the
              // let itself, keeping the bound expression basic.
              Bindings bs;
              const Expr& b = *x.bound;
              ExprPtr bound = (b.is<BinOp>() || b.is<Cons>() || b.is<FunApp>())
                                  ? flatten(x.bound, bs)
                                  : norm(x.bound);
              ExprPtr body = norm(x.body);
              if (bound == x.bound && body == x.body) return e;
              return wrap(bs, make_expr(Let{x.binder, bound, body}, e->pos));
            },
            [&](const If& x) {
              Bindings bs;
              ExprPtr c = atom(x.cond, bs);
              ExprPtr t = norm(x.then_branch);
              ExprPtr f = norm(x.else_branch);
              ExprPtr out =
                  (c == x.cond && t == x.then_branch && f == x.else_branch)
                      ? e
                      : make_expr(If{c, t, f}, e->pos);
              return wrap(bs, out);
            },
            [&](const Match& x) {
              Bindings bs;
              ExprPtr s = atom(x.scrutinee, bs);
              ExprPtr n = norm(x.nil_branch);
              ExprPtr c = norm(x.cons_branch);
              ExprPtr out = (s == x.scrutinee && n == x.nil_branch &&
                             c == x.cons_branch)
                                ? e
                                : make_expr(Match{s, x.head_binder,
                                                  x.tail_binder, n, c},
                                            e->pos);
              return wrap(bs, out);
            },
            [&](const LetFun& x) {
              FunDefPtr def = desugar_def(x.def);
              ExprPtr body = norm(x.body);
              if (def == x.def && body == x.body) return e;
              return make_expr(LetFun{def, body}, e->pos);
            },
            [&](const LetExtern& x) {
              ExprPtr body = norm(x.body);
              if (body == x.body) return e;
              return make_expr(LetExtern{x.decl, body}, e->pos);
            },
        },
        e->node);
  }

  static FunDefPtr desugar_def(const FunDefPtr& def) {
    Desugarer inner(max_reserved(*def->body));
    ExprPtr body = inner.norm(def->body);
    if (body == def->body) return def;
    auto out = std::make_shared<FunDef>(*def);
    out->body = body;
    return out;
  }

 private:
  using Bindings = std::vector<std::pair<std::string, ExprPtr>>;

  // Basic form (BinOp, Cons, FunApp) with every operand made atomic; the
  // hoisted bindings wrap the result.
  ExprPtr basic(const ExprPtr& e) {
    Bindings bs;
    ExprPtr b = flatten(e, bs);
    return wrap(bs, b);
  }

  ExprPtr flatten(const ExprPtr& e, Bindings& bs) {
    if (const auto* x = e->as<BinOp>()) {
      ExprPtr l = atom(x->lhs, bs);
      ExprPtr r = atom(x->rhs, bs);
      if (l == x->lhs && r == x->rhs) return e;
      return make_expr(BinOp{x->op, l, r}, e->pos);
    }
    if (const auto* x = e->as<Cons>()) {
      ExprPtr h = atom(x->head, bs);
      ExprPtr t = atom(x->tail, bs);
      if (h == x->head && t == x->tail) return e;
      return make_expr(Cons{h, t}, e->pos);
    }
    if (const auto* x = e->as<FunApp>()) {
      std::vector<ExprPtr> args;
      bool same = true;
      for (const auto& a : x->args) {
        args.push_back(atom(a, bs));
        same = same && args.back() == a;
      }
      if (same) return e;
      return make_expr(FunApp{x->callee, std::move(args)}, e->pos);
    }
    return e;
  }

  ExprPtr atom(const ExprPtr& e, Bindings& bs) {
    if (e->is<Var>()) return e;
    ExprPtr bound;
    if (e->is<IntConst>() || e->is<Nil>() || e->is<BinOp>() ||
        e->is<Cons>() || e->is<FunApp>()) {
      bound = flatten(e, bs);
    } else {
      bound = norm(e);
    }
    std::string z = "$" + std::to_string(++counter_);
    bs.emplace_back(z, bound);
    return make_var(z, e->pos);
  }

  static ExprPtr wrap(const Bindings& bs, ExprPtr body) {
    for (auto it = bs.rbegin(); it != bs.rend(); ++it)
      body = make_expr(Let{it->first, it->second, body}, it->second->pos);
    return body;
  }

  int counter_;
};

}  // namespace

ExprPtr desugar_expr(const ExprPtr& e) {
  Desugarer d(max_reserved(*e));
  return d.norm(e);
}

Program desugar(const Program& p) {
  Program out;
  out.externs = p.externs;
  for (const auto& f : p.functions)
    out.functions.push_back(Desugarer::desugar_def(f));
  if (p.main) out.main = desugar_expr(p.main);
  return out;
}

}  // namespace polysize
