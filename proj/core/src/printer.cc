#include "polysize/printer.h"

#include "polysize/overload.h"

namespace polysize {

namespace {

// Precedence contexts: 0 any expression, 1 left operand of +/-, 2 right
// operand of +/- or left operand of div/mod, 3 atom only.
std::string print(const Expr& e, int indent, int prec);

std::string pad(int n) { return std::string(static_cast<std::size_t>(n), ' '); }

std::string join_params(const std::vector<std::string>& ps) {
  std::string out;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (i > 0) out += ", ";
    out += ps[i];
  }
  return out;
}

std::string wrap(std::string s, bool parens) {
  return parens ? "(" + s + ")" : s;
}

std::string print(const Expr& e, int indent, int prec) {
  auto sub = [&](const ExprPtr& x, int in, int p) { return print(*x, in, p); };
  return std::visit(
      Overload{
          [&](const IntConst& x) { return std::to_string(x.value); },
          [&](const Nil&) { return std::string("nil"); },
          [&](const Var& x) { return x.name; },
          [&](const Cons& x) {
            return "cons(" + sub(x.head, indent, 0) + ", " +
                   sub(x.tail, indent, 0) + ")";
          },
          [&](const FunApp& x) {
            std::string out = x.callee + "(";
            for (std::size_t i = 0; i < x.args.size(); ++i) {
              if (i > 0) out += ", ";
              out += sub(x.args[i], indent, 0);
            }
            return out + ")";
          },
          [&](const BinOp& x) {
            bool additive =
                x.op == BinOpKind::kAdd || x.op == BinOpKind::kSub;
            int level = additive ? 1 : 2;
            std::string s = sub(x.lhs, indent, level) + " " +
                            to_string(x.op) + " " +
                            sub(x.rhs, indent, level + 1);
            return wrap(std::move(s), prec > level);
          },
          [&](const Let& x) {
            std::string s = "let " + x.binder + " = " +
                            sub(x.bound, indent + 2, 0) + " in\n" +
                            pad(indent) + sub(x.body, indent, 0);
            return wrap(std::move(s), prec > 0);
          },
          [&](const If& x) {
            std::string s = "if " + sub(x.cond, indent, 0) + " then\n" +
                            pad(indent + 2) +
                            sub(x.then_branch, indent + 2, 0) + "\n" +
                            pad(indent) + "else\n" + pad(indent + 2) +
                            sub(x.else_branch, indent + 2, 0);
            return wrap(std::move(s), prec > 0);
          },
          [&](const Match& x) {
            std::string s = "match " + sub(x.scrutinee, indent, 0) +
                            " with\n" + pad(indent) + "| nil -> " +
                            sub(x.nil_branch, indent + 2, 0) + "\n" +
                            pad(indent) + "| cons(" + x.head_binder + ", " +
                            x.tail_binder + ") ->\n" + pad(indent + 2) +
                            sub(x.cons_branch, indent + 2, 0);
            return wrap(std::move(s), prec > 0);
          },
          [&](const LetFun& x) {
            const FunDef& d = *x.def;
            std::string s = "letfun " + d.name + "(" +
                            join_params(d.params) + ")" +
                            (d.declared_type
                                 ? " : " + d.declared_type->to_string()
                                 : std::string()) +
                            " =\n" +
                            pad(indent + 2) + sub(d.body, indent + 2, 0) +
                            "\n" + pad(indent) + "in\n" + pad(indent) +
                            sub(x.body, indent, 0);
            return wrap(std::move(s), prec > 0);
          },
          [&](const LetExtern& x) {
            std::string s = "letextern " + x.decl.name + "(" +
                            join_params(x.decl.params) + ")";
            if (x.decl.type) s += " : " + x.decl.type->to_string();
            s += " in\n" + pad(indent) + sub(x.body, indent, 0);
            return wrap(std::move(s), prec > 0);
          },
      },
      e.node);
}

}  // namespace

std::string print_expr(const Expr& e, int indent) {
  return print(e, indent, 0);
}

std::string print_program(
    const Program& p, const std::map<std::string, FirstOrderType>& annotations) {
  std::string out;
  auto annotation = [&](const std::string& name,
                        const std::optional<FirstOrderType>& declared) {
    auto it = annotations.find(name);
    if (it != annotations.end())
      out += name + " : " + it->second.to_string() + "\n";
    else if (declared)
      out += name + " : " + declared->to_string() + "\n";
  };
  for (const auto& ext : p.externs) {
    annotation(ext.name, ext.type);
    out += "letextern " + ext.name + "(" + join_params(ext.params) +
           ") in\n\n";
  }
  for (const auto& f : p.functions) {
    annotation(f->name, f->declared_type);
    out += "letfun " + f->name + "(" + join_params(f->params) + ") =\n  " +
           print(*f->body, 2, 0) + "\nin\n\n";
  }
  if (p.main) out += "main = " + print(*p.main, 2, 0) + "\n";
  return out;
}

}  // namespace polysize
