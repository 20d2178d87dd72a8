#include "polysize/inhabitant.h"

#include <gmpxx.h>

#include <functional>
#include <sstream>

#include "polysize/errors.h"
#include "polysize/overload.h"
#include "polysize/parser.h"

namespace polysize {

namespace {

constexpr const char* kHelpers =
    "letfun $len(l) = match l with | nil -> 0"
    " | cons($h, $t) -> 1 + $len($t) in\n"
    "letfun $gen(z, x) = if x then cons(z, $gen(z, x - 1)) else nil in\n"
    "letfun $mul(a, b) = if b then a + $mul(a, b - 1) else 0 in\n";

// Where a size variable is read from: parameter index and nesting level.
struct SizeSource {
  std::size_t param = 0;
  int level = 1;
};

// Value of the size at `level` of the list bound to `var`; 0 when an
// enclosing level is empty.
std::string size_expr(const std::string& var, int level) {
  if (level == 1) return "$len(" + var + ")";
  std::string h = "$h" + std::to_string(level);
  return "match " + var + " with | nil -> 0 | cons(" + h + ", $t" +
         std::to_string(level) + ") -> " + size_expr(h, level - 1);
}

// First element at depth `depth` of `var`, or 1 when there is none.
std::string element_expr(const std::string& var, int depth) {
  if (depth == 0) return var;
  std::string h = "$e" + std::to_string(depth);
  return "match " + var + " with | nil -> 1 | cons(" + h + ", $r" +
         std::to_string(depth) + ") -> " + element_expr(h, depth - 1);
}

mpz_class denominator_lcm(const Polynomial& p) {
  mpz_class l = 1;
  for (const auto& [m, c] : p.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(),
                                               c.get_den().get_mpz_t());
  return l;
}

void require_integer_valued(const Polynomial& p, const std::string& name) {
  mpz_class l = denominator_lcm(p);
  if (l == 1) return;
  // Integer-valuedness of p is periodic with period l in each variable.
  std::vector<std::string> vars;
  for (const auto& v : p.variables()) vars.push_back(v);
  if (!l.fits_slong_p())
    throw InferenceError("UnsupportedShape",
                         "size " + p.to_string() + " of " + name +
                             " has an unsupported denominator");
  long period = l.get_si();
  double cells = 1;
  for (std::size_t i = 0; i < vars.size(); ++i) cells *= period;
  if (cells > 1e6)
    throw InferenceError("UnsupportedShape",
                         "size " + p.to_string() + " of " + name +
                             " has too large a denominator");
  Valuation point;
  for (const auto& v : vars) point[v] = 0;
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i == vars.size()) {
      if (!is_integer(p.evaluate(point)))
        throw InferenceError("UnsupportedShape",
                             "size " + p.to_string() + " of " + name +
                                 " is not an integer at some natural point");
      return;
    }
    for (long x = 0; x < period; ++x) {
      point[vars[i]] = x;
      walk(i + 1);
    }
  };
  walk(0);
}

std::string integer_literal(const mpz_class& z) {
  return z.get_str();
}

// Integer expression computing p from the bound size variables.
std::string poly_expr(const Polynomial& p,
                      const std::map<std::string, std::string>& names) {
  mpz_class l = denominator_lcm(p);
  std::vector<std::string> pos, neg;
  for (const auto& [m, c] : p.terms()) {
    mpq_class scaled = c * l;
    mpz_class coeff = scaled.get_num();
    bool negative = coeff < 0;
    if (negative) coeff = -coeff;
    std::string t = integer_literal(coeff);
    for (const auto& [v, e] : m.powers())
      for (unsigned i = 0; i < e; ++i)
        t = "$mul(" + t + ", " + names.at(v) + ")";
    (negative ? neg : pos).push_back(t);
  }
  auto sum = [](const std::vector<std::string>& ts) {
    if (ts.empty()) return std::string("0");
    std::string out = ts[0];
    for (std::size_t i = 1; i < ts.size(); ++i) out += " + " + ts[i];
    return out;
  };
  std::string value = "(" + sum(pos) + ") - (" + sum(neg) + ")";
  if (l == 1) return value;
  return "(" + value + ") div " + integer_literal(l);
}

}  // namespace

FunDef synthesize_inhabitant(const ExternDecl& decl) {
  if (!decl.type)
    throw InferenceError("UnsupportedShape",
                         "extern '" + decl.name + "' has no declared type");
  const FirstOrderType& t = *decl.type;
  std::vector<std::string> params = decl.params;
  if (params.size() != t.params.size())
    throw InferenceError("UnsupportedShape",
                         "extern '" + decl.name +
                             "' has a type of the wrong arity");

  std::vector<Polynomial> levels;
  for (const SizedType* x = &t.result; x->is_list(); x = &x->elem())
    levels.push_back(x->size());
  const SizedType& leaf = t.result.leaf();
  for (const auto& q : levels) require_integer_valued(q, decl.name);

  // Size variables in order of first occurrence.
  std::map<std::string, SizeSource> sources;
  std::vector<std::string> order;
  for (std::size_t i = 0; i < t.params.size(); ++i) {
    int level = 1;
    for (const SizedType* x = &t.params[i]; x->is_list(); x = &x->elem()) {
      for (const auto& v : x->size().variables())
        if (!sources.count(v)) {
          sources[v] = {i, level};
          order.push_back(v);
        }
      ++level;
    }
  }

  std::ostringstream body;
  body << kHelpers;
  std::map<std::string, std::string> names;
  for (const auto& v : order) {
    names[v] = "$v_" + v;
    body << "let " << names[v] << " = "
         << size_expr(params[sources[v].param], sources[v].level) << " in\n";
  }

  // Element source: a parameter whose leaf is the result leaf.
  std::string element = "1";
  for (std::size_t i = 0; i < t.params.size(); ++i) {
    if (!(t.params[i].leaf() == leaf)) continue;
    element = element_expr(params[i], t.params[i].depth());
    break;
  }

  std::string result = "$x";
  body << "let $x = " << element << " in\n";
  for (std::size_t j = levels.size(); j-- > 0;) {
    std::string q = "$q" + std::to_string(j + 1);
    body << "let " << q << " = " << poly_expr(levels[j], names) << " in\n";
    std::string next = "$y" + std::to_string(j + 1);
    body << "let " << next << " = $gen(" << result << ", " << q << ") in\n";
    result = next;
  }
  std::string core = body.str() + result;

  // One list parameter of depth one and p(0) = 0: nil maps to nil.
  bool single = t.params.size() == 1 && t.params[0].depth() == 1;
  std::string text;
  if (single && !levels.empty()) {
    Valuation zero;
    for (const auto& v : order) zero[v] = 0;
    if (levels[0].evaluate(zero) == 0) {
      std::ostringstream alt;
      alt << "match " << params[0] << " with | nil -> nil | cons($hd, $tl) ->\n"
          << kHelpers;
      for (const auto& v : order)
        alt << "let " << names[v] << " = $len(" << params[0] << ") in\n";
      alt << "let $x = $hd in\n";
      std::string r = "$x";
      for (std::size_t j = levels.size(); j-- > 0;) {
        std::string q = "$q" + std::to_string(j + 1);
        alt << "let " << q << " = " << poly_expr(levels[j], names) << " in\n";
        std::string next = "$y" + std::to_string(j + 1);
        alt << "let " << next << " = $gen(" << r << ", " << q << ") in\n";
        r = next;
      }
      text = alt.str() + r;
    }
  }
  if (text.empty()) text = core;

  std::string program = "letfun " + decl.name + "(";
  for (std::size_t i = 0; i < params.size(); ++i)
    program += (i ? ", " : "") + params[i];
  program += ") =\n" + text + "\nin\n";
  LexOptions options;
  options.allow_reserved_names = true;
  Program parsed = parse_program(program, options);
  FunDef out = *parsed.functions.at(0);
  out.pos = decl.pos;
  return out;
}

namespace {

// Nested letextern with a type becomes a letfun of its inhabitant.
ExprPtr replace_nested(const ExprPtr& e) {
  auto rec = [](const ExprPtr& x) { return replace_nested(x); };
  Expr::Node node = std::visit(
      Overload{
          [&](const IntConst& x) -> Expr::Node { return x; },
          [&](const Nil& x) -> Expr::Node { return x; },
          [&](const Var& x) -> Expr::Node { return x; },
          [&](const BinOp& x) -> Expr::Node {
            return BinOp{x.op, rec(x.lhs), rec(x.rhs)};
          },
          [&](const Cons& x) -> Expr::Node {
            return Cons{rec(x.head), rec(x.tail)};
          },
          [&](const FunApp& x) -> Expr::Node {
            FunApp out{x.callee, {}};
            for (const auto& a : x.args) out.args.push_back(rec(a));
            return out;
          },
          [&](const Let& x) -> Expr::Node {
            return Let{x.binder, rec(x.bound), rec(x.body)};
          },
          [&](const If& x) -> Expr::Node {
            return If{rec(x.cond), rec(x.then_branch), rec(x.else_branch)};
          },
          [&](const Match& x) -> Expr::Node {
            return Match{rec(x.scrutinee), x.head_binder, x.tail_binder,
                         rec(x.nil_branch), rec(x.cons_branch)};
          },
          [&](const LetFun& x) -> Expr::Node {
            auto def = std::make_shared<FunDef>(*x.def);
            def->body = rec(def->body);
            return LetFun{def, rec(x.body)};
          },
          [&](const LetExtern& x) -> Expr::Node {
            if (!x.decl.type) return LetExtern{x.decl, rec(x.body)};
            auto def = std::make_shared<FunDef>(synthesize_inhabitant(x.decl));
            return LetFun{def, rec(x.body)};
          },
      },
      e->node);
  return make_expr(std::move(node), e->pos);
}

}  // namespace

Program replace_externs(const Program& p) {
  Program out = p;
  out.externs.clear();
  std::vector<FunDefPtr> functions;
  for (const auto& ext : p.externs)
    functions.push_back(std::make_shared<FunDef>(synthesize_inhabitant(ext)));
  for (const auto& f : p.functions) {
    auto g = std::make_shared<FunDef>(*f);
    g->body = replace_nested(g->body);
    functions.push_back(g);
  }
  out.functions = std::move(functions);
  if (out.main) out.main = replace_nested(out.main);
  return out;
}

}  // namespace polysize
