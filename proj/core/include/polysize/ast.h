#ifndef POLYSIZE_AST_H
#define POLYSIZE_AST_H

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "polysize/errors.h"
#include "polysize/sized_type.h"

namespace polysize {

struct Expr;
struct FunDef;
using ExprPtr = std::shared_ptr<const Expr>;
using FunDefPtr = std::shared_ptr<const FunDef>;

enum class BinOpKind { kAdd, kSub, kDiv, kMod };

const char* to_string(BinOpKind op);

// Operand slots (BinOp, Cons, FunApp, If, Match) hold arbitrary expressions
// after parsing; in core form they are always Var nodes.
struct IntConst {
  std::int64_t value = 0;
};
struct BinOp {
  BinOpKind op;
  ExprPtr lhs;
  ExprPtr rhs;
};
struct Nil {};
struct Var {
  std::string name;
};
struct Cons {
  ExprPtr head;
  ExprPtr tail;
};
struct FunApp {
  std::string callee;
  std::vector<ExprPtr> args;
};
struct Let {
  std::string binder;
  ExprPtr bound;
  ExprPtr body;
};
struct If {
  ExprPtr cond;
  ExprPtr then_branch;
  ExprPtr else_branch;
};
struct Match {
  ExprPtr scrutinee;
  std::string head_binder;
  std::string tail_binder;
  ExprPtr nil_branch;
  ExprPtr cons_branch;
};
struct LetFun {
  FunDefPtr def;
  ExprPtr body;
};

struct ExternDecl {
  std::string name;
  std::vector<std::string> params;
  std::optional<FirstOrderType> type;
  SourcePos pos;
};

struct LetExtern {
  ExternDecl decl;
  ExprPtr body;
};

struct Expr {
  using Node = std::variant<IntConst, BinOp, Nil, Var, Cons, FunApp, Let, If,
                            Match, LetFun, LetExtern>;
  Node node;
  SourcePos pos;

  template <class T>
  const T* as() const {
    return std::get_if<T>(&node);
  }
  template <class T>
  bool is() const {
    return std::holds_alternative<T>(node);
  }
};

inline ExprPtr make_expr(Expr::Node node, SourcePos pos = {}) {
  return std::make_shared<const Expr>(Expr{std::move(node), pos});
}
inline ExprPtr make_var(std::string name, SourcePos pos = {}) {
  return make_expr(Var{std::move(name)}, pos);
}

struct FunDef {
  std::string name;
  std::vector<std::string> params;
  ExprPtr body;
  std::optional<FirstOrderType> declared_type;
  SourcePos pos;
};

struct Program {
  std::vector<FunDefPtr> functions;
  std::vector<ExternDecl> externs;
  ExprPtr main;

  const FunDef* find_function(const std::string& name) const;
  const ExternDecl* find_extern(const std::string& name) const;
};

// Structural equality ignoring source positions.
bool equal(const Expr& a, const Expr& b);
bool equal(const FunDef& a, const FunDef& b);
bool equal(const Program& a, const Program& b);

std::set<std::string> free_variables(const Expr& e);

// True iff every operand slot holds a variable, recursively.
bool is_core(const Expr& e);

// Names of functions called anywhere in e (excluding nested definitions'
// own names).
std::set<std::string> callees(const Expr& e);

}  // namespace polysize

#endif  // POLYSIZE_AST_H
