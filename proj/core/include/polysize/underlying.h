#ifndef POLYSIZE_UNDERLYING_H
#define POLYSIZE_UNDERLYING_H

#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "polysize/ast.h"
#include "polysize/sized_type.h"

namespace polysize {

// A type with sizes erased: Int, a type variable, or a list.
class UType {
 public:
  UType() : node_(IntT{}) {}
  static UType integer() { return UType(IntT{}); }
  static UType var(std::string name) { return UType(VarT{std::move(name)}); }
  static UType list(UType elem);

  bool is_int() const { return std::holds_alternative<IntT>(node_); }
  bool is_var() const { return std::holds_alternative<VarT>(node_); }
  bool is_list() const { return std::holds_alternative<ListT>(node_); }
  const std::string& var_name() const { return std::get<VarT>(node_).name; }
  const UType& elem() const { return *std::get<ListT>(node_).elem; }

  friend bool operator==(const UType& a, const UType& b);
  std::string to_string() const;

 private:
  struct IntT {};
  struct VarT {
    std::string name;
  };
  struct ListT {
    std::shared_ptr<const UType> elem;
  };
  using Node = std::variant<IntT, VarT, ListT>;
  explicit UType(Node n) : node_(std::move(n)) {}
  Node node_;
};

struct UFunType {
  std::vector<UType> params;
  UType result;

  friend bool operator==(const UFunType&, const UFunType&) = default;
  std::string to_string() const;
};

UType erase(const SizedType& t);
UFunType erase(const FirstOrderType& t);

// Sized type of the given shape with every list size replaced by `size`.
SizedType with_sizes(const UType& t, const Polynomial& size);

// Most general underlying types of all top-level functions. Functions are
// processed in call-graph SCC order: monomorphic inside an SCC, polymorphic
// once generalized. Type variables are named a, b, ... per function.
// Externs contribute their declared types. Throws TypeError
// (UnificationFailure, OccursCheck, UnknownFunction, UnboundVariable,
// ArityMismatch, MissingAnnotation).
std::map<std::string, UFunType> infer_underlying(const Program& p);

using NodeTypes = std::unordered_map<const Expr*, UType>;

// Underlying type of every expression node of f's body when f and its
// callees have the declared types in sigma. Type variables of f's declared
// type are rigid; unconstrained leftovers are named "_1", "_2", ...
NodeTypes infer_node_types(const FunDef& f, const FirstOrderType& declared,
                           const Signature& sigma);

// Template produced from an underlying type: input lists get size variables
// (n when there is only one, otherwise n1..nk, outermost first, left to
// right); output lists get placeholders p1..ps, outermost first.
struct TypeTemplate {
  FirstOrderType type;
  std::vector<std::string> size_vars;
  std::vector<std::string> placeholders;
};

TypeTemplate annotate_with_variables(const UFunType& t);

}  // namespace polysize

#endif  // POLYSIZE_UNDERLYING_H
