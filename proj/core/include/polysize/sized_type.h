#ifndef POLYSIZE_SIZED_TYPE_H
#define POLYSIZE_SIZED_TYPE_H

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "polysize/poly.h"

namespace polysize {

// Zero-order sized type: Int, a type variable, or a list whose length is a
// size polynomial. Immutable; copies share structure.
class SizedType {
 public:
  struct IntT {};
  struct VarT {
    std::string name;
  };
  struct ListT {
    std::shared_ptr<const SizedType> elem;
    Polynomial size;
  };

  SizedType() : node_(IntT{}) {}
  static SizedType integer() { return SizedType(IntT{}); }
  static SizedType var(std::string name) {
    return SizedType(VarT{std::move(name)});
  }
  static SizedType list(SizedType elem, Polynomial size);

  bool is_int() const { return std::holds_alternative<IntT>(node_); }
  bool is_var() const { return std::holds_alternative<VarT>(node_); }
  bool is_list() const { return std::holds_alternative<ListT>(node_); }
  const std::string& var_name() const { return std::get<VarT>(node_).name; }
  const SizedType& elem() const { return *std::get<ListT>(node_).elem; }
  const Polynomial& size() const { return std::get<ListT>(node_).size; }

  // Number of nested list constructors on the outer spine.
  int depth() const;
  // Sizes on the outer spine, outermost first.
  std::vector<Polynomial> spine_sizes() const;
  // The non-list type at the bottom of the spine.
  const SizedType& leaf() const;

  // Same shape with sizes erased.
  bool same_shape(const SizedType& other) const;

  SizedType map_sizes(
      const std::function<Polynomial(const Polynomial&)>& f) const;
  SizedType substitute_sizes(
      const std::map<std::string, Polynomial>& subst) const;
  SizedType substitute_types(
      const std::map<std::string, SizedType>& subst) const;

  // Normal form of the zero-size equivalence: every size nested under a
  // syntactically zero list size is replaced by 0.
  SizedType collapse_zero() const;

  // Free size variables of the collapsed normal form.
  VarSet free_size_vars() const;
  std::set<std::string> type_vars() const;

  // Exact structural equality (no equivalence reasoning).
  friend bool operator==(const SizedType& a, const SizedType& b);

  // "Int", "a", "L(a,n)", "L(L(a,2), n*m)".
  std::string to_string() const;
  static SizedType parse(std::string_view text);

 private:
  using Node = std::variant<IntT, VarT, ListT>;
  explicit SizedType(Node node) : node_(std::move(node)) {}
  Node node_;
};

// tau_1 * ... * tau_n -> tau_{n+1}.
struct FirstOrderType {
  std::vector<SizedType> params;
  SizedType result;

  VarSet param_size_vars() const;
  friend bool operator==(const FirstOrderType&,
                         const FirstOrderType&) = default;
  std::string to_string() const;
  static FirstOrderType parse(std::string_view text);
};

// Sigma: function name to first-order type.
using Signature = std::map<std::string, FirstOrderType>;

// Structural validity of a declared first-order type: every parameter size is
// a bare size variable and FVS(result) is covered by the parameters. Returns
// an empty string when valid, otherwise a diagnostic.
std::string validate_first_order_type(const FirstOrderType& type);

// Warnings for the totality side condition: instantiating any subset of the
// size variables with zero must keep FVS(result) inside FVS(params).
std::vector<std::string> totality_warnings(const FirstOrderType& type);

}  // namespace polysize

#endif  // POLYSIZE_SIZED_TYPE_H
