#include "polysize/sized_type.h"

#include <sstream>

namespace polysize {

SizedType SizedType::list(SizedType elem, Polynomial size) {
  return SizedType(ListT{std::make_shared<const SizedType>(std::move(elem)),
                         std::move(size)});
}

int SizedType::depth() const {
  int d = 0;
  for (const SizedType* t = this; t->is_list(); t = &t->elem()) ++d;
  return d;
}

std::vector<Polynomial> SizedType::spine_sizes() const {
  std::vector<Polynomial> out;
  for (const SizedType* t = this; t->is_list(); t = &t->elem())
    out.push_back(t->size());
  return out;
}

const SizedType& SizedType::leaf() const {
  const SizedType* t = this;
  while (t->is_list()) t = &t->elem();
  return *t;
}

bool SizedType::same_shape(const SizedType& other) const {
  if (is_int()) return other.is_int();
  if (is_var()) return other.is_var() && var_name() == other.var_name();
  return other.is_list() && elem().same_shape(other.elem());
}

SizedType SizedType::map_sizes(
    const std::function<Polynomial(const Polynomial&)>& f) const {
  if (!is_list()) return *this;
  return list(elem().map_sizes(f), f(size()));
}

SizedType SizedType::substitute_sizes(
    const std::map<std::string, Polynomial>& subst) const {
  return map_sizes(
      [&](const Polynomial& p) { return p.substitute(subst); });
}

SizedType SizedType::substitute_types(
    const std::map<std::string, SizedType>& subst) const {
  if (is_var()) {
    auto it = subst.find(var_name());
    return it == subst.end() ? *this : it->second;
  }
  if (is_list()) return list(elem().substitute_types(subst), size());
  return *this;
}

SizedType SizedType::collapse_zero() const {
  if (!is_list()) return *this;
  if (size().is_zero()) {
    return list(elem().map_sizes([](const Polynomial&) { return Polynomial{}; }),
                Polynomial{});
  }
  return list(elem().collapse_zero(), size());
}

VarSet SizedType::free_size_vars() const {
  VarSet out;
  SizedType normal = collapse_zero();
  for (const SizedType* t = &normal; t->is_list(); t = &t->elem())
    for (const auto& v : t->size().variables()) out.insert(v);
  return out;
}

std::set<std::string> SizedType::type_vars() const {
  const SizedType& l = leaf();
  if (l.is_var()) return {l.var_name()};
  return {};
}

bool operator==(const SizedType& a, const SizedType& b) {
  if (a.is_int()) return b.is_int();
  if (a.is_var()) return b.is_var() && a.var_name() == b.var_name();
  return b.is_list() && a.size() == b.size() && a.elem() == b.elem();
}

std::string SizedType::to_string() const {
  if (is_int()) return "Int";
  if (is_var()) return var_name();
  const Polynomial& p = size();
  bool atomic = p.terms().size() <= 1 &&
                (p.is_constant() ? p.as_constant()->get_den() == 1 &&
                                       *p.as_constant() >= 0
                                 : p.terms().begin()->second == 1 &&
                                       p.terms().begin()->first.degree() == 1);
  return "L(" + elem().to_string() + (atomic ? "," : ", ") + p.to_string() +
         ")";
}

VarSet FirstOrderType::param_size_vars() const {
  VarSet out;
  for (const auto& p : params)
    for (const auto& v : p.free_size_vars()) out.insert(v);
  return out;
}

std::string FirstOrderType::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i > 0) out += " * ";
    out += params[i].to_string();
  }
  return out + (params.empty() ? "-> " : " -> ") + result.to_string();
}

std::string validate_first_order_type(const FirstOrderType& type) {
  for (const auto& param : type.params) {
    for (const auto& size : param.spine_sizes()) {
      bool bare = size.terms().size() == 1 &&
                  size.terms().begin()->second == 1 &&
                  size.terms().begin()->first.degree() == 1;
      if (!bare) {
        return "parameter type " + param.to_string() +
               " must be annotated with size variables only";
      }
    }
  }
  VarSet params = type.param_size_vars();
  for (const auto& v : type.result.free_size_vars()) {
    if (!params.count(v)) {
      return "size variable '" + v +
             "' of the result does not occur in the parameter types";
    }
  }
  return {};
}

std::vector<std::string> totality_warnings(const FirstOrderType& type) {
  std::vector<std::string> out;
  VarSet all = type.param_size_vars();
  for (const auto& v : type.result.free_size_vars()) all.insert(v);
  std::vector<std::string> vars(all.begin(), all.end());
  if (vars.size() > 12) return out;
  for (unsigned mask = 1; mask < (1u << vars.size()); ++mask) {
    std::map<std::string, Polynomial> zero;
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (mask & (1u << i)) zero[vars[i]] = Polynomial{};
    VarSet covered;
    for (const auto& p : type.params)
      for (const auto& v : p.substitute_sizes(zero).free_size_vars())
        covered.insert(v);
    for (const auto& v :
         type.result.substitute_sizes(zero).free_size_vars()) {
      if (!covered.count(v)) {
        std::ostringstream msg;
        msg << "size variable '" << v << "' is hidden when";
        for (std::size_t i = 0; i < vars.size(); ++i)
          if (mask & (1u << i)) msg << " " << vars[i] << "=0";
        msg << "; the function cannot be total";
        out.push_back(msg.str());
        return out;
      }
    }
  }
  return out;
}

}  // namespace polysize
