#include "polysize/entailment.h"

#include "polysize/errors.h"

namespace polysize {

ConstraintSet ConstraintSet::with(const Polynomial& eq) const {
  ConstraintSet out = *this;
  out.equations.push_back(eq);
  return out;
}

namespace {

// For n - c returns (n, c).
std::optional<std::pair<std::string, Rational>> as_assignment(
    const Polynomial& eq) {
  std::optional<std::pair<std::string, Rational>> out;
  Rational constant = 0;
  for (const auto& [m, c] : eq.terms()) {
    if (m.is_constant()) {
      constant = c;
      continue;
    }
    if (m.degree() != 1 || (c != 1 && c != -1) || out) return std::nullopt;
    out = {{m.powers().begin()->first, c}};
  }
  if (!out) return std::nullopt;
  // c_n * n + constant = 0  =>  n = -constant / c_n
  out->second = -constant / out->second;
  return out;
}

}  // namespace

std::string ConstraintSet::to_string() const {
  std::string out;
  for (const auto& eq : equations) {
    if (!out.empty()) out += ", ";
    if (auto a = as_assignment(eq)) {
      out += a->first + " = " + polysize::to_string(a->second);
    } else {
      out += eq.to_string() + " = 0";
    }
  }
  return out;
}

bool in_fragment(const Polynomial& eq) {
  return eq.is_constant() || as_assignment(eq).has_value();
}

FragmentSolution solve_fragment(const ConstraintSet& d) {
  FragmentSolution out;
  for (const auto& eq : d.equations) {
    if (eq.is_constant()) {
      if (!eq.is_zero()) out.satisfiable = false;
      continue;
    }
    auto a = as_assignment(eq);
    if (!a) throw OutsideFragment(eq.to_string());
    const auto& [var, value] = *a;
    if (value < 0 || !is_integer(value)) out.satisfiable = false;
    auto [it, inserted] = out.values.emplace(var, value);
    if (!inserted && it->second != value) out.satisfiable = false;
  }
  return out;
}

bool entails_zero(const ConstraintSet& d, const Polynomial& p) {
  FragmentSolution sol = solve_fragment(d);
  if (!sol.satisfiable) return true;
  std::map<std::string, Polynomial> subst;
  for (const auto& [v, c] : sol.values) subst[v] = Polynomial::constant(c);
  return p.substitute(subst).is_zero();
}

bool entails_equal(const ConstraintSet& d, const Polynomial& a,
                   const Polynomial& b) {
  return entails_zero(d, a - b);
}

}  // namespace polysize
