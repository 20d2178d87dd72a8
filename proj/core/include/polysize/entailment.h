#ifndef POLYSIZE_ENTAILMENT_H
#define POLYSIZE_ENTAILMENT_H

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polysize/poly.h"

namespace polysize {

// Conjunction of equations, each meaning polynomial = 0.
struct ConstraintSet {
  std::vector<Polynomial> equations;

  ConstraintSet with(const Polynomial& eq) const;
  // "n = 0, m = 1"; the empty set prints as "".
  std::string to_string() const;
};

// True iff eq has the form n - c (or c - n) with c a rational constant, or
// is itself a constant.
bool in_fragment(const Polynomial& eq);

// Solved form of a fragment constraint set over the naturals.
struct FragmentSolution {
  bool satisfiable = true;
  std::map<std::string, Rational> values;
};

// Throws OutsideFragment on the first equation not of the form n - c.
// Unsatisfiable when a variable is forced to two values, to a negative or
// non-integral value, or when a nonzero constant equation occurs.
FragmentSolution solve_fragment(const ConstraintSet& d);

// D |- p = 0 over the naturals. Vacuously true for unsatisfiable D.
bool entails_zero(const ConstraintSet& d, const Polynomial& p);
bool entails_equal(const ConstraintSet& d, const Polynomial& a,
                   const Polynomial& b);

}  // namespace polysize

#endif  // POLYSIZE_ENTAILMENT_H
