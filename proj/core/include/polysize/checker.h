#ifndef POLYSIZE_CHECKER_H
#define POLYSIZE_CHECKER_H

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polysize/ast.h"
#include "polysize/types.h"

namespace polysize {

enum class GoalKind { kPolyEq, kPolyZero, kTypeEq };

struct Obligation {
  ConstraintSet d;
  GoalKind kind = GoalKind::kPolyZero;
  Polynomial lhs;  // kPolyEq, kPolyZero
  Polynomial rhs;  // kPolyEq
  SizedType lhs_type;  // kTypeEq
  SizedType rhs_type;  // kTypeEq
  SourcePos pos;
  std::string rule;

  std::string goal_string() const;
  // "{n = 0} ⊢ n*m = 0"
  std::string to_string() const;
};

enum class Verdict { kHolds, kFails, kVacuous };
const char* to_string(Verdict v);

// Throws OutsideFragment if ob.d is outside the fragment.
Verdict decide_entailment(const Obligation& ob);

struct Decision {
  Obligation obligation;
  Verdict verdict;
};

struct ThetaResult {
  std::map<std::string, Polynomial> sizes;
  std::map<std::string, SizedType> types;
  // Equations p = p' from repeated size variables.
  std::vector<std::pair<Polynomial, Polynomial>> c;
  // Pairs of actual types met by the same formal type variable.
  std::vector<std::pair<SizedType, SizedType>> type_eqs;
};

// Matches formal parameter types against actual argument types. Bindings
// under an actual list whose size D forces to 0 are irrelevant: they never
// generate equations and yield to live bindings. Throws TypeError
// (ShapeMismatch) when the underlying shapes differ.
ThetaResult theta(const std::vector<SizedType>& formals,
                  const std::vector<SizedType>& actuals,
                  const ConstraintSet& d = {});

struct FunctionReport {
  std::string name;
  std::optional<FirstOrderType> type;
  std::vector<Decision> decisions;
  std::vector<std::string> warnings;
  // Set when checking stopped before deciding (missing annotation,
  // underlying type mismatch, invalid annotation).
  std::optional<std::string> error;
  std::string error_kind;
  // D-equations emitted outside the n - c fragment.
  int fragment_violations = 0;

  bool accepted() const;
  // First obligation that does not hold.
  const Decision* first_failure() const;
};

// Checks f against `type` with callees typed by sigma (which should contain
// f itself for recursion). Throws RestrictionViolation if f's body matches
// on a let-bound variable. Expects core form.
FunctionReport check_function(const FunDef& f, const FirstOrderType& type,
                              const Signature& sigma);

// Sigma from every annotated top-level function and extern.
Signature program_signature(const Program& p);

struct ProgramReport {
  std::vector<FunctionReport> functions;
  bool accepted() const;
};

// Desugars, validates the restriction, then checks every function against
// its annotation. Throws RestrictionViolation.
ProgramReport check_program(const Program& p);

}  // namespace polysize

#endif  // POLYSIZE_CHECKER_H
