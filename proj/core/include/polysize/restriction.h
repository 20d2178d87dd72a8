#ifndef POLYSIZE_RESTRICTION_H
#define POLYSIZE_RESTRICTION_H

#include <vector>

#include "polysize/ast.h"

namespace polysize {

struct RestrictionReport {
  std::vector<RestrictionViolation> violations;
  bool ok() const { return violations.empty(); }
};

// A match may only scrutinize a formal parameter or a variable bound by the
// head/tail binders of an enclosing match. Expects core form.
RestrictionReport validate_restriction(const Program& p);
RestrictionReport validate_restriction(const FunDef& f);

// Throws the first violation, if any.
void require_restriction(const Program& p);

}  // namespace polysize

#endif  // POLYSIZE_RESTRICTION_H
