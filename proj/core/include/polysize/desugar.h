#ifndef POLYSIZE_DESUGAR_H
#define POLYSIZE_DESUGAR_H

#include "polysize/ast.h"

namespace polysize {

// Hoists every compound operand into a fresh let-binding, left to right, so
// that operand slots hold variables only. Fresh names are "$1", "$2", ...
// counted per function body. Core-form input is returned unchanged.
Program desugar(const Program& p);
ExprPtr desugar_expr(const ExprPtr& e);

}  // namespace polysize

#endif  // POLYSIZE_DESUGAR_H
