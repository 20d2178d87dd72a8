#ifndef POLYSIZE_PRINTER_H
#define POLYSIZE_PRINTER_H

#include <map>
#include <string>

#include "polysize/ast.h"

namespace polysize {

// Pretty-printer for the surface syntax; output re-parses to an equal AST.
std::string print_expr(const Expr& e, int indent = 0);

// Annotation lines come from each definition's declared type unless
// `annotations` supplies one for that name.
std::string print_program(
    const Program& p,
    const std::map<std::string, FirstOrderType>& annotations = {});

}  // namespace polysize

#endif  // POLYSIZE_PRINTER_H
