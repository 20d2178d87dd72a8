#ifndef POLYSIZE_INHABITANT_H
#define POLYSIZE_INHABITANT_H

#include <string>

#include "polysize/ast.h"

namespace polysize {

// A concrete body for an extern whose output sizes match its declared type
// on every input satisfying the parameter sizes. Each output level of size
// p is produced by generating p(sizes) copies of the next level; element
// values are copied from an input head with the same leaf type when one is
// present and default to 1 otherwise. With one list parameter and p(0) = 0
// the body matches the parameter and maps nil to nil.
// Throws InferenceError(UnsupportedShape) when the extern has no type or a
// size polynomial takes non-integer values at natural points.
FunDef synthesize_inhabitant(const ExternDecl& decl);

// The program with every extern, top-level or nested with a type, replaced
// by its synthesized inhabitant.
Program replace_externs(const Program& p);

}  // namespace polysize

#endif  // POLYSIZE_INHABITANT_H
