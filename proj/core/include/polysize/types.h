#ifndef POLYSIZE_TYPES_H
#define POLYSIZE_TYPES_H

#include <map>
#include <string>

#include "polysize/entailment.h"
#include "polysize/sized_type.h"

namespace polysize {

// Gamma: program variable to zero-order sized type.
using Context = std::map<std::string, SizedType>;

// D |- a = b: same shape, D entails equal sizes level by level, and element
// types are compared only while D does not force the enclosing size to 0.
// Throws OutsideFragment when D leaves the decidable fragment.
bool type_equiv(const ConstraintSet& d, const SizedType& a,
                const SizedType& b);

}  // namespace polysize

#endif  // POLYSIZE_TYPES_H
