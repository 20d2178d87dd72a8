#ifndef POLYSIZE_INTERPOLATE_H
#define POLYSIZE_INTERPOLATE_H

#include <string>
#include <vector>

#include "polysize/nca.h"
#include "polysize/poly.h"

namespace polysize {

// The unique polynomial of total degree <= d in `vars` taking values[i] at
// nodes[i], by exact Gaussian elimination on the monomial basis. Throws
// InferenceError(SingularSystem) if the nodes are not unisolvent or the
// counts do not match C(d+k, k).
Polynomial derive_polynomial(int d, const std::vector<std::string>& vars,
                             const std::vector<Node>& nodes,
                             const std::vector<Rational>& values);

}  // namespace polysize

#endif  // POLYSIZE_INTERPOLATE_H
