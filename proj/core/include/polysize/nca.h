#ifndef POLYSIZE_NCA_H
#define POLYSIZE_NCA_H

#include <cstdint>
#include <string>
#include <vector>

#include "polysize/poly.h"

namespace polysize {

using Node = std::vector<std::int64_t>;

// C(d+k, k): coefficients of a degree-d polynomial in k variables.
std::uint64_t required_measurements(int d, int k);

// Nodes on hyperplanes of the first coordinate. Plane i fixes the first
// coordinate to `value` and hosts a (k-1)-dimensional configuration of
// degree `degree` (d, d-1, ..., 0 in plane order).
struct NodeConfiguration {
  struct Plane {
    std::int64_t value = 0;
    int degree = 0;
    std::size_t count = 0;
  };
  int k = 0;
  int d = 0;
  std::vector<Node> nodes;
  std::vector<Plane> planes;  // empty for k <= 1
};

// Greedy recursive construction inside [0, bound]^k: the first d+1
// admissible hyperplane values are taken in increasing order, and in the
// one-dimensional base case the first d+1 values where no exclusion
// vanishes. `vars` names the coordinates of the exclusion polynomials.
// Throws InferenceError(NodeSearchExhausted).
NodeConfiguration nca_nodes(int k, int d,
                            const std::vector<Polynomial>& exclusions,
                            const std::vector<std::string>& vars,
                            std::int64_t bound);

// Starts at bound = sum of exclusion degrees + d and doubles the bound at
// most `growth_limit` times.
NodeConfiguration nca_nodes_growing(int k, int d,
                                    const std::vector<Polynomial>& exclusions,
                                    const std::vector<std::string>& vars,
                                    int growth_limit);

}  // namespace polysize

#endif  // POLYSIZE_NCA_H
