#include "polysize/nca.h"

#include <optional>

#include "polysize/errors.h"

namespace polysize {

std::uint64_t required_measurements(int d, int k) {
  // C(d+k, k) computed incrementally; every partial product is exact.
  std::uint64_t c = 1;
  for (int i = 1; i <= k; ++i)
    c = c * static_cast<std::uint64_t>(d + i) / static_cast<std::uint64_t>(i);
  return c;
}

namespace {

std::vector<Polynomial> restrict_to(const std::vector<Polynomial>& exclusions,
                                    const std::string& var,
                                    std::int64_t value) {
  std::map<std::string, Polynomial> subst{
      {var, Polynomial::constant(Rational(static_cast<long>(value)))}};
  std::vector<Polynomial> out;
  out.reserve(exclusions.size());
  for (const auto& q : exclusions) out.push_back(q.substitute(subst));
  return out;
}

bool any_zero_constant(const std::vector<Polynomial>& qs) {
  for (const auto& q : qs)
    if (q.is_zero()) return true;
  return false;
}

// Configuration over coordinates vars[offset..], exclusions already
// restricted to the fixed prefix.
std::optional<NodeConfiguration> build(int k, int d,
                                       const std::vector<Polynomial>& excl,
                                       const std::vector<std::string>& vars,
                                       std::size_t offset,
                                       std::int64_t bound) {
  NodeConfiguration out;
  out.k = k;
  out.d = d;
  if (any_zero_constant(excl)) return std::nullopt;
  if (k == 0) {
    out.nodes.push_back({});
    return out;
  }
  const std::string& var = vars[offset];
  int needed = d + 1;
  int degree = d;
  for (std::int64_t v = 0; v <= bound && needed > 0; ++v) {
    auto restricted = restrict_to(excl, var, v);
    auto sub = build(k - 1, degree, restricted, vars, offset + 1, bound);
    if (!sub) continue;
    if (k > 1)
      out.planes.push_back({v, degree, sub->nodes.size()});
    for (auto& node : sub->nodes) {
      node.insert(node.begin(), v);
      out.nodes.push_back(std::move(node));
    }
    --needed;
    --degree;
  }
  if (needed > 0) return std::nullopt;
  return out;
}

}  // namespace

NodeConfiguration nca_nodes(int k, int d,
                            const std::vector<Polynomial>& exclusions,
                            const std::vector<std::string>& vars,
                            std::int64_t bound) {
  if (static_cast<int>(vars.size()) != k)
    throw InferenceError("NodeSearchExhausted",
                         "coordinate names do not match the dimension");
  auto out = build(k, d, exclusions, vars, 0, bound);
  if (!out)
    throw InferenceError("NodeSearchExhausted",
                         "no node configuration of degree " +
                             std::to_string(d) + " inside [0, " +
                             std::to_string(bound) + "]^" + std::to_string(k));
  return *out;
}

NodeConfiguration nca_nodes_growing(int k, int d,
                                    const std::vector<Polynomial>& exclusions,
                                    const std::vector<std::string>& vars,
                                    int growth_limit) {
  std::int64_t bound = d;
  for (const auto& q : exclusions) bound += q.degree();
  if (bound < 1) bound = 1;
  for (int i = 0;; ++i) {
    try {
      return nca_nodes(k, d, exclusions, vars, bound);
    } catch (const InferenceError&) {
      if (i >= growth_limit) throw;
    }
    bound *= 2;
  }
}

}  // namespace polysize
