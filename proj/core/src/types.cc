#include "polysize/types.h"

namespace polysize {

bool type_equiv(const ConstraintSet& d, const SizedType& a,
                const SizedType& b) {
  if (!a.same_shape(b)) return false;
  if (!a.is_list()) return true;
  if (!entails_equal(d, a.size(), b.size())) return false;
  if (entails_zero(d, a.size())) return true;
  return type_equiv(d, a.elem(), b.elem());
}

}  // namespace polysize
