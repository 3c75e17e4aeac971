#include "beval/grid.hpp"

namespace beval {

void SemanticGrid::validate() const {
  if (spec.cells_per_side < 1) throw ValidationError("grid: empty spec");
  size_t expect = plane_size() * classes.size();
  if (kind == GridKind::Binary) {
    if (bits.size() != expect || !probs.empty())
      throw ValidationError("grid: binary data dimensions do not match spec");
    for (uint8_t v : bits)
      if (v > 1) throw ValidationError("grid: binary grid holds a non 0/1 value");
  } else {
    if (probs.size() != expect || !bits.empty())
      throw ValidationError("grid: probability data dimensions do not match spec");
    for (float v : probs)
      if (!(v >= 0.0f && v <= 1.0f))
        throw ValidationError("grid: probability outside [0,1]");
  }
}

}  // namespace beval
