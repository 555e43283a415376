#pragma once

#include <cstdint>
#include <vector>

#include "amra/intmat.hpp"

namespace amra {

/// Half-open integer box [lo, lo + shape) in Z^d. shape entries are >= 0;
/// a box with any zero extent is empty.
struct Box {
  IVec lo;
  IVec shape;

  Box() = default;
  Box(IVec lo_, IVec shape_);
  static Box empty(int dim);
  static Box single(const IVec& p);

  int dim() const { return static_cast<int>(lo.size()); }
  bool is_empty() const;
  std::int64_t size() const;
  IVec hi_inclusive() const;  // lo + shape - 1, valid only when nonempty

  bool contains(const IVec& p) const;
  std::int64_t flat(const IVec& p) const;  // row-major offset of p, p must be inside

  Box shifted(const IVec& t) const;
  Box hull(const Box& o) const;       // smallest box containing both
  Box intersect(const Box& o) const;
  /// {a + b : a in this, b in o} (exact for boxes).
  Box sum(const Box& o) const;
  /// Bounding box of {a - b : a in this, b in o}.
  Box difference(const Box& o) const;

  bool operator==(const Box& o) const { return lo == o.lo && shape == o.shape; }
};

/// Visit every point of the box in lexicographic order (last axis fastest).
template <class F>
void for_each_point(const Box& b, F&& f) {
  if (b.is_empty()) return;
  IVec p = b.lo;
  const int d = b.dim();
  for (;;) {
    f(p);
    int i = d - 1;
    for (; i >= 0; --i) {
      if (++p[i] < b.lo[i] + b.shape[i]) break;
      p[i] = b.lo[i];
    }
    if (i < 0) break;
  }
}

/// Bounding box, rounded outward, of the exact rational image of `b`
/// under m^{-1}: contains every integer n with m*n in b.
Box rational_preimage_box(const IntMatrix& m, const Box& b);

/// Bounding box of the image of `b` under the integer matrix m.
Box image_box(const IntMatrix& m, const Box& b);

}  // namespace amra
