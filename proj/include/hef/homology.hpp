// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).
//
// Homology basis for y^2 = N(x) built from "dumbbell" cycles: for consecutive
// (sorted) branch points e_j, e_{j+1}, the cycle runs from e_j to e_{j+1} on
// one sheet and back on the other. Consecutive dumbbells intersect in exactly
// one point (the shared branch point), which makes the intersection pairing
// computable from local data: in the local coordinate t with t^2 = x - e the
// two arcs pass through t = 0 along straight rays, and the crossing sign is
// the orientation of the pair of tangents.

#ifndef HEF_HOMOLOGY_HPP
#define HEF_HOMOLOGY_HPP

#include <cstddef>

#include "hef/curves.hpp"
#include "hef/types.hpp"

namespace hef {

// One dumbbell over branch segment `seg` (joining roots()[seg] and
// roots()[seg+1]). orientation +1 means: out on sheet +, back on sheet -.
struct Dumbbell {
  std::size_t seg = 0;
  int orientation = +1;
};

// A homology class represented as a formal sum of dumbbells.
struct Cycle {
  std::vector<Dumbbell> parts;

  Cycle reversed() const {
    Cycle r = *this;
    for (auto& d : r.parts) d.orientation = -d.orientation;
    return r;
  }
};

struct HomologyBasis {
  std::vector<Cycle> a;  // a_1..a_g
  std::vector<Cycle> b;  // b_1..b_g
};

// Quadrature grid along one branch segment with the square-root endpoint
// behavior split off: with x(t) = m - r*cos(t) the endpoint pair contributes
// (x - e_j)(x - e_{j+1}) = -(r sin t)^2, so the sheet-+ determination is
//   y(x(t)) = sign * i * r * sin(t) * W(t),
// where W is a continuous branch of sqrt(prod over the other branch points)
// along the segment and `sign` anchors the mid-segment value to the principal
// square root of N.
struct SegmentGrid {
  std::size_t seg = 0;
  std::size_t n = 0;
  cplx half_span;            // r = (e_{j+1} - e_j)/2
  cvec x;                    // node positions, midpoint rule in t
  cvec w;                    // W(t_k)
  double sign = 1.0;
};

SegmentGrid segment_grid(const CurveSpec& curve, std::size_t seg,
                         std::size_t n);

// y on sheet + at grid node k.
cplx segment_y(const SegmentGrid& grid, std::size_t k);

// Principal square root with the imaginary part of a real input canonicalized
// to +0, so branch choices on the real axis are deterministic.
cplx psqrt(const cplx& z);

// Signed intersection number of two cycles (local rule at shared branch
// points). Throws UnsupportedConfiguration when tangency spoils the local
// transversality test.
int intersection_number(const CurveSpec& curve, const Cycle& c1,
                        const Cycle& c2);

std::vector<std::vector<int>> intersection_matrix(const CurveSpec& curve,
                                                  const HomologyBasis& basis);

// Deterministic canonical basis from the sorted branch points; the returned
// basis satisfies a_i . b_j = delta_ij, a.a = b.b = 0 exactly.
HomologyBasis build_homology_basis(const CurveSpec& curve);

}  // namespace hef

#endif  // HEF_HOMOLOGY_HPP
