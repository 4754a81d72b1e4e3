// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "hef/homology.hpp"

#include <algorithm>
#include <cmath>

namespace hef {

cplx psqrt(const cplx& z) {
  if (z.imag() == 0.0) return std::sqrt(cplx(z.real(), 0.0));
  return std::sqrt(z);
}

SegmentGrid segment_grid(const CurveSpec& curve, std::size_t seg,
                         std::size_t n) {
  const cvec& e = curve.roots();
  if (seg + 1 >= e.size()) fail(ErrorCode::BadInput, "segment index out of range");
  SegmentGrid grid;
  grid.seg = seg;
  grid.n = n;
  const cplx mid = 0.5 * (e[seg] + e[seg + 1]);
  grid.half_span = 0.5 * (e[seg + 1] - e[seg]);
  grid.x.resize(n);
  grid.w.resize(n);

  // Continuous branch of W = sqrt(prod_{m != seg, seg+1} (x - e_m)): take the
  // principal square root factor by factor and flip signs node to node for
  // continuity.
  cvec prev_factor(e.size());
  for (std::size_t k = 0; k < n; ++k) {
    const double t = pi * (static_cast<double>(k) + 0.5) / static_cast<double>(n);
    const cplx x = mid - grid.half_span * std::cos(t);
    grid.x[k] = x;
    cplx w(1.0);
    for (std::size_t m = 0; m < e.size(); ++m) {
      if (m == seg || m == seg + 1) continue;
      cplx f = psqrt(x - e[m]);
      if (k > 0 && std::abs(f - prev_factor[m]) > std::abs(f + prev_factor[m]))
        f = -f;
      prev_factor[m] = f;
      w *= f;
    }
    grid.w[k] = w;
  }

  // Anchor: near the segment midpoint the sheet-+ value must be the principal
  // square root of N.
  const std::size_t k_mid = n / 2;
  const double t_mid =
      pi * (static_cast<double>(k_mid) + 0.5) / static_cast<double>(n);
  const cplx y_cand = iu * grid.half_span * std::sin(t_mid) * grid.w[k_mid];
  const cplx y_prin = psqrt(curve.eval_n(grid.x[k_mid]));
  grid.sign =
      (std::abs(y_cand - y_prin) <= std::abs(y_cand + y_prin)) ? 1.0 : -1.0;
  return grid;
}

cplx segment_y(const SegmentGrid& grid, std::size_t k) {
  const double t =
      pi * (static_cast<double>(k) + 0.5) / static_cast<double>(grid.n);
  return grid.sign * iu * grid.half_span * std::sin(t) * grid.w[k];
}

namespace {

// Tangent direction (in the local coordinate t = y/q, t^2 = x - e) of the leg
// of a dumbbell leaving the branch point e, including the dumbbell's
// orientation. `left_end` selects which end of the segment e is.
cplx leaving_direction(const CurveSpec& curve, const SegmentGrid& grid,
                       bool left_end, int orientation) {
  const std::size_t k = left_end ? std::max<std::size_t>(1, grid.n / 64)
                                 : grid.n - 1 - std::max<std::size_t>(1, grid.n / 64);
  const cvec& e = curve.roots();
  const cplx end = left_end ? e[grid.seg] : e[grid.seg + 1];
  const cplx x = grid.x[k];
  // Leg leaving a left end travels on sheet +; leaving a right end it is the
  // return leg on sheet -.
  const cplx y = (left_end ? 1.0 : -1.0) * segment_y(grid, k);
  const cplx q = psqrt(curve.eval_n(x) / (x - end));
  cplx w = y / q;
  w /= std::abs(w);
  return static_cast<double>(orientation) * w;
}

// Proper crossing test for open segments (shared endpoints excluded).
bool segments_cross(const cplx& a0, const cplx& a1, const cplx& b0,
                    const cplx& b1) {
  auto orient = [](const cplx& p, const cplx& q, const cplx& r) {
    const cplx u = q - p, v = r - p;
    return u.real() * v.imag() - u.imag() * v.real();
  };
  const double eps = 1e-14 * (std::abs(a1 - a0) + std::abs(b1 - b0));
  const double o1 = orient(a0, a1, b0), o2 = orient(a0, a1, b1);
  const double o3 = orient(b0, b1, a0), o4 = orient(b0, b1, a1);
  return (o1 > eps && o2 < -eps && ((o3 > eps && o4 < -eps) ||
                                    (o3 < -eps && o4 > eps))) ||
         (o1 < -eps && o2 > eps && ((o3 > eps && o4 < -eps) ||
                                    (o3 < -eps && o4 > eps)));
}

}  // namespace

int intersection_number(const CurveSpec& curve, const Cycle& c1,
                        const Cycle& c2) {
  int total = 0;
  for (const Dumbbell& d1 : c1.parts)
    for (const Dumbbell& d2 : c2.parts) {
      if (d1.seg == d2.seg) continue;  // same support: class contributes 0
      // Shared branch point only for adjacent segments.
      const std::size_t lo = std::min(d1.seg, d2.seg);
      const std::size_t hi = std::max(d1.seg, d2.seg);
      if (hi != lo + 1) continue;
      const std::size_t probe_n = 512;
      const SegmentGrid g1 = segment_grid(curve, d1.seg, probe_n);
      const SegmentGrid g2 = segment_grid(curve, d2.seg, probe_n);
      // The shared point is the right end of segment lo, left end of hi.
      const cplx w1 = leaving_direction(curve, g1, d1.seg == hi, d1.orientation);
      const cplx w2 = leaving_direction(curve, g2, d2.seg == hi, d2.orientation);
      const double cross = std::imag(std::conj(w1) * w2);
      if (std::abs(cross) < 0.1)
        fail(ErrorCode::UnsupportedConfiguration,
             "near-tangent cycle crossing at a branch point");
      total += (cross > 0.0) ? 1 : -1;
    }
  return total;
}

std::vector<std::vector<int>> intersection_matrix(const CurveSpec& curve,
                                                  const HomologyBasis& basis) {
  const std::size_t g = basis.a.size();
  std::vector<const Cycle*> all;
  for (const auto& c : basis.a) all.push_back(&c);
  for (const auto& c : basis.b) all.push_back(&c);
  std::vector<std::vector<int>> m(2 * g, std::vector<int>(2 * g, 0));
  for (std::size_t i = 0; i < 2 * g; ++i)
    for (std::size_t j = i + 1; j < 2 * g; ++j) {
      const int v = intersection_number(curve, *all[i], *all[j]);
      m[i][j] = v;
      m[j][i] = -v;
    }
  return m;
}

HomologyBasis build_homology_basis(const CurveSpec& curve) {
  const std::size_t g = curve.genus();
  const cvec& e = curve.roots();

  // The construction assumes the straight segments between consecutive sorted
  // branch points meet only at shared endpoints.
  for (std::size_t i = 0; i + 1 < e.size(); ++i)
    for (std::size_t j = i + 1; j + 1 < e.size(); ++j)
      if (segments_cross(e[i], e[i + 1], e[j], e[j + 1]))
        fail(ErrorCode::UnsupportedConfiguration,
             "branch-cut segments cross; basis construction not supported "
             "for this configuration");

  // The sheet anchor (principal square root at each segment midpoint) can
  // flip sides from gap to gap, so the raw chain signs gamma_j . gamma_{j+1}
  // are not uniform. Measure them and orient each dumbbell so the chain
  // pairing becomes +1 throughout; the symplectic assembly below then works
  // for any measured pattern.
  std::vector<int> eps(2 * g, +1);
  for (std::size_t j = 0; j + 1 < 2 * g; ++j) {
    Cycle cj, ck;
    cj.parts.push_back({j, +1});
    ck.parts.push_back({j + 1, +1});
    const int s = intersection_number(curve, cj, ck);
    if (s != 1 && s != -1)
      fail(ErrorCode::UnsupportedConfiguration,
           "adjacent dumbbells do not meet in a single point");
    eps[j + 1] = eps[j] * s;
  }

  HomologyBasis basis;
  for (std::size_t i = 1; i <= g; ++i) {
    Cycle a;
    a.parts.push_back({2 * i - 2, eps[2 * i - 2]});
    basis.a.push_back(a);
    Cycle b;
    for (std::size_t k = i; k <= g; ++k)
      b.parts.push_back({2 * k - 1, eps[2 * k - 1]});
    basis.b.push_back(b);
  }

  const auto m = intersection_matrix(curve, basis);
  for (std::size_t i = 0; i < 2 * g; ++i)
    for (std::size_t j = 0; j < 2 * g; ++j) {
      int expect = 0;
      if (j == i + g) expect = 1;
      if (i == j + g) expect = -1;
      if (m[i][j] != expect)
        fail(ErrorCode::UnsupportedConfiguration,
             "constructed basis is not symplectic");
    }
  return basis;
}

}  // namespace hef
