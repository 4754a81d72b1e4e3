// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).
//
// Abel map u = int_base^P (omega_1, omega_3, ..., omega_{2g-1}), integrated
// along a deterministic path: a series leg from infinity in the local
// parameter x = 1/t^2, then a straight segment with circular detours around
// branch points, with the sheet tracked by analytic continuation. Values are
// meaningful modulo the period lattice.

#ifndef HEF_ABEL_HPP
#define HEF_ABEL_HPP

#include "hef/curves.hpp"
#include "hef/periods.hpp"
#include "hef/sigma.hpp"
#include "hef/types.hpp"

namespace hef {

struct PathOptions {
  double detour_scale = 1.0;  // multiplies the default detour radius
  bool clockwise = false;     // detour side
  double tol = 1e-10;
};

class AbelMap {
 public:
  // base must lie on the curve (infinity or an affine point, branch points
  // allowed).
  AbelMap(CurveSpec curve, CurvePoint base);

  const CurveSpec& curve() const { return curve_; }
  const CurvePoint& base() const { return base_; }

  cvec map(const CurvePoint& p) const { return map(p, PathOptions{}); }
  cvec map(const CurvePoint& p, const PathOptions& opt) const;

 private:
  CurveSpec curve_;
  CurvePoint base_;
  cvec base_integral_;  // int_infinity^base, zero when base is infinity
};

struct LatticeReduction {
  cvec representative;
  std::vector<long> m1;
  std::vector<long> m2;
};

// Representative with both real coordinate blocks of (2 omega')^{-1} u with
// respect to (1, tau) folded into [-1/2, 1/2)^g.
LatticeReduction reduce_mod_lattice(const cvec& u, const PeriodData& periods);

// Dimensionless distance of u from the lattice: max folded coordinate.
double lattice_distance(const cvec& u, const PeriodData& periods);

struct InversionReport {
  cvec u;
  double sym_residual = 0.0;  // elementary-symmetric identities
  double y_residual = 0.0;    // linear system for wp_{1,1,*}
  double max_residual = 0.0;
};

// Residuals of the Jacobi inversion identities at u (no Abel integration).
InversionReport inversion_residual_at(const SigmaEvaluator& ev, const cvec& u,
                                      const std::vector<CurvePoint>& points);

// Full oracle: u = sum abel(P_i), then the identity residuals. This is the
// master consistency check of periods, characteristic, and sigma together.
InversionReport jacobi_inversion_residual(const SigmaEvaluator& ev,
                                          const AbelMap& map,
                                          const std::vector<CurvePoint>& points);

}  // namespace hef

#endif  // HEF_ABEL_HPP
