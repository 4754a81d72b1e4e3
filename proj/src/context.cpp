// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "hef/context.hpp"

namespace hef {

CurveContext build_curve_context(const CurveSpec& curve, double quad_tol,
                                 std::optional<CurvePoint> base) {
  CurveContext ctx;
  ctx.curve = curve;
  ctx.basis = build_homology_basis(curve);
  ctx.periods = compute_periods(curve, ctx.basis, quad_tol);
  ctx.sigma = std::make_shared<SigmaEvaluator>(curve, ctx.periods);
  ctx.abel = std::make_shared<AbelMap>(
      curve, base.value_or(CurvePoint::infinity()));
  return ctx;
}

CurveContext restore_curve_context(const CurveSpec& curve,
                                   const PeriodData& periods,
                                   std::optional<CurvePoint> base) {
  CurveContext ctx;
  ctx.curve = curve;
  ctx.basis = build_homology_basis(curve);
  ctx.periods = periods;
  ctx.periods.refresh_derived();
  ctx.sigma = std::make_shared<SigmaEvaluator>(curve, ctx.periods);
  ctx.abel = std::make_shared<AbelMap>(
      curve, base.value_or(CurvePoint::infinity()));
  return ctx;
}

FamilyContext build_family_context(const BiellipticFamily& fam,
                                   double quad_tol) {
  FamilyContext ctx;
  ctx.fam = fam;
  ctx.v = build_curve_context(fam.curves.v, quad_tol);
  ctx.e = build_curve_context(fam.curves.e, quad_tol);
  // The canonical Abel base point on C is the branch point (1, 0).
  ctx.c = build_curve_context(fam.curves.c, quad_tol,
                              CurvePoint::affine(cplx(1.0), cplx(0.0)));
  return ctx;
}

}  // namespace hef
