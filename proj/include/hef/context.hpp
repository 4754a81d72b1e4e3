// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).
//
// Ready-to-evaluate bundles: a curve with its homology basis, periods,
// characteristic, sigma evaluator and Abel map; and a bielliptic family with
// the three bundles for V, E, C. Building a bundle performs the expensive
// work (cycle quadrature and the characteristic search) once.

#ifndef HEF_CONTEXT_HPP
#define HEF_CONTEXT_HPP

#include <memory>
#include <optional>

#include "hef/abel.hpp"
#include "hef/bielliptic.hpp"
#include "hef/curves.hpp"
#include "hef/periods.hpp"
#include "hef/sigma.hpp"

namespace hef {

struct CurveContext {
  CurveSpec curve;
  HomologyBasis basis;
  PeriodData periods;
  std::shared_ptr<SigmaEvaluator> sigma;
  std::shared_ptr<AbelMap> abel;
};

// base defaults to infinity; pass an affine (branch) point for curves like C.
CurveContext build_curve_context(const CurveSpec& curve,
                                 double quad_tol = 1e-11,
                                 std::optional<CurvePoint> base = {});

// Rebuild a context from cached period data (skips quadrature and search).
CurveContext restore_curve_context(const CurveSpec& curve,
                                   const PeriodData& periods,
                                   std::optional<CurvePoint> base = {});

struct FamilyContext {
  BiellipticFamily fam;
  CurveContext v;
  CurveContext e;
  CurveContext c;
};

FamilyContext build_family_context(const BiellipticFamily& fam,
                                   double quad_tol = 1e-11);

}  // namespace hef

#endif  // HEF_CONTEXT_HPP
