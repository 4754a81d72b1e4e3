// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).
//
// Shared fixtures for the test binaries: the reference family context (built
// once per binary), point samplers, and a rejection sampler for fully complex
// family parameters (used by the matrix- and pullback-level checks that need
// no periods).

#ifndef HEF_TESTS_TEST_SUPPORT_HPP
#define HEF_TESTS_TEST_SUPPORT_HPP

#include <cmath>

#include "hef/context.hpp"
#include "hef/homology.hpp"
#include "hef/reduction.hpp"
#include "hef/rng.hpp"

namespace hef::testsupport {

inline const BiellipticFamily& reference_family() {
  static const BiellipticFamily fam =
      build_family(cplx(1.0 / 3.0), cplx(2.0), cplx(3.0));
  return fam;
}

inline const FamilyContext& reference_context() {
  static const FamilyContext ctx = build_family_context(reference_family());
  return ctx;
}

inline CurvePoint random_affine_point(const CurveSpec& curve, Rng& rng,
                                      double branch_margin = 0.04,
                                      double r_lo = 0.3, double r_hi = 1.4) {
  const double scale = curve.scale();
  cplx centroid(0.0);
  for (const cplx& e : curve.roots()) centroid += e;
  centroid /= static_cast<double>(curve.roots().size());
  for (int guard = 0; guard < 4000; ++guard) {
    const cplx x = centroid + rng.complex_annulus(r_lo * scale, r_hi * scale);
    if (curve.near_branch_point(x, branch_margin)) continue;
    cplx y = psqrt(curve.eval_n(x));
    if (rng.coin()) y = -y;
    return CurvePoint::affine(x, y);
  }
  fail(ErrorCode::DegenerateConfiguration, "sampler exhausted");
}

// A target point whose inbound integration ray passes close to branch points,
// so that detour-variant paths genuinely differ (different homotopy classes);
// path-independence checks on such points are not vacuous.
inline CurvePoint detour_exercising_point(const CurveSpec& curve) {
  const cvec& e = curve.roots();
  std::size_t best = 0;
  double widest = 0.0;
  for (std::size_t i = 0; i + 1 < e.size(); ++i) {
    const double gap = std::abs(e[i + 1] - e[i]);
    if (gap > widest) {
      widest = gap;
      best = i;
    }
  }
  const cplx x =
      0.5 * (e[best] + e[best + 1]) + iu * (0.03 * curve.scale());
  return CurvePoint::affine(x, psqrt(curve.eval_n(x)));
}

// Fully complex family parameters, rejection-sampled against the degeneracy
// guards. Periods are not required to exist comfortably for these; they feed
// the purely algebraic identities (matrices, pullbacks, morphisms).
inline BiellipticFamily random_complex_family(Rng& rng) {
  for (int guard = 0; guard < 4000; ++guard) {
    const cplx alpha = rng.complex_box(-0.55, 0.55, -0.45, 0.45);
    const cplx beta =
        std::polar(rng.uniform(1.25, 2.6), rng.uniform(-0.7, 0.7));
    const cplx gamma =
        std::polar(rng.uniform(2.7, 4.2), rng.uniform(-0.7, 0.7));
    if (std::abs(alpha) < 0.08) continue;
    try {
      return build_family(alpha, beta, gamma);
    } catch (const Error&) {
      continue;
    }
  }
  fail(ErrorCode::DegenerateFamily, "complex family sampler exhausted");
}

inline double rel_err(const cplx& got, const cplx& want) {
  return std::abs(got - want) / (1.0 + std::abs(want));
}

}  // namespace hef::testsupport

#endif  // HEF_TESTS_TEST_SUPPORT_HPP
