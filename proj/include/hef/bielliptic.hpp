// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).
//
// The bielliptic genus-3 family. From parameters (alpha, beta, gamma) with
// beta*gamma != 0 build
//
//   V: y^2 = x(x-1)(x-alpha^2)(x-beta^2)(x-gamma^2)(x-alpha^2/beta^2)
//                                                 (x-alpha^2/gamma^2),
//   E: Y^2 = X(X-1)(X - k1^2 (1-1/gamma^2)(gamma^2-alpha^2)),
//   C: Y^2 = X(X-1)(X-a^2)(X-b^2)(X-c^2),
//
// with the degree-2 morphisms phi1: V->E, phi2: V->C, the even-model curves
// H and W with the isomorphisms zeta/zeta~ and xi, and the matrices K1, K2,
// L1, L2 representing the induced maps between the Jacobians. The identity
// L K = 2 I (the isogeny composed with its dual is doubling) holds exactly.

#ifndef HEF_BIELLIPTIC_HPP
#define HEF_BIELLIPTIC_HPP

#include "hef/curves.hpp"
#include "hef/linalg.hpp"
#include "hef/types.hpp"

namespace hef {

struct FamilyParameters {
  cplx alpha, beta, gamma;
  cplx k1, k2;
  cplx a, b, c;
};

struct FamilyCurves {
  CurveSpec v;  // genus 3
  CurveSpec e;  // genus 1
  CurveSpec c;  // genus 2
  cvec h_roots;  // even octic model t^2 = prod (s - r), roots {+-1,+-a,+-b,+-c}
  cvec w_roots;  // even quartic model T^2 = prod (S - r), roots {1,a^2,b^2,c^2}
};

struct ReductionMatrices {
  CMat k1;  // 1 x 3
  CMat k2;  // 2 x 3
  CMat l1;  // 3 x 1
  CMat l2;  // 3 x 2
  CMat k;   // stacked (K1; K2), 3 x 3
  CMat l;   // concatenated (L1 | L2), 3 x 3
};

struct BiellipticFamily {
  FamilyParameters params;
  FamilyCurves curves;
  ReductionMatrices mats;
  // a^2 = b^2 c^2 (or a permutation) within 1e-10: the genus-2 block admits a
  // further elliptic reduction (flagged only, not performed).
  bool degenerate_reduction_possible = false;
};

// Validates the non-degeneracy conditions and builds everything; throws
// DegenerateFamily naming the failed condition.
BiellipticFamily build_family(const cplx& alpha, const cplx& beta,
                              const cplx& gamma);

// Curve morphisms. Points at poles map to the curve's point at infinity when
// that is where the morphism sends them; phi2 at x = alpha is a genuine pole
// of the odd model and raises AtPole.
CurvePoint phi1(const BiellipticFamily& fam, const CurvePoint& p);  // V -> E
CurvePoint phi2(const BiellipticFamily& fam, const CurvePoint& p);  // V -> C

// Even-model isomorphisms. H and W points are plain coordinate pairs, kept as
// CurvePoint (x = s, y = t) with on-curve checks against the stored roots.
CurvePoint zeta_tilde(const BiellipticFamily& fam, const CurvePoint& p);  // V -> H
CurvePoint zeta(const BiellipticFamily& fam, const CurvePoint& p);        // H -> V
CurvePoint xi(const BiellipticFamily& fam, const CurvePoint& p);          // W -> E
CurvePoint phi_bar1(const CurvePoint& p);  // H -> W, (s,t) -> (s^2, t)
CurvePoint phi_bar2(const CurvePoint& p);  // H -> C, (s,t) -> (s^2, st)

bool on_even_model(const cvec& roots, const CurvePoint& p, double tol = 1e-9);

// The two preimages of a C point under phi2 (distinct for generic points).
std::pair<CurvePoint, CurvePoint> phi2_preimages(const BiellipticFamily& fam,
                                                 const CurvePoint& q);

// Max residual, over sample points, of the differential pullback identities
// behind K1 and K2: phi1^* omega_E = (1/k1)(omega_1 - alpha^2 omega_5) and
// phi2^* (omega_1^C, omega_3^C) = -(1/k2)(omega_1 +- 2 alpha omega_3
// + alpha^2 omega_5).
struct PullbackReport {
  double max_residual = 0.0;
  std::size_t samples = 0;
};
PullbackReport pullback_residual(const BiellipticFamily& fam,
                                 std::size_t samples = 100,
                                 std::uint64_t seed = 0x9E3779B9ull);

}  // namespace hef

#endif  // HEF_BIELLIPTIC_HPP
