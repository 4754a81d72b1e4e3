// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).
//
// Reduction formulas for the genus-3 bielliptic family: the wp functions of V
// restricted along L1 are elliptic (closed forms in wp, wp' of E), restricted
// along L2 they are genus-2 (closed forms in wp^C data), and the two restricted
// states combine to the whole Jacobian through a three-term addition formula
// on factorized degree-9 polynomials.

#ifndef HEF_REDUCTION_HPP
#define HEF_REDUCTION_HPP

#include <array>

#include "hef/context.hpp"
#include "hef/types.hpp"

namespace hef {

// The six generators wp_{1,i}, wp_{1,1,i} (i = 1,3,5) of V's function field
// at one point of Jac(V).
struct WpState {
  cplx p11{0.0}, p13{0.0}, p15{0.0};
  cplx p111{0.0}, p113{0.0}, p115{0.0};
};

// Direct evaluation through V's sigma function; the oracle all closed forms
// are compared against.
WpState wp_state_direct(const SigmaEvaluator& sigma_v, const cvec& u);

// L1 u and L2 u embeddings of the sub-Jacobian coordinates.
cvec embed_l1(const BiellipticFamily& fam, const cplx& u);
cvec embed_l2(const BiellipticFamily& fam, const cvec& u2);
cvec embed_l(const BiellipticFamily& fam, const cplx& u1, const cvec& u35);

// Elliptic restriction: closed forms in wp(u), wp'(u) of E.
WpState wpV_on_L1(const FamilyContext& ctx, const cplx& u);

// Genus-2 restriction: closed forms in p2 = wp_{1,1}^C(u), p3 = wp_{1,1,1}^C,
// p4 = wp_{1,3}^C, p5 = wp_{1,1,3}^C.
struct Genus2Inputs {
  cplx p2, p3, p4, p5;
};
WpState genus2_restriction_formulas(const BiellipticFamily& fam,
                                    const Genus2Inputs& in);
WpState wpV_on_L2(const FamilyContext& ctx, const cvec& u2);

// The h-coefficients of the genus-2 restriction, exposed for edge-case tests.
cplx genus2_h1(const cplx& alpha, const cplx& p2, const cplx& p4);

// Four-point trace oracle: wp values of V at u = sum A(S_i) for four points
// with distinct x, from the interpolation polynomials H(x) and L(x). An
// independent route to the same values as wpV_on_L2 when the points are the
// phi2 preimages of two C points.
WpState hk_oracle(const BiellipticFamily& fam,
                  const std::array<CurvePoint, 4>& pts);

// Addition formula data: R(x,y) = (x + d2) y + x^3 (d1 x + d3) + d5 x^2
// + d7 x + d9, recovered from determinant samples by a 7x7 linear solve.
struct AdditionState {
  WpState state_u, state_v;
  cplx d1, d2, d3, d5, d7, d9;
  double solve_condition = 0.0;
  double rebuild_residual = 0.0;  // det-ratio re-evaluation at fresh samples
};

AdditionState addition_build(const WpState& state_u, const WpState& state_v);

// wp values at u+v: factor Phi(x, f(x)) = f(x)(x+d2)^2 - A(x)^2 by the two
// known cubics, then solve for the odd generators.
WpState wp_add(const BiellipticFamily& fam, const AdditionState& st);

// Full pipeline for wp^V at L1 u1 + L2 (u3, u5).
WpState corollary_pipeline(const FamilyContext& ctx, const cplx& u1,
                           const cvec& u35);

// Evaluate the sampled determinant ratio R(x, y) directly (test hook).
cplx addition_det_ratio(const WpState& state_u, const WpState& state_v,
                        const cplx& x, const cplx& y);

double wp_state_distance(const WpState& a, const WpState& b);

}  // namespace hef

#endif  // HEF_REDUCTION_HPP
