// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "hef/reduction.hpp"

#include <algorithm>
#include <cmath>

#include "hef/poly.hpp"

namespace hef {

namespace {

cvec c1_of(const WpState& s) { return {s.p15, s.p13, s.p11}; }
cvec c2_of(const WpState& s) {
  return {0.5 * s.p115, 0.5 * s.p113, 0.5 * s.p111};
}

CMat g_of(const WpState& s) {
  CMat g(3, 3);
  g(0, 2) = s.p15;
  g(1, 0) = 1.0;
  g(1, 2) = s.p13;
  g(2, 1) = 1.0;
  g(2, 2) = s.p11;
  return g;
}

CMat b_of(const WpState& s) {
  const cvec c1 = c1_of(s), c2 = c2_of(s);
  const cvec c3 = g_of(s).apply(c1);
  CMat b(3, 3);
  for (std::size_t i = 0; i < 3; ++i) {
    b(i, 0) = c1[i];
    b(i, 1) = c2[i];
    b(i, 2) = c3[i];
  }
  return b;
}

cvec c4_of(const WpState& s) { return g_of(s).apply(c2_of(s)); }

// R(x, y) is the ratio of the bordered 7x7 determinant
//
//   | 1 x x^2 | x^3 y x^4 | xy    |
//   | I_3     | B(u)      | c4(u) |
//   | I_3     | B(v)      | c4(v) |
//
// by det(B(v) - B(u)). Subtracting the middle block row from the bottom one
// and eliminating the identity block reduces this exactly to a Schur
// complement: with r1 = (1, x, x^2), D = B(v) - B(u), w = c4(v) - c4(u),
//
//   s = (x^3, y, x^4) - r1 B(u),   t = xy - r1 c4(u),
//   R(x, y) = t - s D^{-1} w,
//
// which is what the evaluator below computes (one 3x3 solve per (u, v) pair
// instead of a 7x7 determinant per sample; much less cancellation noise).
struct RatioEvaluator {
  CMat bu;
  cvec c4u;
  cvec h;  // D^{-1} w

  RatioEvaluator(const WpState& su, const WpState& sv)
      : bu(b_of(su)), c4u(c4_of(su)) {
    const CMat d = b_of(sv) - bu;
    cvec w = c4_of(sv);
    for (std::size_t i = 0; i < 3; ++i) w[i] -= c4u[i];
    h = LU(d).solve(w);
  }

  cplx operator()(const cplx& x, const cplx& y) const {
    const cplx r1[3] = {cplx(1.0), x, x * x};
    cplx s[3] = {x * x * x, y, x * x * x * x};
    cplx t = x * y;
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t i = 0; i < 3; ++i) s[j] -= r1[i] * bu(i, j);
      t -= r1[j] * c4u[j];
    }
    return t - (s[0] * h[0] + s[1] * h[1] + s[2] * h[2]);
  }
};

}  // namespace

WpState wp_state_direct(const SigmaEvaluator& sigma_v, const cvec& u) {
  if (sigma_v.curve().genus() != 3)
    fail(ErrorCode::BadInput, "direct wp state needs the genus-3 curve");
  const WpRow row = sigma_v.wp_row(u);
  WpState s;
  s.p11 = row.p1[0];
  s.p13 = row.p1[1];
  s.p15 = row.p1[2];
  s.p111 = row.p11[0];
  s.p113 = row.p11[1];
  s.p115 = row.p11[2];
  return s;
}

cvec embed_l1(const BiellipticFamily& fam, const cplx& u) {
  return fam.mats.l1.apply(cvec{u});
}

cvec embed_l2(const BiellipticFamily& fam, const cvec& u2) {
  if (u2.size() != 2) fail(ErrorCode::BadInput, "L2 takes a 2-vector");
  return fam.mats.l2.apply(u2);
}

cvec embed_l(const BiellipticFamily& fam, const cplx& u1, const cvec& u35) {
  const cvec a = embed_l1(fam, u1);
  const cvec b = embed_l2(fam, u35);
  cvec out(3);
  for (std::size_t i = 0; i < 3; ++i) out[i] = a[i] + b[i];
  return out;
}

WpState wpV_on_L1(const FamilyContext& ctx, const cplx& u) {
  const auto& pr = ctx.fam.params;
  if (ctx.e.sigma->near_divisor(cvec{u}))
    fail(ErrorCode::OnThetaDivisor,
         "u is on the lattice of E (pole of the elliptic wp)");
  const cplx wp = ctx.e.sigma->wp_el(u);
  const cplx wpp = ctx.e.sigma->wp_el_prime(u);
  const cplx a2 = pr.alpha * pr.alpha;
  const cplx k1sq = pr.k1 * pr.k1;
  WpState s;
  s.p11 = a2 + 1.0 + wp / k1sq;
  s.p13 = -a2;
  s.p15 = 0.0;
  s.p111 = wpp / (k1sq * pr.k1);
  s.p113 = 0.0;
  s.p115 = 0.0;
  return s;
}

cplx genus2_h1(const cplx& alpha, const cplx& p2, const cplx& p4) {
  return 4.0 * alpha * (p4 + 1.0) / (p2 + p4 - 1.0);
}

WpState genus2_restriction_formulas(const BiellipticFamily& fam,
                                    const Genus2Inputs& in) {
  const cplx alpha = fam.params.alpha;
  const cplx k2 = fam.params.k2;
  const cplx p2 = in.p2, p3 = in.p3, p4 = in.p4, p5 = in.p5;

  const double guard_scale = 1.0 + std::abs(p2) + std::abs(p4);
  if (std::abs(p4) <= 1e-10 * guard_scale)
    fail(ErrorCode::DenominatorVanishes, "p4 vanishes");
  if (std::abs(1.0 - p2 - p4) <= 1e-10 * guard_scale)
    fail(ErrorCode::DenominatorVanishes, "1 - p2 - p4 vanishes");

  const cvec mu = mu_coefficients(fam.curves.v);
  const cplx mu2 = mu[1], mu4 = mu[2], mu6 = mu[3];

  const cplx d1 = p2 * p4 * p5 - 3.0 * p4 * p5 - p2 * p2 * p5 + 2.0 * p2 * p5 -
                  p5 - p3 * p4 * p4 + p2 * p3 * p4 - 3.0 * p3 * p4;
  const cplx d2 = p2 * p4 * p4 * p5 + 3.0 * p4 * p4 * p5 +
                  4.0 * p2 * p2 * p4 * p5 - 14.0 * p2 * p4 * p5 +
                  14.0 * p4 * p5 - p2 * p2 * p2 * p5 + p2 * p2 * p5 +
                  p2 * p5 - p5 - p3 * p4 * p4 * p4 -
                  4.0 * p2 * p3 * p4 * p4 + 14.0 * p3 * p4 * p4 +
                  p2 * p2 * p3 * p4 + 3.0 * p3 * p4;
  const cplx p2sq = p2 * p2, p2cu = p2sq * p2, p2q = p2sq * p2sq;
  const cplx p4sq = p4 * p4, p4cu = p4sq * p4, p4q = p4sq * p4sq;
  const cplx d3 = p4q + 4.0 * (p2 + 7.0) * p4cu +
                  2.0 * (19.0 * p2sq - 118.0 * p2 + 243.0) * p4sq -
                  4.0 * (7.0 * p2cu - 37.0 * p2sq + 77.0 * p2 - 119.0) * p4 +
                  p2q - 4.0 * p2cu + 6.0 * p2sq + 28.0 * p2 + 33.0;
  const cplx pm1 = p2 - 1.0;
  const cplx pm1_5 = pm1 * pm1 * pm1 * pm1 * pm1;
  const cplx d4 =
      (p2 - 1.0) * p4q + 4.0 * (p2sq + 14.0 * p2 - 47.0) * p4cu +
      2.0 * (19.0 * p2cu - 137.0 * p2sq + 329.0 * p2 - 323.0) * p4sq -
      4.0 * (7.0 * p2q - 36.0 * p2cu + 74.0 * p2sq - 76.0 * p2 + 47.0) * p4 +
      pm1_5;
  const cplx d5 =
      (p2sq - 2.0 * p2 + 33.0) * p4q +
      4.0 * (p2cu + 21.0 * p2sq - 101.0 * p2 + 119.0) * p4cu +
      2.0 * (19.0 * p2q - 156.0 * p2cu + 418.0 * p2sq - 492.0 * p2 + 243.0) *
          p4sq -
      28.0 * pm1_5 * p4 + pm1_5 * pm1;
  const cplx den_a = p2 + p4 - 1.0;   // = -(1 - p2 - p4)
  const cplx d6 = d1 / (2.0 * k2 * p4 * den_a);

  const cplx h1 = genus2_h1(alpha, p2, p4);
  const cplx h2 = 2.0 * alpha * alpha *
                  (5.0 * p4sq - 2.0 * p2 * p4 + 22.0 * p4 + p2sq + 2.0 * p2 +
                   5.0) /
                  (den_a * den_a);
  const cplx h3 = 4.0 * alpha * alpha * alpha * (p4 + 1.0) *
                  (5.0 * p4sq - 6.0 * p2 * p4 + 54.0 * p4 + 5.0 * p2sq +
                   6.0 * p2 + 5.0) /
                  (den_a * den_a * den_a);

  const cplx one_m = 1.0 - p2 - p4;
  const cplx k2sq = k2 * k2;

  WpState s;
  s.p11 = d1 * d1 / (16.0 * k2sq * p4sq * one_m * one_m) - mu2 - h1;
  s.p13 = alpha * d1 * d2 / (8.0 * k2sq * p4sq * one_m * one_m * one_m) -
          mu4 - mu2 * h1 - h2;
  s.p15 = alpha * alpha *
              (d3 * p3 * p3 * p4sq - 2.0 * d4 * p3 * p4 * p5 + d5 * p5 * p5) /
              (16.0 * k2sq * p4sq * one_m * one_m * one_m * one_m) -
          mu6 - mu4 * h1 - mu2 * h2 - h3;
  s.p111 = alpha * (p2 - 3.0 * p4 + 3.0) * (p2 * p5 - p5 - p3 * p4) /
               (2.0 * k2 * p4 * den_a) +
           s.p11 * d6;
  s.p113 = alpha * alpha *
               (3.0 * p2 * p4 * p5 - p4 * p5 + p2sq * p5 + 2.0 * p2 * p5 -
                3.0 * p5 - 3.0 * p3 * p4sq - p2 * p3 * p4 - p3 * p4) /
               (2.0 * k2 * p4 * den_a) +
           s.p13 * d6;
  s.p115 = alpha * alpha * alpha * (p3 * p4 - p2 * p5 + p5) /
               (2.0 * k2 * p4) +
           s.p15 * d6;
  return s;
}

WpState wpV_on_L2(const FamilyContext& ctx, const cvec& u2) {
  if (u2.size() != 2) fail(ErrorCode::BadInput, "genus-2 restriction takes u in C^2");
  if (ctx.c.sigma->near_divisor(u2))
    fail(ErrorCode::OnThetaDivisor, "u is on the theta divisor of C");
  const WpRow row = ctx.c.sigma->wp_row(u2);
  Genus2Inputs in;
  in.p2 = row.p1[0];
  in.p4 = row.p1[1];
  in.p3 = row.p11[0];
  in.p5 = row.p11[1];
  return genus2_restriction_formulas(ctx.fam, in);
}

WpState hk_oracle(const BiellipticFamily& fam,
                  const std::array<CurvePoint, 4>& pts) {
  const CurveSpec& v = fam.curves.v;
  const double scale = v.scale();
  for (const auto& p : pts) {
    if (p.at_infinity)
      fail(ErrorCode::DegenerateConfiguration, "oracle points must be affine");
    if (v.near_branch_point(p.x, 1e-6))
      fail(ErrorCode::DegenerateConfiguration,
           "oracle points must avoid branch points");
  }
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j)
      if (std::abs(pts[i].x - pts[j].x) < 1e-8 * scale)
        fail(ErrorCode::DegenerateConfiguration,
             "oracle points need distinct x coordinates");

  const cvec mu = mu_coefficients(v);  // mu[m] = mu_{2m}

  // H(x) = -sum_{k<l} ((y_k-y_l)/(x_k-x_l))^2 prod_{i != k,l} (x-x_i) /
  //        ((x_k-x_i)(x_l-x_i))  +  sum_i x^i sum_j mu_{6-2i-2j} h~_j.
  cvec hpoly(4, cplx(0.0));
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t l = k + 1; l < 4; ++l) {
      std::size_t o1 = 5, o2 = 5;
      for (std::size_t m = 0; m < 4; ++m) {
        if (m == k || m == l) continue;
        if (o1 == 5)
          o1 = m;
        else
          o2 = m;
      }
      const cplx xk = pts[k].x, xl = pts[l].x;
      const cplx x1 = pts[o1].x, x2 = pts[o2].x;
      const cplx w = (pts[k].y - pts[l].y) / (xk - xl);
      const cplx den = (xk - x1) * (xk - x2) * (xl - x1) * (xl - x2);
      const cplx f = w * w / den;
      // (x - x1)(x - x2) = x^2 - (x1+x2) x + x1 x2
      hpoly[2] -= f;
      hpoly[1] += f * (x1 + x2);
      hpoly[0] -= f * (x1 * x2);
    }

  // Elementary and complete homogeneous symmetric functions of the x_i.
  cvec e(5, cplx(0.0));
  e[0] = 1.0;
  for (std::size_t m = 0; m < 4; ++m)
    for (std::size_t k = 4; k >= 1; --k) e[k] += pts[m].x * e[k - 1];
  cvec ch(4, cplx(0.0));
  ch[0] = 1.0;
  for (std::size_t k = 1; k <= 3; ++k) {
    cplx s(0.0);
    for (std::size_t i = 1; i <= k; ++i)
      s += ((i % 2 == 1) ? 1.0 : -1.0) * e[i] * ch[k - i];
    ch[k] = s;
  }
  for (std::size_t i = 0; i <= 3; ++i)
    for (std::size_t j = 0; j + i <= 3; ++j) hpoly[i] += mu[3 - i - j] * ch[j];

  if (std::abs(hpoly[3] - 1.0) > 1e-8)
    fail(ErrorCode::DegenerateConfiguration,
         "trace cubic lost its monic normalization");

  WpState s;
  s.p11 = -hpoly[2];
  s.p13 = -hpoly[1];
  s.p15 = -hpoly[0];

  // L(x) = sum_i y_i (prod_{j != i}(x - x_j) - H(x)) / prod_{j != i}(x_i-x_j),
  // a quadratic since the cubics are both monic.
  cvec lpoly(3, cplx(0.0));
  for (std::size_t i = 0; i < 4; ++i) {
    cvec prod{cplx(1.0)};
    cplx den(1.0);
    for (std::size_t j = 0; j < 4; ++j) {
      if (j == i) continue;
      prod = poly::multiply(prod, cvec{-pts[j].x, cplx(1.0)});
      den *= (pts[i].x - pts[j].x);
    }
    for (std::size_t m = 0; m < 3; ++m)
      lpoly[m] += pts[i].y * (prod[m] - hpoly[m]) / den;
  }
  s.p111 = 2.0 * lpoly[2];
  s.p113 = 2.0 * lpoly[1];
  s.p115 = 2.0 * lpoly[0];
  return s;
}

cplx addition_det_ratio(const WpState& state_u, const WpState& state_v,
                        const cplx& x, const cplx& y) {
  return RatioEvaluator(state_u, state_v)(x, y);
}

namespace {

// Deterministic ordering key so addition_build(u, v) and addition_build(v, u)
// perform bit-identical arithmetic; R(x, y) itself is symmetric in the swap
// (numerator rows and denominator change sign together).
bool state_precedes(const WpState& a, const WpState& b) {
  const cplx ka[6] = {a.p11, a.p13, a.p15, a.p111, a.p113, a.p115};
  const cplx kb[6] = {b.p11, b.p13, b.p15, b.p111, b.p113, b.p115};
  for (int i = 0; i < 6; ++i) {
    if (ka[i].real() != kb[i].real()) return ka[i].real() < kb[i].real();
    if (ka[i].imag() != kb[i].imag()) return ka[i].imag() < kb[i].imag();
  }
  return false;
}

}  // namespace

AdditionState addition_build(const WpState& state_u_in,
                             const WpState& state_v_in) {
  const bool swap = state_precedes(state_v_in, state_u_in);
  const WpState& state_u = swap ? state_v_in : state_u_in;
  const WpState& state_v = swap ? state_u_in : state_v_in;
  const CMat diff = b_of(state_v) - b_of(state_u);
  double col_scale = 1.0;
  for (std::size_t j = 0; j < 3; ++j) {
    double c = 0.0;
    for (std::size_t i = 0; i < 3; ++i) c += std::abs(diff(i, j));
    col_scale *= std::max(c, 1e-30);
  }
  const cplx den = determinant(diff);
  if (std::abs(den) <= 1e-10 * col_scale)
    fail(ErrorCode::NearDegenerate,
         "addition formula degenerates (u = +-v mod the lattice?)");
  const RatioEvaluator ratio(state_u, state_v);

  // Monomial basis {y, xy, x^4, x^3, x^2, x, 1} sampled at 7 generic points.
  const std::size_t n = 7;
  CMat sys(n, n);
  cvec rhs(n);
  for (std::size_t s = 0; s < n; ++s) {
    const cplx x = 1.15 * std::polar(1.0, 2.0 * pi * (static_cast<double>(s) + 0.31) / 7.0);
    const cplx y = 1.85 * std::polar(1.0, 2.0 * pi * (3.0 * static_cast<double>(s) + 1.07) / 13.0);
    const cplx x2 = x * x, x3 = x2 * x, x4 = x3 * x;
    sys(s, 0) = y;
    sys(s, 1) = x * y;
    sys(s, 2) = x4;
    sys(s, 3) = x3;
    sys(s, 4) = x2;
    sys(s, 5) = x;
    sys(s, 6) = 1.0;
    rhs[s] = ratio(x, y);
  }
  const LU lu(sys);
  cvec coef = lu.solve(rhs);
  // One step of iterative refinement; the system is moderately conditioned
  // and the right-hand side carries determinant-ratio noise.
  {
    cvec resid = rhs;
    const cvec mc = sys.apply(coef);
    for (std::size_t i = 0; i < n; ++i) resid[i] -= mc[i];
    const cvec corr = lu.solve(resid);
    for (std::size_t i = 0; i < n; ++i) coef[i] += corr[i];
  }

  AdditionState st;
  st.state_u = state_u;
  st.state_v = state_v;
  st.solve_condition = cond1(sys);
  st.d2 = coef[0];
  st.d1 = coef[2];
  st.d3 = coef[3];
  st.d5 = coef[4];
  st.d7 = coef[5];
  st.d9 = coef[6];

  // The xy coefficient must be exactly 1: its cofactor is det(B(v)-B(u))
  // itself. A deviation means the monomial basis failed to span the samples.
  double coef_scale = 1.0;
  for (const cplx& c : coef) coef_scale = std::max(coef_scale, std::abs(c));
  if (std::abs(coef[1] - 1.0) > 1e-7 * coef_scale)
    fail(ErrorCode::NearDegenerate,
         "determinant sampling inconsistent with the monomial basis");

  // Re-evaluate at fresh samples against the displayed monomial form.
  double rebuild = 0.0;
  for (std::size_t s = 0; s < 10; ++s) {
    const cplx x = 0.83 * std::polar(1.0, 2.0 * pi * (static_cast<double>(s) + 0.55) / 10.0);
    const cplx y = 2.41 * std::polar(1.0, 2.0 * pi * (2.0 * static_cast<double>(s) + 0.19) / 21.0);
    const cplx direct = ratio(x, y);
    const cplx rebuilt = (x + st.d2) * y + x * x * x * (st.d1 * x + st.d3) +
                         st.d5 * x * x + st.d7 * x + st.d9;
    rebuild = std::max(rebuild,
                       std::abs(direct - rebuilt) / (1.0 + std::abs(direct)));
  }
  st.rebuild_residual = rebuild;
  return st;
}

WpState wp_add(const BiellipticFamily& fam, const AdditionState& st) {
  const cvec& f = fam.curves.v.n_coeffs();  // ascending, monic degree 7

  // Phi(x, f(x)) = f(x) (x + d2)^2 - A(x)^2 with
  // A(x) = d1 x^4 + d3 x^3 + d5 x^2 + d7 x + d9.
  const cvec bpoly{st.d2, cplx(1.0)};
  const cvec apoly{st.d9, st.d7, st.d5, st.d3, st.d1};
  cvec phi = poly::multiply(f, poly::multiply(bpoly, bpoly));
  const cvec a2 = poly::multiply(apoly, apoly);
  // The error budget is measured against the coefficients entering the
  // subtraction (backward-error scale); Phi itself can cancel far below them.
  double phi_scale = 0.0;
  for (const cplx& c : phi) phi_scale = std::max(phi_scale, std::abs(c));
  for (const cplx& c : a2) phi_scale = std::max(phi_scale, std::abs(c));
  for (std::size_t i = 0; i < a2.size(); ++i) phi[i] -= a2[i];

  const cvec hu{-st.state_u.p15, -st.state_u.p13, -st.state_u.p11, cplx(1.0)};
  const cvec hv{-st.state_v.p15, -st.state_v.p13, -st.state_v.p11, cplx(1.0)};

  cvec q2, rem_poly;
  poly::divide(phi, poly::multiply(hu, hv), q2, rem_poly);
  double rem = 0.0;
  for (const cplx& c : rem_poly) rem = std::max(rem, std::abs(c));
  if (rem > 1e-8 * phi_scale)
    fail(ErrorCode::DivisionRemainderTooLarge,
         "known cubics do not divide Phi within the error budget");

  if (q2.size() != 4 || std::abs(q2[3] - 1.0) > 1e-8)
    fail(ErrorCode::DivisionRemainderTooLarge,
         "quotient cubic lost its monic normalization");

  WpState w;
  w.p11 = -q2[2];
  w.p13 = -q2[1];
  w.p15 = -q2[0];

  // c2(u+v) from (G(u+v) + d2 I) c2 = d1 c3 + d3 c1 + (d9, d7, d5)^T.
  CMat gw(3, 3);
  gw(0, 2) = w.p15;
  gw(1, 0) = 1.0;
  gw(1, 2) = w.p13;
  gw(2, 1) = 1.0;
  gw(2, 2) = w.p11;
  const CMat m = gw + CMat::identity(3) * st.d2;
  if (cond1(m) > 1e12)
    fail(ErrorCode::SingularGMatrix, "G(u+v) + d2 I is numerically singular");
  const cvec c1w{w.p15, w.p13, w.p11};
  const cvec c3w = gw.apply(c1w);
  cvec rhs(3);
  for (std::size_t i = 0; i < 3; ++i)
    rhs[i] = st.d1 * c3w[i] + st.d3 * c1w[i];
  rhs[0] += st.d9;
  rhs[1] += st.d7;
  rhs[2] += st.d5;
  const cvec c2w = LU(m).solve(rhs);
  w.p115 = 2.0 * c2w[0];
  w.p113 = 2.0 * c2w[1];
  w.p111 = 2.0 * c2w[2];
  return w;
}

WpState corollary_pipeline(const FamilyContext& ctx, const cplx& u1,
                           const cvec& u35) {
  const WpState su = wpV_on_L1(ctx, u1);
  const WpState sv = wpV_on_L2(ctx, u35);
  const AdditionState st = addition_build(su, sv);
  return wp_add(ctx.fam, st);
}

double wp_state_distance(const WpState& a, const WpState& b) {
  auto rel = [](const cplx& x, const cplx& y) {
    return std::abs(x - y) / (1.0 + std::max(std::abs(x), std::abs(y)));
  };
  double d = rel(a.p11, b.p11);
  d = std::max(d, rel(a.p13, b.p13));
  d = std::max(d, rel(a.p15, b.p15));
  d = std::max(d, rel(a.p111, b.p111));
  d = std::max(d, rel(a.p113, b.p113));
  d = std::max(d, rel(a.p115, b.p115));
  return d;
}

}  // namespace hef
