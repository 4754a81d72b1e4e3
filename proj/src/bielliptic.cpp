// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "hef/bielliptic.hpp"

#include <algorithm>
#include <cmath>

#include "hef/dual.hpp"
#include "hef/homology.hpp"
#include "hef/poly.hpp"
#include "hef/rng.hpp"

namespace hef {

namespace {

void require(bool cond, const char* what) {
  if (!cond) fail(ErrorCode::DegenerateFamily, what);
}

double root_scale(const cvec& roots) {
  double m = 0.0;
  for (const cplx& r : roots) m = std::max(m, std::abs(r));
  return 1.0 + m;
}

void require_separated(const cvec& roots, const char* what) {
  const double floor = 1e-8 * root_scale(roots);
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i] - roots[j]) < floor)
        fail(ErrorCode::DegenerateFamily, what);
}

}  // namespace

BiellipticFamily build_family(const cplx& alpha, const cplx& beta,
                              const cplx& gamma) {
  BiellipticFamily fam;
  auto& pr = fam.params;
  pr.alpha = alpha;
  pr.beta = beta;
  pr.gamma = gamma;

  require(std::abs(beta * gamma) > 1e-12, "beta*gamma != 0 violated");
  require(std::abs(alpha) > 1e-12, "alpha != 0 required for the morphisms");
  const cplx k1_den = (1.0 - beta * beta) * (beta * beta - alpha * alpha);
  require(std::abs(k1_den) > 1e-12,
          "(1-beta^2)(beta^2-alpha^2) != 0 violated (k1 undefined)");
  const cplx k2_den =
      (1.0 - alpha) * (beta * beta - alpha) * (gamma * gamma - alpha);
  require(std::abs(k2_den) > 1e-12,
          "(1-alpha)(beta^2-alpha)(gamma^2-alpha) != 0 violated (k2 undefined)");

  pr.k1 = iu * beta / psqrt(k1_den);
  pr.k2 = 4.0 * iu * alpha * beta * gamma / k2_den;
  pr.a = (1.0 + alpha) / (1.0 - alpha);
  pr.b = (beta * beta + alpha) / (beta * beta - alpha);
  pr.c = (gamma * gamma + alpha) / (gamma * gamma - alpha);

  const cplx a2 = alpha * alpha, b2 = beta * beta, g2 = gamma * gamma;
  cvec v_roots = {cplx(0.0), cplx(1.0), a2, b2, g2, a2 / b2, a2 / g2};
  require_separated(v_roots, "f(x) has (nearly) multiple roots");

  const cplx e3 = pr.k1 * pr.k1 * (1.0 - 1.0 / g2) * (g2 - a2);
  cvec e_roots = {cplx(0.0), cplx(1.0), e3};
  require_separated(e_roots, "elliptic curve E degenerates (root collision)");

  cvec c_roots = {cplx(0.0), cplx(1.0), pr.a * pr.a, pr.b * pr.b, pr.c * pr.c};
  require_separated(c_roots, "genus-2 curve C degenerates (root collision)");

  fam.curves.v = curve_from_roots(v_roots);
  fam.curves.e = curve_from_roots(e_roots);
  fam.curves.c = curve_from_roots(c_roots);
  fam.curves.h_roots = {cplx(1.0), cplx(-1.0), pr.a,  -pr.a,
                        pr.b,      -pr.b,      pr.c,  -pr.c};
  fam.curves.w_roots = {cplx(1.0), pr.a * pr.a, pr.b * pr.b, pr.c * pr.c};
  require_separated(fam.curves.h_roots, "even model H degenerates");

  auto& m = fam.mats;
  m.k1 = CMat(1, 3, {1.0 / pr.k1, cplx(0.0), -a2 / pr.k1});
  m.k2 = CMat(2, 3,
              {-1.0 / pr.k2, -2.0 * alpha / pr.k2, -a2 / pr.k2,
               -1.0 / pr.k2, 2.0 * alpha / pr.k2, -a2 / pr.k2});
  m.l1 = CMat(3, 1, {pr.k1, cplx(0.0), -pr.k1 / a2});
  const cplx h = -pr.k2 / 2.0;
  m.l2 = CMat(3, 2,
              {h, h, h / alpha, -h / alpha, h / a2, h / a2});
  m.k = CMat(3, 3);
  m.l = CMat(3, 3);
  for (std::size_t j = 0; j < 3; ++j) {
    m.k(0, j) = m.k1(0, j);
    m.k(1, j) = m.k2(0, j);
    m.k(2, j) = m.k2(1, j);
    m.l(j, 0) = m.l1(j, 0);
    m.l(j, 1) = m.l2(j, 0);
    m.l(j, 2) = m.l2(j, 1);
  }

  const cplx aa = pr.a * pr.a, bb = pr.b * pr.b, cc = pr.c * pr.c;
  const double tol = 1e-10 * (1.0 + std::abs(aa) + std::abs(bb * cc));
  fam.degenerate_reduction_possible = std::abs(aa - bb * cc) < tol ||
                                      std::abs(bb - aa * cc) < tol ||
                                      std::abs(cc - aa * bb) < tol;
  return fam;
}

CurvePoint phi1(const BiellipticFamily& fam, const CurvePoint& p) {
  const auto& pr = fam.params;
  if (p.at_infinity) return CurvePoint::infinity();
  if (std::abs(p.x) < 1e-13 * fam.curves.v.scale())
    return CurvePoint::infinity();  // (0,0) maps to infinity on E
  const cplx x = p.x, y = p.y;
  const cplx big_x =
      pr.k1 * pr.k1 * (x - 1.0) * (x - pr.alpha * pr.alpha) / x;
  const cplx big_y = pr.k1 * pr.k1 * pr.k1 * y / (x * x);
  return CurvePoint::affine(big_x, big_y);
}

CurvePoint phi2(const BiellipticFamily& fam, const CurvePoint& p) {
  const auto& pr = fam.params;
  if (p.at_infinity) return CurvePoint::affine(cplx(1.0), cplx(0.0));
  const cplx x = p.x, y = p.y;
  if (std::abs(x - pr.alpha) < 1e-12 * fam.curves.v.scale())
    fail(ErrorCode::AtPole, "phi2 has a pole at x = alpha");
  const cplx s = (x + pr.alpha) / (x - pr.alpha);
  const cplx d = x - pr.alpha;
  const cplx big_y = 4.0 * pr.alpha * pr.k2 * (x + pr.alpha) * y /
                     (d * d * d * d * d);
  return CurvePoint::affine(s * s, big_y);
}

CurvePoint zeta_tilde(const BiellipticFamily& fam, const CurvePoint& p) {
  const auto& pr = fam.params;
  if (p.at_infinity) return CurvePoint::affine(cplx(1.0), cplx(0.0));
  const cplx d = p.x - pr.alpha;
  if (std::abs(d) < 1e-12 * fam.curves.v.scale())
    fail(ErrorCode::AtPole, "zeta~ has a pole at x = alpha");
  const cplx s = (p.x + pr.alpha) / d;
  const cplx t = 4.0 * pr.alpha * pr.k2 * p.y / (d * d * d * d);
  return CurvePoint::affine(s, t);
}

CurvePoint zeta(const BiellipticFamily& fam, const CurvePoint& p) {
  const auto& pr = fam.params;
  if (p.at_infinity)
    fail(ErrorCode::AtPole, "zeta is evaluated on affine H points");
  const cplx s = p.x, t = p.y;
  if (std::abs(s - 1.0) < 1e-12)
    fail(ErrorCode::AtPole, "zeta has a pole at s = 1");
  const cplx am1 = pr.a - 1.0, ap1 = pr.a + 1.0;
  const cplx x = am1 * (s + 1.0) / (ap1 * (s - 1.0));
  const cplx root =
      psqrt((1.0 - pr.b * pr.b) * (pr.c * pr.c - 1.0));
  const cplx sm1 = s - 1.0;
  const cplx y = 8.0 * am1 * am1 * am1 * t /
                 (ap1 * ap1 * ap1 * ap1 * root * sm1 * sm1 * sm1 * sm1);
  return CurvePoint::affine(x, y);
}

CurvePoint xi(const BiellipticFamily& fam, const CurvePoint& p) {
  const auto& pr = fam.params;
  if (p.at_infinity)
    fail(ErrorCode::AtPole, "xi is evaluated on affine W points");
  const cplx s = p.x, t = p.y;
  if (std::abs(s - 1.0) < 1e-12)
    fail(ErrorCode::AtPole, "xi has a pole at S = 1");
  const cplx ap1 = pr.alpha + 1.0, am1 = pr.alpha - 1.0;
  const cplx x = pr.k1 * pr.k1 * (ap1 * ap1 - am1 * am1 * s) / (s - 1.0);
  const cplx y = 4.0 * pr.alpha * pr.k1 * pr.k1 * pr.k1 * t /
                 (pr.k2 * (s - 1.0) * (s - 1.0));
  return CurvePoint::affine(x, y);
}

CurvePoint phi_bar1(const CurvePoint& p) {
  if (p.at_infinity) fail(ErrorCode::AtPole, "phi_bar1 needs an affine point");
  return CurvePoint::affine(p.x * p.x, p.y);
}

CurvePoint phi_bar2(const CurvePoint& p) {
  if (p.at_infinity) fail(ErrorCode::AtPole, "phi_bar2 needs an affine point");
  return CurvePoint::affine(p.x * p.x, p.x * p.y);
}

bool on_even_model(const cvec& roots, const CurvePoint& p, double tol) {
  if (p.at_infinity) return true;
  cplx prod(1.0);
  for (const cplx& r : roots) prod *= (p.x - r);
  return std::abs(p.y * p.y - prod) <= tol * (1.0 + std::abs(prod));
}

std::pair<CurvePoint, CurvePoint> phi2_preimages(const BiellipticFamily& fam,
                                                 const CurvePoint& q) {
  const auto& pr = fam.params;
  if (q.at_infinity)
    fail(ErrorCode::BadInput, "phi2 preimages requested at infinity on C");
  if (std::abs(q.x - 1.0) < 1e-12 || std::abs(q.x) < 1e-12)
    fail(ErrorCode::DegenerateConfiguration,
         "phi2 preimages degenerate at X = 0 or X = 1");
  const cplx s = psqrt(q.x);
  std::pair<CurvePoint, CurvePoint> out;
  bool first = true;
  for (const cplx sv : {s, -s}) {
    const cplx x = pr.alpha * (sv + 1.0) / (sv - 1.0);
    const cplx d = x - pr.alpha;
    const cplx y = q.y * d * d * d * d * d /
                   (4.0 * pr.alpha * pr.k2 * (x + pr.alpha));
    const CurvePoint pt = CurvePoint::affine(x, y);
    if (!point_on_curve(fam.curves.v, pt, 1e-7))
      fail(ErrorCode::BadInput, "phi2 preimage fell off the curve");
    if (first) {
      out.first = pt;
      first = false;
    } else {
      out.second = pt;
    }
  }
  return out;
}

PullbackReport pullback_residual(const BiellipticFamily& fam,
                                 std::size_t samples, std::uint64_t seed) {
  const auto& pr = fam.params;
  const CurveSpec& v = fam.curves.v;
  Rng rng(seed);
  PullbackReport rep;
  const double scale = v.scale();
  cplx centroid(0.0);
  for (const cplx& e : v.roots()) centroid += e;
  centroid /= static_cast<double>(v.roots().size());

  std::size_t done = 0;
  int guard = 0;
  while (done < samples) {
    if (++guard > static_cast<int>(40 * samples))
      fail(ErrorCode::DegenerateConfiguration,
           "could not sample points clear of poles and branch points");
    const cplx x = centroid + rng.complex_annulus(0.3 * scale, 1.6 * scale);
    if (v.near_branch_point(x, 0.02)) continue;
    if (std::abs(x - pr.alpha) < 0.05 * scale) continue;
    if (std::abs(x) < 0.05 * scale) continue;
    cplx y = psqrt(v.eval_n(x));
    if (rng.coin()) y = -y;
    const CurvePoint p = CurvePoint::affine(x, y);

    const Dual xd = Dual::variable(x);

    // phi1 pullback of omega_E = -dX/(2Y).
    {
      const Dual big_x =
          pr.k1 * pr.k1 * (xd - cplx(1.0)) * (xd - pr.alpha * pr.alpha) / xd;
      const cplx big_y = pr.k1 * pr.k1 * pr.k1 * y / (x * x);
      const cplx lhs = -big_x.d / (2.0 * big_y);
      const cplx w1 = differential_first_kind(v, 1, p).integrand;
      const cplx w5 = differential_first_kind(v, 3, p).integrand;
      const cplx rhs = (w1 - pr.alpha * pr.alpha * w5) / pr.k1;
      rep.max_residual = std::max(
          rep.max_residual, std::abs(lhs - rhs) / (1.0 + std::abs(lhs)));
    }

    // phi2 pullbacks of omega_1^C = -X dX/(2Y) and omega_3^C = -dX/(2Y).
    {
      const Dual sd = (xd + pr.alpha) / (xd - pr.alpha);
      const Dual big_x = sd * sd;
      const cplx d = x - pr.alpha;
      const cplx big_y = 4.0 * pr.alpha * pr.k2 * (x + pr.alpha) * y /
                         (d * d * d * d * d);
      const cplx w1 = differential_first_kind(v, 1, p).integrand;
      const cplx w3 = differential_first_kind(v, 2, p).integrand;
      const cplx w5 = differential_first_kind(v, 3, p).integrand;

      const cplx lhs1 = -big_x.v * big_x.d / (2.0 * big_y);
      const cplx rhs1 =
          -(w1 + 2.0 * pr.alpha * w3 + pr.alpha * pr.alpha * w5) / pr.k2;
      rep.max_residual = std::max(
          rep.max_residual, std::abs(lhs1 - rhs1) / (1.0 + std::abs(lhs1)));

      const cplx lhs3 = -big_x.d / (2.0 * big_y);
      const cplx rhs3 =
          -(w1 - 2.0 * pr.alpha * w3 + pr.alpha * pr.alpha * w5) / pr.k2;
      rep.max_residual = std::max(
          rep.max_residual, std::abs(lhs3 - rhs3) / (1.0 + std::abs(lhs3)));
    }
    ++done;
  }
  rep.samples = samples;
  return rep;
}

}  // namespace hef
