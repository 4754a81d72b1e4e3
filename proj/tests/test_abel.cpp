// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hef/abel.hpp"
#include "hef/context.hpp"
#include "hef/rng.hpp"
#include "test_support.hpp"

using namespace hef;

TEST_CASE("abel at the base point is zero") {
  const auto& ctx = testsupport::reference_context();
  const cvec at_inf = ctx.v.abel->map(CurvePoint::infinity());
  for (const cplx& v : at_inf) CHECK(std::abs(v) < 1e-12);

  // C uses the branch point (1, 0) as base.
  const cvec at_base = ctx.c.abel->map(CurvePoint::affine(cplx(1.0), cplx(0.0)));
  for (const cplx& v : at_base) CHECK(std::abs(v) < 1e-10);
}

TEST_CASE("involution negates the Abel map modulo the lattice") {
  const auto& ctx = testsupport::reference_context();
  Rng rng(51);
  for (int t = 0; t < 6; ++t) {
    const CurvePoint p = testsupport::random_affine_point(ctx.v.curve, rng);
    const CurvePoint q = CurvePoint::affine(p.x, -p.y);
    const cvec a = ctx.v.abel->map(p);
    const cvec b = ctx.v.abel->map(q);
    cvec s(3);
    for (std::size_t i = 0; i < 3; ++i) s[i] = a[i] + b[i];
    CHECK(lattice_distance(s, ctx.v.periods) < 1e-8);
  }
}

TEST_CASE("branch point doubles to zero on C") {
  // 2 * abel((1,0)) with base infinity lies in the lattice; this justifies
  // treating (1,0) and infinity interchangeably as wp^C arguments.
  const auto& ctx = testsupport::reference_context();
  const AbelMap from_inf(ctx.c.curve, CurvePoint::infinity());
  const cvec a = from_inf.map(CurvePoint::affine(cplx(1.0), cplx(0.0)));
  cvec twice{2.0 * a[0], 2.0 * a[1]};
  CHECK(lattice_distance(twice, ctx.c.periods) < 1e-8);
  // ... while abel((1,0)) itself is a genuine half period.
  CHECK(lattice_distance(a, ctx.c.periods) > 0.2);
}

TEST_CASE("lattice reduction") {
  const auto& ctx = testsupport::reference_context();
  const PeriodData& p = ctx.v.periods;
  Rng rng(53);

  // u in the lattice reduces to zero.
  cvec u(3, cplx(0.0));
  for (std::size_t i = 0; i < 3; ++i)
    u[i] = 2.0 * p.omega1(i, 0) - 4.0 * p.omega2(i, 1);
  const LatticeReduction r0 = reduce_mod_lattice(u, p);
  for (const cplx& v : r0.representative) CHECK(std::abs(v) < 1e-10);
  CHECK(r0.m1[0] == 1);
  CHECK(r0.m2[1] == -2);

  for (int t = 0; t < 8; ++t) {
    cvec w(3);
    for (auto& v : w) v = rng.complex_box(-2.0, 2.0, -2.0, 2.0);
    // Shifting by lattice vectors does not change the representative.
    cvec ws = w;
    for (std::size_t i = 0; i < 3; ++i)
      ws[i] += 2.0 * p.omega1(i, 2) + 2.0 * p.omega2(i, 0);
    const LatticeReduction ra = reduce_mod_lattice(w, p);
    const LatticeReduction rb = reduce_mod_lattice(ws, p);
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(std::abs(ra.representative[i] - rb.representative[i]) < 1e-9);

    // Reconstruction: u - rep is the integer combination reported.
    cvec rec = ra.representative;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        rec[i] += 2.0 * p.omega1(i, j) * static_cast<double>(ra.m1[j]) +
                  2.0 * p.omega2(i, j) * static_cast<double>(ra.m2[j]);
    for (std::size_t i = 0; i < 3; ++i)
      CHECK(std::abs(rec[i] - w[i]) < 1e-8 * (1.0 + std::abs(w[i])));
  }
}

TEST_CASE("path independence under detour choices") {
  const auto& ctx = testsupport::reference_context();
  // A target whose inbound ray must route around branch points, so the two
  // detour sides give genuinely different paths.
  const CurvePoint p = testsupport::detour_exercising_point(ctx.v.curve);
  PathOptions ccw;
  PathOptions cw;
  cw.clockwise = true;
  PathOptions wide;
  wide.detour_scale = 1.6;
  const cvec a = ctx.v.abel->map(p, ccw);
  const cvec b = ctx.v.abel->map(p, cw);
  const cvec c = ctx.v.abel->map(p, wide);
  cvec d1(3), d2(3);
  double raw = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    d1[i] = a[i] - b[i];
    d2[i] = a[i] - c[i];
    raw = std::max(raw, std::abs(d1[i]));
  }
  // The two sides differ by an honest lattice vector...
  CHECK(raw > 1e-3);
  // ... and agree modulo the lattice.
  CHECK(lattice_distance(d1, ctx.v.periods) < 1e-8);
  CHECK(lattice_distance(d2, ctx.v.periods) < 1e-8);
}

TEST_CASE("genus-1 inversion: wp(abel(P)) = x(P)") {
  const auto& ctx = testsupport::reference_context();
  Rng rng(61);
  for (int t = 0; t < 5; ++t) {
    const CurvePoint p = testsupport::random_affine_point(ctx.e.curve, rng);
    const cvec u = ctx.e.abel->map(p);
    const cplx wp = ctx.e.sigma->wp_el(u[0]);
    CHECK(std::abs(wp - p.x) < 1e-8 * (1.0 + std::abs(p.x)));
    // and wp' = -2y
    const cplx wpp = ctx.e.sigma->wp_el_prime(u[0]);
    CHECK(std::abs(wpp + 2.0 * p.y) < 1e-8 * (1.0 + std::abs(p.y)));
  }
}

TEST_CASE("genus-2 inversion oracle") {
  const auto& ctx = testsupport::reference_context();
  Rng rng(67);
  int done = 0;
  while (done < 5) {
    const CurvePoint p1 = testsupport::random_affine_point(ctx.c.curve, rng);
    const CurvePoint p2 = testsupport::random_affine_point(ctx.c.curve, rng);
    if (std::abs(p1.x - p2.x) < 0.05 * ctx.c.curve.scale()) continue;
    try {
      const InversionReport rep =
          jacobi_inversion_residual(*ctx.c.sigma, *ctx.c.abel, {p1, p2});
      CHECK(rep.max_residual < 1e-6);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::OnThetaDivisor) continue;
      throw;
    }
    ++done;
  }
}

TEST_CASE("genus-3 inversion with a degenerate third point") {
  // Third point (0,0): then e_3 = 0, so wp_{1,5}(u) = 0.
  const auto& ctx = testsupport::reference_context();
  Rng rng(71);
  int done = 0;
  while (done < 3) {
    const CurvePoint p1 = testsupport::random_affine_point(ctx.v.curve, rng);
    const CurvePoint p2 = testsupport::random_affine_point(ctx.v.curve, rng);
    if (std::abs(p1.x - p2.x) < 0.05 * ctx.v.curve.scale()) continue;
    const CurvePoint origin = CurvePoint::affine(cplx(0.0), cplx(0.0));
    cvec u(3, cplx(0.0));
    for (const CurvePoint* pt : {&p1, &p2, &origin}) {
      const cvec a = ctx.v.abel->map(*pt);
      for (std::size_t i = 0; i < 3; ++i) u[i] += a[i];
    }
    if (ctx.v.sigma->near_divisor(u)) continue;
    const WpRow row = ctx.v.sigma->wp_row(u);
    CHECK(std::abs(row.p1[2]) < 1e-7);  // wp_{1,5} = e_3 = 0
    // The other two identities still hold with x_3 = 0.
    CHECK(std::abs(row.p1[0] - (p1.x + p2.x)) <
          1e-6 * (1.0 + std::abs(p1.x + p2.x)));
    CHECK(std::abs(row.p1[1] + p1.x * p2.x) <
          1e-6 * (1.0 + std::abs(p1.x * p2.x)));
    ++done;
  }
}

TEST_CASE("inversion oracle rejects repeated x coordinates") {
  const auto& ctx = testsupport::reference_context();
  Rng rng(73);
  const CurvePoint p = testsupport::random_affine_point(ctx.c.curve, rng);
  const CurvePoint q = CurvePoint::affine(p.x, -p.y);
  try {
    jacobi_inversion_residual(*ctx.c.sigma, *ctx.c.abel, {p, q});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateConfiguration);
  }
}

TEST_CASE("pipeline handles complex branch points end to end") {
  // y^2 = x^3 - 1: conjugate-pair branch points; characteristic search,
  // Abel map and inversion all run off the real axis.
  const CurveSpec c =
      curve_from_coefficients(1, {cplx(0.0), cplx(0.0), cplx(-1.0)});
  const CurveContext ctx = build_curve_context(c);
  CHECK(ctx.periods.character.delta1[0] == doctest::Approx(0.5));
  CHECK(ctx.periods.character.delta2[0] == doctest::Approx(0.5));
  Rng rng(5);
  int done = 0;
  while (done < 4) {
    const cplx x = rng.complex_annulus(1.3, 2.5);
    if (c.near_branch_point(x, 0.05)) continue;
    cplx y = psqrt(c.eval_n(x));
    if (rng.coin()) y = -y;
    const InversionReport rep = jacobi_inversion_residual(
        *ctx.sigma, *ctx.abel, {CurvePoint::affine(x, y)});
    CHECK(rep.max_residual < 1e-8);
    ++done;
  }
}

TEST_CASE("complex-rooted genus-2 curve passes the inversion oracle") {
  const CurveSpec c =
      curve_from_roots({cplx(0.0, 0.0), cplx(0.9, 0.35), cplx(1.8, -0.3),
                        cplx(2.7, 0.2), cplx(3.6, -0.1)});
  const CurveContext ctx = build_curve_context(c);
  CHECK(legendre_residual(ctx.periods) < 1e-8);
  CHECK(tau_min_imag_eigenvalue(ctx.periods) > 0.0);
  Rng rng(9);
  int done = 0;
  while (done < 3) {
    const cplx cen(1.8, 0.0);
    const cplx x1 = cen + rng.complex_annulus(1.8, 3.2);
    const cplx x2 = cen + rng.complex_annulus(1.8, 3.2);
    if (c.near_branch_point(x1, 0.05) || c.near_branch_point(x2, 0.05))
      continue;
    if (std::abs(x1 - x2) < 0.3) continue;
    cplx y1 = psqrt(c.eval_n(x1)), y2 = psqrt(c.eval_n(x2));
    if (rng.coin()) y1 = -y1;
    if (rng.coin()) y2 = -y2;
    try {
      const InversionReport rep = jacobi_inversion_residual(
          *ctx.sigma, *ctx.abel,
          {CurvePoint::affine(x1, y1), CurvePoint::affine(x2, y2)});
      CHECK(rep.max_residual < 1e-8);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::OnThetaDivisor) continue;
      throw;
    }
    ++done;
  }
}

TEST_CASE("full inversion residuals across the three reference curves") {
  const auto& ctx = testsupport::reference_context();
  Rng rng(79);
  for (const CurveContext* cc : {&ctx.e, &ctx.c, &ctx.v}) {
    const std::size_t g = cc->curve.genus();
    int done = 0;
    while (done < 3) {
      std::vector<CurvePoint> pts;
      bool ok = true;
      while (pts.size() < g) {
        const CurvePoint p = testsupport::random_affine_point(cc->curve, rng);
        for (const auto& q : pts)
          if (std::abs(q.x - p.x) < 0.05 * cc->curve.scale()) ok = false;
        if (!ok) break;
        pts.push_back(p);
      }
      if (!ok) continue;
      try {
        const InversionReport rep =
            jacobi_inversion_residual(*cc->sigma, *cc->abel, pts);
        CHECK(rep.max_residual < 1e-6);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::OnThetaDivisor) continue;
        throw;
      }
      ++done;
    }
  }
}
