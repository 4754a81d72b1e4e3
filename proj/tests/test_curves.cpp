// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "hef/curves.hpp"
#include "hef/poly.hpp"
#include "hef/rng.hpp"
#include "test_support.hpp"

using namespace hef;

namespace {

cvec reference_v_roots() {
  // roots of x(x-1)(x-a^2)(x-b^2)(x-g^2)(x-a^2/b^2)(x-a^2/g^2) at
  // (alpha, beta, gamma) = (1/3, 2, 3)
  return {cplx(0.0), cplx(1.0),        cplx(1.0 / 9.0),
          cplx(4.0), cplx(9.0),        cplx(1.0 / 36.0),
          cplx(1.0 / 81.0)};
}

}  // namespace

TEST_CASE("curve_from_coefficients accepts and validates") {
  const CurveSpec c =
      curve_from_coefficients(1, {cplx(0.0), cplx(-1.0), cplx(0.0)});
  CHECK(c.genus() == 1);
  cvec roots = c.roots();
  REQUIRE(roots.size() == 3);
  CHECK(std::abs(roots[0] - cplx(-1.0)) < 1e-12);
  CHECK(std::abs(roots[1]) < 1e-12);
  CHECK(std::abs(roots[2] - cplx(1.0)) < 1e-12);

  try {
    curve_from_coefficients(1, {cplx(0.0), cplx(0.0), cplx(0.0)});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MultipleRoots);
  }
  try {
    curve_from_coefficients(2, {cplx(0.0)});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadArity);
  }
}

TEST_CASE("genus-3 family polynomial expands to an accepted curve") {
  const cvec roots = reference_v_roots();
  // Independent expansion of the product form.
  const cvec coeffs = poly::from_roots(roots);
  REQUIRE(coeffs.size() == 8);
  CHECK(std::abs(coeffs[7] - 1.0) < 1e-14);
  cvec lambda(7);
  for (std::size_t m = 1; m <= 7; ++m) lambda[m - 1] = coeffs[7 - m];
  const CurveSpec c = curve_from_coefficients(3, lambda);
  CHECK(c.genus() == 3);
  // Every intended root is recovered.
  for (const cplx& r : roots) {
    double best = 1e9;
    for (const cplx& s : c.roots()) best = std::min(best, std::abs(r - s));
    CHECK(best < 1e-9);
  }
}

TEST_CASE("curve_from_roots expansion and failure modes") {
  const CurveSpec c = curve_from_roots({cplx(0.0), cplx(1.0), cplx(-1.0)});
  // y^2 = x(x-1)(x+1) = x^3 - x: lambda = (0, -1, 0)
  CHECK(std::abs(c.lambda()[0]) < 1e-14);
  CHECK(std::abs(c.lambda()[1] + 1.0) < 1e-14);
  CHECK(std::abs(c.lambda()[2]) < 1e-14);

  try {
    curve_from_roots({cplx(0.0), cplx(0.0), cplx(1.0)});
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MultipleRoots);
  }

  const CurveSpec v = curve_from_roots(reference_v_roots());
  CHECK(v.genus() == 3);
  CHECK(v.n_coeffs().size() == 8);
}

TEST_CASE("coefficients -> roots -> coefficients round trip") {
  Rng rng(42);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t g = 1 + trial % 3;
    cvec roots;
    while (roots.size() < 2 * g + 1) {
      const cplx r = rng.complex_box(-2.0, 2.0, -2.0, 2.0);
      bool ok = true;
      for (const cplx& s : roots)
        if (std::abs(r - s) < 0.15) ok = false;
      if (ok) roots.push_back(r);
    }
    const CurveSpec a = curve_from_roots(roots);
    const CurveSpec b = curve_from_coefficients(g, a.lambda());
    for (std::size_t i = 0; i < a.lambda().size(); ++i) {
      const double denom = 1.0 + std::abs(a.lambda()[i]);
      CHECK(std::abs(a.lambda()[i] - b.lambda()[i]) / denom < 1e-10);
    }
  }
}

TEST_CASE("first-kind differentials") {
  const CurveSpec e =
      curve_from_coefficients(1, {cplx(0.0), cplx(-1.0), cplx(0.0)});
  const cplx y = psqrt(cplx(6.0));
  const CurvePoint p = CurvePoint::affine(cplx(2.0), y);
  CHECK(std::abs(differential_first_kind(e, 1, p).integrand +
                 1.0 / (2.0 * y)) < 1e-14);

  const CurveSpec v = curve_from_roots(reference_v_roots());
  Rng rng(7);
  const CurvePoint q = testsupport::random_affine_point(v, rng);
  CHECK(std::abs(differential_first_kind(v, 1, q).integrand +
                 q.x * q.x / (2.0 * q.y)) < 1e-12);
  CHECK(std::abs(differential_first_kind(v, 3, q).integrand +
                 1.0 / (2.0 * q.y)) < 1e-12);

  try {
    differential_first_kind(e, 1, CurvePoint::infinity());
    CHECK(false);
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::AtInfinity);
  }
  try {
    differential_first_kind(e, 1, CurvePoint::affine(cplx(1.0), cplx(0.0)));
    CHECK(false);
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::AtBranchPoint);
  }
}

TEST_CASE("second-kind differentials match the displayed polynomials") {
  Rng rng(11);
  // genus 1: eta_1 = -x/(2y) dx
  const CurveSpec e =
      curve_from_coefficients(1, {cplx(0.2), cplx(-1.1), cplx(0.1)});
  const CurvePoint p1 = testsupport::random_affine_point(e, rng);
  CHECK(std::abs(differential_second_kind(e, 1, p1).integrand +
                 p1.x / (2.0 * p1.y)) < 1e-12);

  // genus 2: eta_1 = -x^2/(2y) dx
  const CurveSpec c2 =
      curve_from_roots({cplx(0.0), cplx(0.7), cplx(1.5), cplx(2.2), cplx(3.3)});
  const CurvePoint p2 = testsupport::random_affine_point(c2, rng);
  CHECK(std::abs(differential_second_kind(c2, 1, p2).integrand +
                 p2.x * p2.x / (2.0 * p2.y)) < 1e-12);

  // genus 3, i = 3: -(l8 x + 2 l6 x^2 + 3 l4 x^3 + 4 l2 x^4 + 5 x^5)/(2y)
  const CurveSpec v = curve_from_roots(reference_v_roots());
  const CurvePoint p3 = testsupport::random_affine_point(v, rng);
  const cplx x = p3.x;
  const cplx expected = -(v.lambda2m(4) * x + 2.0 * v.lambda2m(3) * x * x +
                          3.0 * v.lambda2m(2) * x * x * x +
                          4.0 * v.lambda2m(1) * x * x * x * x +
                          5.0 * x * x * x * x * x) /
                        (2.0 * p3.y);
  CHECK(std::abs(differential_second_kind(v, 3, p3).integrand - expected) /
            (1.0 + std::abs(expected)) <
        1e-13);
}

TEST_CASE("hyperelliptic involution negates every differential") {
  Rng rng(13);
  const CurveSpec v = curve_from_roots(reference_v_roots());
  for (int t = 0; t < 10; ++t) {
    const CurvePoint p = testsupport::random_affine_point(v, rng);
    const CurvePoint q = CurvePoint::affine(p.x, -p.y);
    for (std::size_t i = 1; i <= 3; ++i) {
      for (auto kind : {DifferentialKind::First, DifferentialKind::Second}) {
        const cplx a = differential_value(v, kind, i, p).integrand;
        const cplx b = differential_value(v, kind, i, q).integrand;
        CHECK(std::abs(a + b) < 1e-12 * (1.0 + std::abs(a)));
      }
    }
  }
}

TEST_CASE("mu coefficients") {
  const CurveSpec v = curve_from_roots(reference_v_roots());
  const cvec mu = mu_coefficients(v);
  REQUIRE(mu.size() == 7);
  CHECK(std::abs(mu[0] - 1.0) < 1e-14);

  // mu_2 = -(sum of the nonzero roots)
  cplx sum(0.0);
  for (const cplx& r : reference_v_roots()) sum += r;
  CHECK(std::abs(mu[1] + sum) < 1e-12);

  // mu_12 = product of the nonzero roots, computed numerically:
  // 1 * (1/9) * 4 * 9 * (1/36) * (1/81) = 1/729.
  cplx prod(1.0);
  for (const cplx& r : reference_v_roots())
    if (std::abs(r) > 0.0) prod *= r;
  CHECK(std::abs(prod - 1.0 / 729.0) < 1e-15);
  CHECK(std::abs(mu[6] - prod) < 1e-12);

  // mu reproduces f at random points.
  Rng rng(5);
  for (int t = 0; t < 100; ++t) {
    const cplx x = rng.complex_box(-3.0, 3.0, -3.0, 3.0);
    cplx f_direct = x;
    for (const cplx& r : reference_v_roots())
      if (std::abs(r) > 0.0) f_direct *= (x - r);
    cplx f_mu(0.0);
    for (int i = 0; i <= 6; ++i) {
      cplx xp(1.0);
      for (int k = 0; k < 7 - i; ++k) xp *= x;
      f_mu += mu[i] * xp;
    }
    CHECK(std::abs(f_direct - f_mu) <= 1e-12 * (1.0 + std::abs(f_direct)));
  }

  // Nonzero constant term: not in the family form.
  const CurveSpec w = curve_from_roots({cplx(0.3), cplx(0.8), cplx(1.5),
                                        cplx(2.5), cplx(4.0), cplx(5.5),
                                        cplx(7.0)});
  try {
    mu_coefficients(w);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotFamilyCurve);
  }
}

TEST_CASE("point membership check") {
  const CurveSpec e =
      curve_from_coefficients(1, {cplx(0.0), cplx(-1.0), cplx(0.0)});
  CHECK(point_on_curve(e, CurvePoint::affine(cplx(2.0), psqrt(cplx(6.0)))));
  CHECK(point_on_curve(e, CurvePoint::infinity()));
  CHECK(!point_on_curve(e, CurvePoint::affine(cplx(2.0), cplx(1.0))));
}
