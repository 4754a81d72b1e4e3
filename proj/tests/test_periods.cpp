// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "hef/periods.hpp"
#include "hef/poly.hpp"
#include "hef/rng.hpp"
#include "test_support.hpp"

using namespace hef;

TEST_CASE("homology basis structure for y^2 = x^3 - x") {
  const CurveSpec c = curve_from_roots({cplx(-1.0), cplx(0.0), cplx(1.0)});
  const HomologyBasis basis = build_homology_basis(c);
  REQUIRE(basis.a.size() == 1);
  REQUIRE(basis.b.size() == 1);
  // a encircles the cut {-1, 0}; b runs through {0, 1}.
  REQUIRE(basis.a[0].parts.size() == 1);
  CHECK(basis.a[0].parts[0].seg == 0);
  REQUIRE(basis.b[0].parts.size() == 1);
  CHECK(basis.b[0].parts[0].seg == 1);
}

TEST_CASE("basis is deterministic under root permutation") {
  const cvec roots{cplx(-1.0), cplx(0.0), cplx(1.0)};
  cvec perm{roots[2], roots[0], roots[1]};
  const CurveSpec a = curve_from_roots(roots);
  const CurveSpec b = curve_from_roots(perm);
  const HomologyBasis ba = build_homology_basis(a);
  const HomologyBasis bb = build_homology_basis(b);
  REQUIRE(ba.a.size() == bb.a.size());
  for (std::size_t i = 0; i < ba.a.size(); ++i) {
    CHECK(ba.a[i].parts[0].seg == bb.a[i].parts[0].seg);
    CHECK(ba.a[i].parts[0].orientation == bb.a[i].parts[0].orientation);
  }
  for (std::size_t i = 0; i < ba.b.size(); ++i) {
    REQUIRE(ba.b[i].parts.size() == bb.b[i].parts.size());
    for (std::size_t k = 0; k < ba.b[i].parts.size(); ++k) {
      CHECK(ba.b[i].parts[k].seg == bb.b[i].parts[k].seg);
      CHECK(ba.b[i].parts[k].orientation == bb.b[i].parts[k].orientation);
    }
  }
}

TEST_CASE("intersection pairing is standard symplectic (g = 1, 2, 3)") {
  const auto& fam = testsupport::reference_family();
  for (const CurveSpec* c : {&fam.curves.e, &fam.curves.c, &fam.curves.v}) {
    const std::size_t g = c->genus();
    const HomologyBasis basis = build_homology_basis(*c);
    const auto m = intersection_matrix(*c, basis);
    for (std::size_t i = 0; i < 2 * g; ++i)
      for (std::size_t j = 0; j < 2 * g; ++j) {
        int expect = 0;
        if (j == i + g) expect = 1;
        if (i == j + g) expect = -1;
        CHECK(m[i][j] == expect);
      }
  }
}

TEST_CASE("reversing a cycle negates the integral") {
  const CurveSpec c = curve_from_roots({cplx(-1.0), cplx(0.0), cplx(1.0)});
  const HomologyBasis basis = build_homology_basis(c);
  const cplx fwd = cycle_integral(c, DifferentialKind::First, 1, basis.a[0]);
  const cplx bwd =
      cycle_integral(c, DifferentialKind::First, 1, basis.a[0].reversed());
  CHECK(std::abs(fwd + bwd) < 1e-13 * (1.0 + std::abs(fwd)));
}

TEST_CASE("lemniscatic curve: tau = i, real/imaginary period split") {
  const CurveSpec c = curve_from_roots({cplx(-1.0), cplx(0.0), cplx(1.0)});
  const PeriodData p = compute_period_matrices(c, build_homology_basis(c));
  CHECK(std::abs(p.tau(0, 0) - iu) < 1e-6);
  // One period real, the other imaginary, up to a common phase: the ratio is
  // purely imaginary.
  const cplx ratio = p.omega2(0, 0) / p.omega1(0, 0);
  CHECK(std::abs(ratio.real()) < 1e-10);
  // The real half-period of this curve is the lemniscate constant
  // varpi/2 = 1.3110287771461...; our a-period is 2w' = -2*1.31102877...
  CHECK(std::abs(std::abs(p.omega1(0, 0)) - 1.31102877714605990523) < 1e-9);
}

TEST_CASE("quadrature node doubling self-consistency") {
  const auto& fam = testsupport::reference_family();
  const HomologyBasis basis = build_homology_basis(fam.curves.v);
  const cplx loose =
      cycle_integral(fam.curves.v, DifferentialKind::Second, 2, basis.b[1], 1e-9);
  const cplx tight =
      cycle_integral(fam.curves.v, DifferentialKind::Second, 2, basis.b[1], 1e-13);
  CHECK(std::abs(loose - tight) / (1.0 + std::abs(tight)) < 1e-10);
}

TEST_CASE("period matrices of the reference curves are consistent") {
  const auto& ctx = testsupport::reference_context();
  for (const PeriodData* p : {&ctx.v.periods, &ctx.e.periods, &ctx.c.periods}) {
    CHECK(tau_symmetry_residual(*p) < 1e-8);
    CHECK(tau_min_imag_eigenvalue(*p) > 0.0);
    int sign = 0;
    CHECK(legendre_residual(*p, &sign) < 1e-8);
    // Basis orientation fixes the constant once; it must match across curves.
    CHECK(sign == -1);
    CHECK(cond1(p->omega1) < 1e12);
  }
}

TEST_CASE("genus-1 Legendre-form curve has finite tau in the upper half plane") {
  // lambda = 1/2 means K = K', so tau = i here as well.
  const CurveSpec c = curve_from_roots({cplx(0.0), cplx(1.0), cplx(2.0)});
  const PeriodData p = compute_period_matrices(c, build_homology_basis(c));
  CHECK(finite(p.tau(0, 0)));
  CHECK(p.tau(0, 0).imag() > 0.0);
  CHECK(std::abs(p.tau(0, 0) - iu) < 1e-8);
}

TEST_CASE("equianharmonic curve: complex branch points, Beta-function period") {
  // y^2 = x^3 - 1 has the conjugate root pair exp(+-2 pi i/3); this drives
  // the basis construction off the real axis. Known values: tau = exp(i pi/3)
  // and |period| = B(1/6, 1/2)/3.
  const CurveSpec c =
      curve_from_coefficients(1, {cplx(0.0), cplx(0.0), cplx(-1.0)});
  const PeriodData p = compute_period_matrices(c, build_homology_basis(c));
  const cplx tau = p.tau(0, 0);
  CHECK(std::abs(tau - cplx(0.5, std::sqrt(3.0) / 2.0)) < 1e-9);
  const double beta_anchor =
      std::exp(std::lgamma(1.0 / 6.0) + std::lgamma(0.5) -
               std::lgamma(2.0 / 3.0)) /
      3.0;
  CHECK(std::abs(std::abs(2.0 * p.omega1(0, 0)) - beta_anchor) < 1e-9);
  CHECK(std::abs(std::abs(2.0 * p.omega2(0, 0)) - beta_anchor) < 1e-9);
}

TEST_CASE("characteristic for y^2 = x^3 - x is the odd one") {
  const CurveSpec c = curve_from_roots({cplx(-1.0), cplx(0.0), cplx(1.0)});
  const HomologyBasis basis = build_homology_basis(c);
  const PeriodData p = compute_period_matrices(c, basis);
  const ThetaCharacteristic ch = riemann_characteristic(c, basis, p);
  CHECK(ch.delta1[0] == doctest::Approx(0.5));
  CHECK(ch.delta2[0] == doctest::Approx(0.5));

  // Independent oracle: enumerate the four half-integer characteristics and
  // find those with theta(0) = 0 (the odd ones). Exactly one, and it is the
  // characteristic found above.
  int vanishing = 0;
  for (int code = 0; code < 4; ++code) {
    ThetaCharacteristic cand;
    cand.delta1 = {(code & 1) ? 0.5 : 0.0};
    cand.delta2 = {(code & 2) ? 0.5 : 0.0};
    const ThetaJet jet = theta_jet(cand, cvec{cplx(0.0)}, p.tau, 0);
    if (std::abs(jet.value) < 1e-12 * jet.max_term) {
      ++vanishing;
      CHECK(cand.delta1[0] == ch.delta1[0]);
      CHECK(cand.delta2[0] == ch.delta2[0]);
    }
  }
  CHECK(vanishing == 1);
}

TEST_CASE("characteristics are half-integer reduced") {
  const auto& ctx = testsupport::reference_context();
  for (const PeriodData* p : {&ctx.v.periods, &ctx.e.periods, &ctx.c.periods}) {
    for (double d : p->character.delta1) CHECK((d == 0.0 || d == 0.5));
    for (double d : p->character.delta2) CHECK((d == 0.0 || d == 0.5));
  }
}

TEST_CASE("genus-3 sigma vanishes at the origin") {
  const auto& ctx = testsupport::reference_context();
  const PeriodData& p = ctx.v.periods;
  const ThetaJet jet = theta_jet(p.character, cvec(3, cplx(0.0)), p.tau, 0);
  CHECK(std::abs(jet.value) < 1e-10 * jet.max_term);
}

TEST_CASE("null-homologous path carries no period") {
  // Closed circle in the x plane enclosing no branch point: the integral of
  // every first-kind differential vanishes. Trapezoid rule with sheet
  // tracking; this exercises the same integrand the cycle quadrature uses.
  const auto& fam = testsupport::reference_family();
  const CurveSpec& v = fam.curves.v;
  const cplx center(2.5, 2.5);  // away from the (real) branch points
  const double radius = 0.9;
  const std::size_t n = 4096;
  cvec sums(3, cplx(0.0));
  cplx y = psqrt(v.eval_n(center + radius));
  cplx x_prev = center + radius;
  const cvec dn = poly::derivative(v.n_coeffs());
  for (std::size_t k = 1; k <= n; ++k) {
    const double t = 2.0 * pi * static_cast<double>(k) / static_cast<double>(n);
    const cplx x = center + std::polar(radius, t);
    const cplx y_pred = y + poly::eval(dn, x_prev) / (2.0 * y) * (x - x_prev);
    cplx y_new = psqrt(v.eval_n(x));
    if (std::abs(y_new - y_pred) > std::abs(y_new + y_pred)) y_new = -y_new;
    const cplx dx = x - x_prev;
    const cplx y_mid = 0.5 * (y + y_new);
    for (std::size_t i = 1; i <= 3; ++i) {
      const cplx num = -poly::eval(
          differential_numerator(v, DifferentialKind::First, i), 0.5 * (x + x_prev));
      sums[i - 1] += num / (2.0 * y_mid) * dx;
    }
    y = y_new;
    x_prev = x;
  }
  for (const cplx& s : sums) CHECK(std::abs(s) < 1e-9);
}

TEST_CASE("quadrature failure surfaces as a typed error") {
  // Branch points barely above the separation floor: the analyticity strip of
  // the transformed integrand on the long segment is too thin for the node
  // cap, so the doubling loop must give up cleanly.
  const CurveSpec c = curve_from_roots({cplx(0.0), cplx(1.0), cplx(1.0 + 4.5e-8),
                                        cplx(2.0), cplx(3.0)});
  Cycle tight;
  tight.parts.push_back({0, +1});  // dumbbell over [0, 1]
  try {
    cycle_integral(c, DifferentialKind::First, 1, tight, 1e-11);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::QuadratureNoConvergence);
  }
}
