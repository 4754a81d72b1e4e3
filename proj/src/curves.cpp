// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "hef/curves.hpp"

#include <algorithm>
#include <cmath>

#include "hef/poly.hpp"

namespace hef {

namespace {

constexpr std::size_t kMaxGenus = 3;

void check_genus(std::size_t g) {
  if (g < 1 || g > kMaxGenus)
    fail(ErrorCode::BadArity, "genus must be between 1 and 3");
}

void check_separation(const cvec& roots, double scale) {
  const double floor = 1e-8 * scale;
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i] - roots[j]) < floor)
        fail(ErrorCode::MultipleRoots,
             "branch points closer than the separation floor");
}

}  // namespace

cplx CurveSpec::lambda2m(std::size_t m) const {
  if (m == 0) return cplx(1.0);
  if (m > lambda_.size()) fail(ErrorCode::BadInput, "lambda index out of range");
  return lambda_[m - 1];
}

cplx CurveSpec::eval_n(const cplx& x) const { return poly::eval(n_coeffs_, x); }

bool CurveSpec::near_branch_point(const cplx& x, double rel_tol) const {
  for (const cplx& e : roots_)
    if (std::abs(x - e) < rel_tol * scale_) return true;
  return false;
}

void CurveSpec::finalize() {
  double m = 0.0;
  for (const cplx& r : roots_) m = std::max(m, std::abs(r));
  scale_ = 1.0 + m;
  check_separation(roots_, scale_);
}

CurveSpec curve_from_coefficients(std::size_t g, const cvec& lambda) {
  check_genus(g);
  if (lambda.size() != 2 * g + 1)
    fail(ErrorCode::BadArity, "expected 2g+1 coefficients after lambda_0");
  CurveSpec c;
  c.g_ = g;
  c.lambda_ = lambda;
  const std::size_t deg = 2 * g + 1;
  c.n_coeffs_.assign(deg + 1, cplx(0.0));
  c.n_coeffs_[deg] = 1.0;
  // lambda_{2m} multiplies x^{2g+1-m}.
  for (std::size_t m = 1; m <= deg; ++m) c.n_coeffs_[deg - m] = lambda[m - 1];
  c.roots_ = poly::roots(c.n_coeffs_);
  c.finalize();
  return c;
}

CurveSpec curve_from_roots(const cvec& roots) {
  if (roots.size() % 2 == 0)
    fail(ErrorCode::BadArity, "odd model needs an odd number of roots");
  const std::size_t g = (roots.size() - 1) / 2;
  check_genus(g);
  CurveSpec c;
  c.g_ = g;
  c.roots_ = roots;
  sort_lex(c.roots_);
  c.finalize();
  c.n_coeffs_ = poly::from_roots(c.roots_);
  const std::size_t deg = 2 * g + 1;
  c.lambda_.assign(deg, cplx(0.0));
  for (std::size_t m = 1; m <= deg; ++m) c.lambda_[m - 1] = c.n_coeffs_[deg - m];
  return c;
}

bool point_on_curve(const CurveSpec& curve, const CurvePoint& p, double tol) {
  if (p.at_infinity) return true;
  const cplx n = curve.eval_n(p.x);
  return std::abs(p.y * p.y - n) <= tol * (1.0 + std::abs(n));
}

namespace {

void check_affine_off_branch(const CurveSpec& curve, const CurvePoint& p) {
  if (p.at_infinity)
    fail(ErrorCode::AtInfinity, "differential requested at infinity");
  if (std::abs(p.y) <= 1e-12 * curve.scale())
    fail(ErrorCode::AtBranchPoint, "differential requested at a branch point");
}

}  // namespace

cvec differential_numerator(const CurveSpec& curve, DifferentialKind kind,
                            std::size_t i) {
  const std::size_t g = curve.genus();
  if (i < 1 || i > g) fail(ErrorCode::BadInput, "differential index out of range");
  if (kind == DifferentialKind::First) {
    cvec p(g - i + 1, cplx(0.0));
    p[g - i] = 1.0;
    return p;
  }
  cvec p(g + i, cplx(0.0));
  for (std::size_t k = g - i + 1; k <= g + i - 1; ++k) {
    const double factor = static_cast<double>(k + i - g);
    p[k] = factor * curve.lambda2m(g + i - k - 1);
  }
  return p;
}

DifferentialValue differential_value(const CurveSpec& curve,
                                     DifferentialKind kind, std::size_t i,
                                     const CurvePoint& p) {
  check_affine_off_branch(curve, p);
  const cvec num = differential_numerator(curve, kind, i);
  return {-poly::eval(num, p.x) / (2.0 * p.y)};
}

DifferentialValue differential_first_kind(const CurveSpec& curve,
                                          std::size_t i, const CurvePoint& p) {
  return differential_value(curve, DifferentialKind::First, i, p);
}

DifferentialValue differential_second_kind(const CurveSpec& curve,
                                           std::size_t i,
                                           const CurvePoint& p) {
  return differential_value(curve, DifferentialKind::Second, i, p);
}

cvec mu_coefficients(const CurveSpec& curve) {
  if (curve.genus() != 3)
    fail(ErrorCode::BadInput, "mu coefficients are defined for genus 3");
  const cplx constant = curve.n_coeffs()[0];
  if (std::abs(constant) > 1e-12 * curve.scale())
    fail(ErrorCode::NotFamilyCurve,
         "constant term does not vanish; x does not divide N");
  // N = mu_0 x^7 + mu_2 x^6 + ... + mu_12 x, so mu_{2i} = lambda_{2i}.
  cvec mu(7);
  for (std::size_t i = 0; i <= 6; ++i) mu[i] = curve.lambda2m(i);
  return mu;
}

}  // namespace hef
