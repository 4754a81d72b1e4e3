// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).
//
// Hyperelliptic curves y^2 = N(x) with N monic of odd degree 2g+1, together
// with the standard bases of holomorphic and second-kind differentials:
//
//   omega_{2i-1} = -x^{g-i}/(2y) dx,                          1 <= i <= g,
//   eta_{2i-1}   = -(1/2y) sum_{k=g-i+1}^{g+i-1}
//                    (k+i-g) lambda_{2g+2i-2k-2} x^k dx,      lambda_0 = 1.
//
// The eta basis is normalized so that the residue pairing against the omega
// basis is the identity; compute_periods relies on this when checking the
// generalized Legendre relation.

#ifndef HEF_CURVES_HPP
#define HEF_CURVES_HPP

#include <cstddef>

#include "hef/types.hpp"

namespace hef {

// Monic odd-degree model y^2 = N(x) = x^{2g+1} + lambda_2 x^{2g} + ...
// + lambda_{4g+2}. Immutable after construction.
class CurveSpec {
 public:
  CurveSpec() = default;  // empty placeholder; real curves come from factories

  std::size_t genus() const { return g_; }
  // lambda_{2m} for m = 1..2g+1 (lambda_0 = 1 is implicit).
  const cvec& lambda() const { return lambda_; }
  cplx lambda2m(std::size_t m) const;  // includes lambda_0 = 1
  // Ascending coefficients of N, degree 2g+1, monic.
  const cvec& n_coeffs() const { return n_coeffs_; }
  // Branch points, sorted lexicographically by (Re, Im).
  const cvec& roots() const { return roots_; }
  // 1 + max |root|; the length scale every tolerance is measured against.
  double scale() const { return scale_; }

  cplx eval_n(const cplx& x) const;
  bool near_branch_point(const cplx& x, double rel_tol = 1e-9) const;

  friend CurveSpec curve_from_coefficients(std::size_t g, const cvec& lambda);
  friend CurveSpec curve_from_roots(const cvec& roots);

 private:
  void finalize();  // roots, scale, separation check

  std::size_t g_ = 0;
  cvec lambda_;
  cvec n_coeffs_;
  cvec roots_;
  double scale_ = 1.0;
};

struct CurvePoint {
  bool at_infinity = false;
  cplx x{0.0};
  cplx y{0.0};

  static CurvePoint infinity() {
    CurvePoint p;
    p.at_infinity = true;
    return p;
  }
  static CurvePoint affine(cplx x, cplx y) {
    CurvePoint p;
    p.x = x;
    p.y = y;
    return p;
  }
};

struct DifferentialValue {
  cplx integrand;  // coefficient of dx at the point
};

enum class DifferentialKind { First, Second };

CurveSpec curve_from_coefficients(std::size_t g, const cvec& lambda);
CurveSpec curve_from_roots(const cvec& roots);

bool point_on_curve(const CurveSpec& curve, const CurvePoint& p,
                    double tol = 1e-9);

DifferentialValue differential_first_kind(const CurveSpec& curve,
                                          std::size_t i, const CurvePoint& p);
DifferentialValue differential_second_kind(const CurveSpec& curve,
                                           std::size_t i, const CurvePoint& p);
DifferentialValue differential_value(const CurveSpec& curve,
                                     DifferentialKind kind, std::size_t i,
                                     const CurvePoint& p);

// Ascending polynomial P(x) with differential_*_kind = -P(x)/(2y).
cvec differential_numerator(const CurveSpec& curve, DifferentialKind kind,
                            std::size_t i);

// Coefficients (mu_0, mu_2, ..., mu_12) of a genus-3 curve whose defining
// polynomial is divisible by x: N(x) = mu_0 x^7 + mu_2 x^6 + ... + mu_12 x.
cvec mu_coefficients(const CurveSpec& curve);

}  // namespace hef

#endif  // HEF_CURVES_HPP
