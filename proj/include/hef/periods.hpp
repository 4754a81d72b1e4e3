// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).
//
// Period matrices over the canonical homology basis:
//
//   2 omega'  = ( int_{a_j} omega_{2i-1} ),   2 omega'' = ( int_{b_j} ... ),
//   -2 eta'   = ( int_{a_j} eta_{2i-1} ),     -2 eta''  = ( int_{b_j} ... ),
//
// tau = omega'^{-1} omega'', plus the half-integer theta characteristic of
// the vector of Riemann constants for base point infinity. The characteristic
// is found by exhaustive search over the 4^g half-integer candidates,
// validated a posteriori through the Jacobi inversion identities.

#ifndef HEF_PERIODS_HPP
#define HEF_PERIODS_HPP

#include "hef/curves.hpp"
#include "hef/homology.hpp"
#include "hef/linalg.hpp"
#include "hef/theta.hpp"
#include "hef/types.hpp"

namespace hef {

struct PeriodData {
  std::size_t genus = 0;
  CMat omega1;  // omega'
  CMat omega2;  // omega''
  CMat eta1;    // eta'
  CMat eta2;    // eta''
  CMat tau;
  ThetaCharacteristic character;
  double quad_tol = 1e-11;

  // Cached derived matrices.
  CMat inv_two_omega1;  // (2 omega')^{-1}
  CMat kappa;           // eta' (omega')^{-1}

  void refresh_derived();
};

// Integral of one differential over a homology class. Node counts double
// until two refinements agree to `tol` (relative).
cplx cycle_integral(const CurveSpec& curve, DifferentialKind kind,
                    std::size_t i, const Cycle& cycle, double tol = 1e-11);

// All four period matrices and tau; the characteristic is left empty.
PeriodData compute_period_matrices(const CurveSpec& curve,
                                   const HomologyBasis& basis,
                                   double quad_tol = 1e-11);

// Characteristic of the Riemann constant (base point infinity), validated by
// the Jacobi inversion identities.
ThetaCharacteristic riemann_characteristic(const CurveSpec& curve,
                                           const HomologyBasis& basis,
                                           const PeriodData& periods);

// Full pipeline: basis, matrices, characteristic.
PeriodData compute_periods(const CurveSpec& curve, double quad_tol = 1e-11);
PeriodData compute_periods(const CurveSpec& curve, const HomologyBasis& basis,
                           double quad_tol = 1e-11);

// Diagnostics.
double tau_symmetry_residual(const PeriodData& p);
double tau_min_imag_eigenvalue(const PeriodData& p);
// Residual of the generalized Legendre relation
//   omega'^T eta'' - eta'^T omega'' = c I,  c = +-(pi i / 2),
// minimized over the sign; also checks the symmetry of eta' (omega')^{-1}.
double legendre_residual(const PeriodData& p, int* sign_out = nullptr);

}  // namespace hef

#endif  // HEF_PERIODS_HPP
