// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).
//
// Riemann theta function with half-integer characteristics,
//
//   theta[d', d''](z, tau) = sum_{n in Z^g} exp( pi i (n+d')^T tau (n+d')
//                                         + 2 pi i (n+d')^T (z+d'') ),
//
// evaluated together with its partial derivatives up to third order by
// term-wise differentiation of the truncated lattice sum. The truncation box
// is sized from the smallest eigenvalue of Im tau so the dropped tail is
// below 1e-14 of the largest retained term.

#ifndef HEF_THETA_HPP
#define HEF_THETA_HPP

#include "hef/linalg.hpp"
#include "hef/types.hpp"

namespace hef {

struct ThetaCharacteristic {
  std::vector<double> delta1;  // top block d'
  std::vector<double> delta2;  // bottom block d''
};

struct ThetaJet {
  std::size_t genus = 0;
  cplx value{0.0};
  cvec d1;   // d/dz_a, length g
  cvec d2;   // d^2/dz_a dz_b, row-major g*g
  cvec d3;   // d^3, flattened g*g*g
  double max_term = 0.0;  // largest |term| in the sum; cancellation gauge

  const cplx& second(std::size_t a, std::size_t b) const {
    return d2[a * genus + b];
  }
  const cplx& third(std::size_t a, std::size_t b, std::size_t c) const {
    return d3[(a * genus + b) * genus + c];
  }
};

// Evaluate theta and derivatives up to `order` (0..3). `min_radius` enlarges
// the truncation box (used by truncation self-tests).
ThetaJet theta_jet(const ThetaCharacteristic& chars, const cvec& z,
                   const CMat& tau, int order, double min_radius = 0.0);

// Single value/derivative; deriv is a list of z-indices (size up to 3).
cplx theta(const ThetaCharacteristic& chars, const cvec& z, const CMat& tau,
           const std::vector<std::size_t>& deriv = {},
           double min_radius = 0.0);

}  // namespace hef

#endif  // HEF_THETA_HPP
