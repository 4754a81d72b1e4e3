// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).
//
// Sigma function bound to one curve and one period choice:
//
//   sigma(u) = eps * exp( u^T eta'(omega')^{-1} u / 2 )
//              * theta[d'; d'']( (2 omega')^{-1} u, tau ),
//
// and the lattice-periodic functions
//
//   wp_{i,j}   = -d_{u_i} d_{u_j} log sigma,
//   wp_{i,j,k} =  d_{u_k} wp_{i,j},
//
// with indices carrying the odd labels 1, 3, ..., 2g-1. All derivatives come
// from the term-wise differentiated theta series, never from finite
// differences.

#ifndef HEF_SIGMA_HPP
#define HEF_SIGMA_HPP

#include "hef/curves.hpp"
#include "hef/periods.hpp"
#include "hef/types.hpp"

namespace hef {

// wp_{1,2k-1} and wp_{1,1,2k-1} for k = 1..g, the generators of the function
// field of the Jacobian.
struct WpRow {
  cvec p1;   // wp_{1,1}, wp_{1,3}, ..., wp_{1,2g-1}
  cvec p11;  // wp_{1,1,1}, wp_{1,1,3}, ...
};

class SigmaEvaluator {
 public:
  SigmaEvaluator(CurveSpec curve, PeriodData periods, cplx epsilon = cplx(1.0),
                 double trunc_radius = 0.0);

  const CurveSpec& curve() const { return curve_; }
  const PeriodData& periods() const { return periods_; }
  double trunc_radius() const { return trunc_radius_; }

  cplx sigma(const cvec& u) const;

  // True when u is too close to the zero divisor of sigma for wp values to be
  // trustworthy (theta sum cancels below 1e-10 of its largest term).
  bool near_divisor(const cvec& u) const;

  cplx wp(std::size_t i, std::size_t j, const cvec& u) const;
  cplx wp3(std::size_t i, std::size_t j, std::size_t k, const cvec& u) const;

  WpRow wp_row(const cvec& u) const;

  // Genus-1 conveniences.
  cplx wp_el(const cplx& u) const;        // wp_{1,1}
  cplx wp_el_prime(const cplx& u) const;  // wp_{1,1,1}

 private:
  struct LogJet {
    cvec l2;  // d^2 log theta(z(u)) in u indices, row-major g*g
    cvec l3;  // d^3, flattened
  };
  LogJet log_jet(const cvec& u) const;
  std::size_t index_of_label(std::size_t odd_label) const;

  CurveSpec curve_;
  PeriodData periods_;
  cplx epsilon_;
  double trunc_radius_;
};

}  // namespace hef

#endif  // HEF_SIGMA_HPP
