// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#ifndef HEF_POLY_HPP
#define HEF_POLY_HPP

#include "hef/types.hpp"

namespace hef {

// Polynomials are coefficient vectors in ascending order: c[0] + c[1] x + ...
namespace poly {

cplx eval(const cvec& c, const cplx& x);
cvec derivative(const cvec& c);
cvec from_roots(const cvec& roots);  // monic expansion
cvec multiply(const cvec& a, const cvec& b);

// Synthetic division: a = q * b + r with deg r < deg b. b must have a
// nonvanishing leading coefficient.
void divide(const cvec& a, const cvec& b, cvec& q, cvec& r);

// All roots of a polynomial via eigenvalues of the companion matrix
// (Hessenberg QR with Wilkinson shifts) followed by one Newton polish step.
// Roots are returned sorted lexicographically by (Re, Im).
cvec roots(const cvec& c);

}  // namespace poly

// Sort helper shared by root handling: lexicographic by (Re, Im).
void sort_lex(cvec& v);

}  // namespace hef

#endif  // HEF_POLY_HPP
