// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#ifndef HEF_DUAL_HPP
#define HEF_DUAL_HPP

#include "hef/types.hpp"

namespace hef {

// Complex dual numbers: v + d*eps with eps^2 = 0. Used to differentiate the
// rational coordinate maps of the bielliptic morphisms along the curve.
struct Dual {
  cplx v{0.0};
  cplx d{0.0};

  Dual() = default;
  Dual(cplx value, cplx deriv) : v(value), d(deriv) {}
  explicit Dual(cplx value) : v(value) {}

  static Dual variable(cplx value) { return Dual(value, cplx(1.0)); }
};

inline Dual operator+(const Dual& a, const Dual& b) {
  return {a.v + b.v, a.d + b.d};
}
inline Dual operator-(const Dual& a, const Dual& b) {
  return {a.v - b.v, a.d - b.d};
}
inline Dual operator*(const Dual& a, const Dual& b) {
  return {a.v * b.v, a.v * b.d + a.d * b.v};
}
inline Dual operator/(const Dual& a, const Dual& b) {
  return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}
inline Dual operator+(const Dual& a, const cplx& s) { return {a.v + s, a.d}; }
inline Dual operator-(const Dual& a, const cplx& s) { return {a.v - s, a.d}; }
inline Dual operator*(const Dual& a, const cplx& s) {
  return {a.v * s, a.d * s};
}
inline Dual operator*(const cplx& s, const Dual& a) { return a * s; }
inline Dual operator/(const Dual& a, const cplx& s) {
  return {a.v / s, a.d / s};
}

}  // namespace hef

#endif  // HEF_DUAL_HPP
