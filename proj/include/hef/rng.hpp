// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#ifndef HEF_RNG_HPP
#define HEF_RNG_HPP

#include <cstdint>
#include <random>

#include "hef/types.hpp"

namespace hef {

// Deterministic random source. Distributions are hand-rolled on top of the
// raw mt19937_64 stream because std::uniform_real_distribution is
// implementation-defined and reports must be byte-identical across builds.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  // Uniform in [0, 1).
  double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

  std::uint64_t bits() { return eng_(); }

  cplx complex_box(double re_lo, double re_hi, double im_lo, double im_hi) {
    const double re = uniform(re_lo, re_hi);
    const double im = uniform(im_lo, im_hi);
    return {re, im};
  }

  // Uniform on an annulus r in [r_lo, r_hi], full angle.
  cplx complex_annulus(double r_lo, double r_hi) {
    const double r = uniform(r_lo, r_hi);
    const double phi = uniform(0.0, 2.0 * pi);
    return std::polar(r, phi);
  }

  bool coin() { return (eng_() & 1u) != 0u; }

 private:
  std::mt19937_64 eng_;
};

}  // namespace hef

#endif  // HEF_RNG_HPP
