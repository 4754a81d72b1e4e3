// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "hef/theta.hpp"

#include <cmath>

namespace hef {

namespace {

struct Box {
  std::vector<long> lo;
  std::vector<long> hi;
};

// Truncation box: terms decay like exp(-pi v^T Y v - 2 pi v^T y) with
// Y = Im tau, y = Im z, v = n + d'. The maximum sits at v* = -Y^{-1} y; keep
// everything within radius R of v*, where pi * lambda_min * R^2 exceeds the
// target tail exponent.
Box truncation_box(const CMat& tau, const cvec& z,
                   const std::vector<double>& delta1, double lambda_min,
                   double min_radius, int order) {
  const std::size_t g = z.size();
  CMat y_mat(g, g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) y_mat(i, j) = tau(i, j).imag();
  cvec im_z(g);
  for (std::size_t i = 0; i < g; ++i) im_z[i] = -z[i].imag();
  const cvec center = LU(y_mat).solve(im_z);

  double radius = std::sqrt(60.0 / (pi * lambda_min));
  radius = std::sqrt(
      (45.0 + 3.0 * std::log(2.0 * pi * radius + 3.0) +
       static_cast<double>(order) * std::log(2.0 * pi * radius + 3.0)) /
      (pi * lambda_min));
  radius = std::max(radius, min_radius) + 1.0;

  Box box;
  box.lo.resize(g);
  box.hi.resize(g);
  double count = 1.0;
  for (std::size_t i = 0; i < g; ++i) {
    const double c = center[i].real() - delta1[i];
    box.lo[i] = static_cast<long>(std::floor(c - radius));
    box.hi[i] = static_cast<long>(std::ceil(c + radius));
    count *= static_cast<double>(box.hi[i] - box.lo[i] + 1);
  }
  if (count > 2e7)
    fail(ErrorCode::NumericOverflow,
         "theta truncation box too large (Im tau nearly singular)");
  return box;
}

}  // namespace

ThetaJet theta_jet(const ThetaCharacteristic& chars, const cvec& z,
                   const CMat& tau, int order, double min_radius) {
  const std::size_t g = z.size();
  if (tau.rows() != g || tau.cols() != g)
    fail(ErrorCode::BadInput, "tau dimension does not match z");
  if (chars.delta1.size() != g || chars.delta2.size() != g)
    fail(ErrorCode::BadInput, "characteristic dimension does not match z");
  if (order < 0 || order > 3)
    fail(ErrorCode::BadInput, "theta derivatives supported up to order 3");

  CMat im_tau(g, g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) im_tau(i, j) = tau(i, j).imag();
  const double lambda_min = symmetric_eigenvalues(im_tau).front();
  if (!(lambda_min > 0.0))
    fail(ErrorCode::TauNotPositive, "Im tau is not positive definite");

  const Box box = truncation_box(tau, z, chars.delta1, lambda_min, min_radius,
                                 order);

  ThetaJet jet;
  jet.genus = g;
  jet.d1.assign(g, cplx(0.0));
  jet.d2.assign(g * g, cplx(0.0));
  jet.d3.assign(g * g * g, cplx(0.0));

  std::vector<long> n(box.lo);
  std::vector<double> v(g);
  cvec factor(g);
  const cplx two_pi_i = 2.0 * pi * iu;

  while (true) {
    for (std::size_t i = 0; i < g; ++i)
      v[i] = static_cast<double>(n[i]) + chars.delta1[i];

    cplx expo(0.0);
    for (std::size_t i = 0; i < g; ++i) {
      cplx row(0.0);
      for (std::size_t j = 0; j < g; ++j) row += tau(i, j) * v[j];
      expo += v[i] * row * (pi * iu);
      expo += two_pi_i * v[i] * (z[i] + chars.delta2[i]);
    }
    if (expo.real() > 690.0)
      fail(ErrorCode::NumericOverflow, "theta term overflows double range");
    const cplx term = std::exp(expo);
    jet.max_term = std::max(jet.max_term, std::abs(term));
    jet.value += term;
    if (order >= 1) {
      for (std::size_t a = 0; a < g; ++a) factor[a] = two_pi_i * v[a];
      for (std::size_t a = 0; a < g; ++a) {
        const cplx ta = factor[a] * term;
        jet.d1[a] += ta;
        if (order >= 2) {
          for (std::size_t b = 0; b < g; ++b) {
            const cplx tab = factor[b] * ta;
            jet.d2[a * g + b] += tab;
            if (order >= 3)
              for (std::size_t c = 0; c < g; ++c)
                jet.d3[(a * g + b) * g + c] += factor[c] * tab;
          }
        }
      }
    }

    std::size_t k = 0;
    while (k < g && n[k] == box.hi[k]) {
      n[k] = box.lo[k];
      ++k;
    }
    if (k == g) break;
    ++n[k];
  }
  return jet;
}

cplx theta(const ThetaCharacteristic& chars, const cvec& z, const CMat& tau,
           const std::vector<std::size_t>& deriv, double min_radius) {
  const ThetaJet jet =
      theta_jet(chars, z, tau, static_cast<int>(deriv.size()), min_radius);
  switch (deriv.size()) {
    case 0: return jet.value;
    case 1: return jet.d1[deriv[0]];
    case 2: return jet.second(deriv[0], deriv[1]);
    case 3: return jet.third(deriv[0], deriv[1], deriv[2]);
    default:
      fail(ErrorCode::BadInput, "theta derivatives supported up to order 3");
  }
}

}  // namespace hef
