// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "hef/sigma.hpp"

#include <cmath>
#include <utility>

namespace hef {

SigmaEvaluator::SigmaEvaluator(CurveSpec curve, PeriodData periods,
                               cplx epsilon, double trunc_radius)
    : curve_(std::move(curve)),
      periods_(std::move(periods)),
      epsilon_(epsilon),
      trunc_radius_(trunc_radius) {
  if (periods_.character.delta1.size() != curve_.genus())
    fail(ErrorCode::BadInput,
         "period data carries no characteristic of matching genus");
  periods_.refresh_derived();
}

std::size_t SigmaEvaluator::index_of_label(std::size_t odd_label) const {
  if (odd_label % 2 == 0 || odd_label > 2 * curve_.genus() - 1)
    fail(ErrorCode::BadInput, "wp indices are the odd labels 1,3,...,2g-1");
  return (odd_label - 1) / 2;
}

cplx SigmaEvaluator::sigma(const cvec& u) const {
  const std::size_t g = curve_.genus();
  if (u.size() != g) fail(ErrorCode::BadInput, "u dimension != genus");
  const cvec z = periods_.inv_two_omega1.apply(u);
  const cvec ku = periods_.kappa.apply(u);
  cplx quad(0.0);
  for (std::size_t i = 0; i < g; ++i) quad += u[i] * ku[i];
  const ThetaJet jet =
      theta_jet(periods_.character, z, periods_.tau, 0, trunc_radius_);
  return epsilon_ * std::exp(0.5 * quad) * jet.value;
}

bool SigmaEvaluator::near_divisor(const cvec& u) const {
  const cvec z = periods_.inv_two_omega1.apply(u);
  const ThetaJet jet =
      theta_jet(periods_.character, z, periods_.tau, 0, trunc_radius_);
  return std::abs(jet.value) <= 1e-10 * jet.max_term;
}

SigmaEvaluator::LogJet SigmaEvaluator::log_jet(const cvec& u) const {
  const std::size_t g = curve_.genus();
  if (u.size() != g) fail(ErrorCode::BadInput, "u dimension != genus");
  const cvec z = periods_.inv_two_omega1.apply(u);
  const ThetaJet jet =
      theta_jet(periods_.character, z, periods_.tau, 3, trunc_radius_);
  if (std::abs(jet.value) <= 1e-10 * jet.max_term)
    fail(ErrorCode::OnThetaDivisor, "u is on (or too near) the theta divisor");

  const CMat& m = periods_.inv_two_omega1;  // z = M u, d/du_i = sum_a M_ai d/dz_a
  // Theta derivatives transported to u coordinates.
  cvec t1(g, cplx(0.0));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t a = 0; a < g; ++a) t1[i] += m(a, i) * jet.d1[a];
  cvec t2(g * g, cplx(0.0));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      cplx s(0.0);
      for (std::size_t a = 0; a < g; ++a)
        for (std::size_t b = 0; b < g; ++b)
          s += m(a, i) * m(b, j) * jet.second(a, b);
      t2[i * g + j] = s;
    }
  cvec t3(g * g * g, cplx(0.0));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j)
      for (std::size_t k = 0; k < g; ++k) {
        cplx s(0.0);
        for (std::size_t a = 0; a < g; ++a)
          for (std::size_t b = 0; b < g; ++b)
            for (std::size_t c = 0; c < g; ++c)
              s += m(a, i) * m(b, j) * m(c, k) * jet.third(a, b, c);
        t3[(i * g + j) * g + k] = s;
      }

  const cplx th = jet.value;
  LogJet lj;
  lj.l2.assign(g * g, cplx(0.0));
  lj.l3.assign(g * g * g, cplx(0.0));
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j)
      lj.l2[i * g + j] = t2[i * g + j] / th - t1[i] * t1[j] / (th * th);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j)
      for (std::size_t k = 0; k < g; ++k) {
        const cplx s3 = t3[(i * g + j) * g + k] / th;
        const cplx s21 = (t2[i * g + j] * t1[k] + t2[i * g + k] * t1[j] +
                          t2[j * g + k] * t1[i]) /
                         (th * th);
        const cplx s111 = 2.0 * t1[i] * t1[j] * t1[k] / (th * th * th);
        lj.l3[(i * g + j) * g + k] = s3 - s21 + s111;
      }
  return lj;
}

cplx SigmaEvaluator::wp(std::size_t i, std::size_t j, const cvec& u) const {
  const std::size_t g = curve_.genus();
  std::size_t a = index_of_label(i), b = index_of_label(j);
  if (a > b) std::swap(a, b);  // mixed partials commute; make that exact
  const LogJet lj = log_jet(u);
  return -periods_.kappa(a, b) - lj.l2[a * g + b];
}

cplx SigmaEvaluator::wp3(std::size_t i, std::size_t j, std::size_t k,
                         const cvec& u) const {
  const std::size_t g = curve_.genus();
  std::size_t a = index_of_label(i), b = index_of_label(j),
              c = index_of_label(k);
  if (a > b) std::swap(a, b);
  if (b > c) std::swap(b, c);
  if (a > b) std::swap(a, b);
  const LogJet lj = log_jet(u);
  return -lj.l3[(a * g + b) * g + c];
}

WpRow SigmaEvaluator::wp_row(const cvec& u) const {
  const std::size_t g = curve_.genus();
  const LogJet lj = log_jet(u);
  WpRow row;
  row.p1.resize(g);
  row.p11.resize(g);
  for (std::size_t k = 0; k < g; ++k) {
    row.p1[k] = -periods_.kappa(0, k) - lj.l2[k];
    row.p11[k] = -lj.l3[k];  // (0 * g + 0) * g + k
  }
  return row;
}

cplx SigmaEvaluator::wp_el(const cplx& u) const { return wp(1, 1, cvec{u}); }

cplx SigmaEvaluator::wp_el_prime(const cplx& u) const {
  return wp3(1, 1, 1, cvec{u});
}

}  // namespace hef
