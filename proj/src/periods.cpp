// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "hef/periods.hpp"

#include <algorithm>
#include <cmath>

#include "hef/abel.hpp"
#include "hef/poly.hpp"
#include "hef/rng.hpp"
#include "hef/sigma.hpp"

namespace hef {

void PeriodData::refresh_derived() {
  inv_two_omega1 = inverse(omega1 * cplx(2.0));
  kappa = eta1 * inverse(omega1);
  // kappa is symmetric up to quadrature error; store the symmetric part so
  // wp_{i,j} == wp_{j,i} holds exactly.
  const CMat kt = kappa.transpose();
  kappa = (kappa + kt) * cplx(0.5);
}

namespace {

// Integrals of -P_d(x)/(2y) dx over the sheet-+ leg of one segment, doubled
// over both sheets, for a batch of numerator polynomials. With the cosine
// substitution the integrand is P_d(x(t))/W(t) and the midpoint rule in t
// converges spectrally. Node counts double until two refinements agree.
cvec segment_batch(const CurveSpec& curve, std::size_t seg,
                   const std::vector<cvec>& numerators, double tol) {
  cvec prev;
  for (std::size_t n = 32; n <= (1u << 16); n *= 2) {
    const SegmentGrid grid = segment_grid(curve, seg, n);
    cvec vals(numerators.size(), cplx(0.0));
    for (std::size_t k = 0; k < n; ++k) {
      const cplx inv_w = 1.0 / grid.w[k];
      for (std::size_t d = 0; d < numerators.size(); ++d)
        vals[d] += poly::eval(numerators[d], grid.x[k]) * inv_w;
    }
    // 2 * int -P/(2y) dx over the segment with y = sign * i * r sin(t) * W:
    // the r sin(t) factors cancel and a factor sign * i remains.
    const double h = pi / static_cast<double>(n);
    for (auto& v : vals) v *= grid.sign * iu * h;
    if (!prev.empty()) {
      double diff = 0.0;
      for (std::size_t d = 0; d < vals.size(); ++d)
        diff = std::max(diff,
                        std::abs(vals[d] - prev[d]) / (1.0 + std::abs(vals[d])));
      if (diff <= tol) return vals;
    }
    prev = vals;
  }
  fail(ErrorCode::QuadratureNoConvergence,
       "cycle quadrature did not converge under node doubling");
}

std::vector<cvec> all_numerators(const CurveSpec& curve) {
  const std::size_t g = curve.genus();
  std::vector<cvec> nums;
  nums.reserve(2 * g);
  for (std::size_t i = 1; i <= g; ++i)
    nums.push_back(differential_numerator(curve, DifferentialKind::First, i));
  for (std::size_t i = 1; i <= g; ++i)
    nums.push_back(differential_numerator(curve, DifferentialKind::Second, i));
  return nums;
}

}  // namespace

cplx cycle_integral(const CurveSpec& curve, DifferentialKind kind,
                    std::size_t i, const Cycle& cycle, double tol) {
  const std::vector<cvec> nums = {differential_numerator(curve, kind, i)};
  cplx total(0.0);
  for (const Dumbbell& d : cycle.parts) {
    const cvec v = segment_batch(curve, d.seg, nums, tol);
    total += static_cast<double>(d.orientation) * v[0];
  }
  return total;
}

PeriodData compute_period_matrices(const CurveSpec& curve,
                                   const HomologyBasis& basis,
                                   double quad_tol) {
  const std::size_t g = curve.genus();
  const std::vector<cvec> nums = all_numerators(curve);

  // Converged batch integral per segment, shared across cycles.
  std::vector<cvec> seg_vals(2 * g);
  for (std::size_t seg = 0; seg < 2 * g; ++seg)
    seg_vals[seg] = segment_batch(curve, seg, nums, quad_tol);

  auto cycle_sums = [&](const Cycle& c) {
    cvec sums(2 * g, cplx(0.0));
    for (const Dumbbell& d : c.parts)
      for (std::size_t k = 0; k < 2 * g; ++k)
        sums[k] += static_cast<double>(d.orientation) * seg_vals[d.seg][k];
    return sums;
  };

  PeriodData p;
  p.genus = g;
  p.quad_tol = quad_tol;
  p.omega1 = CMat(g, g);
  p.omega2 = CMat(g, g);
  p.eta1 = CMat(g, g);
  p.eta2 = CMat(g, g);
  for (std::size_t j = 0; j < g; ++j) {
    const cvec va = cycle_sums(basis.a[j]);
    const cvec vb = cycle_sums(basis.b[j]);
    for (std::size_t i = 0; i < g; ++i) {
      p.omega1(i, j) = 0.5 * va[i];
      p.omega2(i, j) = 0.5 * vb[i];
      p.eta1(i, j) = -0.5 * va[g + i];
      p.eta2(i, j) = -0.5 * vb[g + i];
    }
  }
  if (cond1(p.omega1) > 1e12)
    fail(ErrorCode::IllConditioned, "omega' is numerically singular");
  p.tau = LU(p.omega1).solve(p.omega2);
  p.refresh_derived();
  return p;
}

double tau_symmetry_residual(const PeriodData& p) {
  double num = 0.0, den = 1.0;
  for (std::size_t i = 0; i < p.genus; ++i)
    for (std::size_t j = 0; j < p.genus; ++j) {
      num = std::max(num, std::abs(p.tau(i, j) - p.tau(j, i)));
      den = std::max(den, std::abs(p.tau(i, j)));
    }
  return num / den;
}

double tau_min_imag_eigenvalue(const PeriodData& p) {
  CMat im(p.genus, p.genus);
  for (std::size_t i = 0; i < p.genus; ++i)
    for (std::size_t j = 0; j < p.genus; ++j)
      im(i, j) = 0.5 * (p.tau(i, j).imag() + p.tau(j, i).imag());
  return symmetric_eigenvalues(im).front();
}

double legendre_residual(const PeriodData& p, int* sign_out) {
  const CMat lhs =
      p.omega1.transpose() * p.eta2 - p.eta1.transpose() * p.omega2;
  const cplx c = iu * (pi / 2.0);
  double best = std::numeric_limits<double>::infinity();
  int best_sign = 1;
  for (int s : {+1, -1}) {
    const CMat dev = lhs - CMat::identity(p.genus) * (c * static_cast<double>(s));
    const double r = dev.max_abs() / std::abs(c);
    if (r < best) {
      best = r;
      best_sign = s;
    }
  }
  if (sign_out) *sign_out = best_sign;
  // eta'(omega')^{-1} must be symmetric as well.
  double sym = 0.0;
  for (std::size_t i = 0; i < p.genus; ++i)
    for (std::size_t j = 0; j < p.genus; ++j)
      sym = std::max(sym, std::abs(p.kappa(i, j) - p.kappa(j, i)));
  sym /= (1.0 + p.kappa.max_abs());
  return std::max(best, sym);
}

namespace {

struct ValidationConfig {
  std::vector<CurvePoint> points;
  cvec u;
};

std::vector<ValidationConfig> sample_validation_configs(
    const CurveSpec& curve, std::size_t count) {
  const std::size_t g = curve.genus();
  const double scale = curve.scale();
  cplx centroid(0.0);
  for (const cplx& e : curve.roots()) centroid += e;
  centroid /= static_cast<double>(curve.roots().size());

  Rng rng(0x5EED2026ull);
  const AbelMap abel(curve, CurvePoint::infinity());
  std::vector<ValidationConfig> configs;
  int guard = 0;
  while (configs.size() < count) {
    if (++guard > 500)
      fail(ErrorCode::CharacteristicSearchFailed,
           "could not sample validation configurations");
    ValidationConfig cfg;
    bool ok = true;
    for (std::size_t m = 0; m < g && ok; ++m) {
      const cplx x = centroid + rng.complex_annulus(0.35 * scale, 1.5 * scale);
      if (curve.near_branch_point(x, 0.05)) {
        ok = false;
        break;
      }
      for (const auto& q : cfg.points)
        if (std::abs(q.x - x) < 0.05 * scale) ok = false;
      if (!ok) break;
      cplx y = psqrt(curve.eval_n(x));
      if (rng.coin()) y = -y;
      cfg.points.push_back(CurvePoint::affine(x, y));
    }
    if (!ok) continue;
    cfg.u.assign(g, cplx(0.0));
    for (const auto& pt : cfg.points) {
      const cvec a = abel.map(pt);
      for (std::size_t i = 0; i < g; ++i) cfg.u[i] += a[i];
    }
    configs.push_back(std::move(cfg));
  }
  return configs;
}

}  // namespace

ThetaCharacteristic riemann_characteristic(const CurveSpec& curve,
                                           const HomologyBasis& basis,
                                           const PeriodData& periods) {
  (void)basis;  // the characteristic is tied to the basis already baked into periods
  const std::size_t g = curve.genus();
  const auto configs = sample_validation_configs(curve, 3);

  double best_score = std::numeric_limits<double>::infinity();
  double second_score = std::numeric_limits<double>::infinity();
  ThetaCharacteristic best;

  const std::size_t total = 1u << (2 * g);
  for (std::size_t code = 0; code < total; ++code) {
    ThetaCharacteristic cand;
    cand.delta1.resize(g);
    cand.delta2.resize(g);
    for (std::size_t i = 0; i < g; ++i) {
      cand.delta1[i] = ((code >> i) & 1u) ? 0.5 : 0.0;
      cand.delta2[i] = ((code >> (g + i)) & 1u) ? 0.5 : 0.0;
    }
    PeriodData trial = periods;
    trial.character = cand;
    const SigmaEvaluator ev(curve, trial);
    double score = std::numeric_limits<double>::infinity();
    for (const auto& cfg : configs) {
      try {
        const InversionReport rep =
            inversion_residual_at(ev, cfg.u, cfg.points);
        score = std::min(score, rep.max_residual);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::OnThetaDivisor) throw;
      }
    }
    if (score < best_score) {
      second_score = best_score;
      best_score = score;
      best = cand;
    } else {
      second_score = std::min(second_score, score);
    }
  }

  if (!(best_score < 1e-4) || !(second_score > 1e-2))
    fail(ErrorCode::CharacteristicSearchFailed,
         "no unique half-integer characteristic satisfies the inversion "
         "identities");
  return best;
}

PeriodData compute_periods(const CurveSpec& curve, const HomologyBasis& basis,
                           double quad_tol) {
  PeriodData p = compute_period_matrices(curve, basis, quad_tol);
  p.character = riemann_characteristic(curve, basis, p);
  return p;
}

PeriodData compute_periods(const CurveSpec& curve, double quad_tol) {
  return compute_periods(curve, build_homology_basis(curve), quad_tol);
}

}  // namespace hef
