// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "hef/abel.hpp"

#include <algorithm>
#include <cmath>

#include "hef/poly.hpp"
#include "hef/quadrature.hpp"

namespace hef {

namespace {

struct LinePiece {
  cplx a, b;
};
struct ArcPiece {
  cplx center;
  double radius;
  double phi0, phi1;  // traversed from phi0 to phi1 (monotone)
};

struct Piece {
  bool is_arc = false;
  LinePiece line;
  ArcPiece arc;

  cplx at(double s) const {
    if (!is_arc) return line.a + (line.b - line.a) * s;
    const double phi = arc.phi0 + (arc.phi1 - arc.phi0) * s;
    return arc.center + std::polar(arc.radius, phi);
  }
  cplx dxds(double s) const {
    if (!is_arc) return line.b - line.a;
    const double phi = arc.phi0 + (arc.phi1 - arc.phi0) * s;
    return iu * (arc.phi1 - arc.phi0) * std::polar(arc.radius, phi);
  }
  double length() const {
    if (!is_arc) return std::abs(line.b - line.a);
    return std::abs(arc.phi1 - arc.phi0) * arc.radius;
  }
};

double min_root_distance(const cvec& roots, const cplx& x) {
  double d = std::numeric_limits<double>::infinity();
  for (const cplx& e : roots) d = std::min(d, std::abs(x - e));
  return d;
}

// Analytic continuation step for y = sqrt(N(x)): pick the square root nearest
// to a first-order prediction from the previous node.
cplx continue_y(const CurveSpec& curve, const cvec& dn_coeffs, const cplx& x_prev,
                const cplx& y_prev, const cplx& x_next) {
  const cplx slope = poly::eval(dn_coeffs, x_prev) / (2.0 * y_prev);
  const cplx y_pred = y_prev + slope * (x_next - x_prev);
  const cplx cand = psqrt(curve.eval_n(x_next));
  return (std::abs(cand - y_pred) <= std::abs(-cand - y_pred)) ? cand : -cand;
}

class PathIntegrator {
 public:
  PathIntegrator(const CurveSpec& curve, int refinement)
      : curve_(curve),
        dn_(poly::derivative(curve.n_coeffs())),
        refinement_(refinement) {
    const std::size_t g = curve.genus();
    numerators_.reserve(g);
    for (std::size_t i = 1; i <= g; ++i)
      numerators_.push_back(
          differential_numerator(curve, DifferentialKind::First, i));
    sums_.assign(g, cplx(0.0));
  }

  // Integrate one piece, continuing y from (x_cur, y_cur); updates the state.
  void run(const Piece& piece, cplx& x_cur, cplx& y_cur) {
    const auto& gl = gauss_legendre(16);
    double pos = 0.0;
    const double len = piece.length();
    if (len == 0.0) return;
    int guard = 0;
    while (pos < 1.0) {
      if (++guard > 200000)
        fail(ErrorCode::QuadratureNoConvergence, "path step floor reached");
      const double dist = min_root_distance(curve_.roots(), piece.at(pos));
      if (dist < 1e-12 * curve_.scale())
        fail(ErrorCode::PathThroughBranchPoint,
             "integration path ran into a branch point");
      const double ds =
          std::min(1.0 - pos, 0.2 * dist / (len * refinement_));
      const double mid = pos + 0.5 * ds, half = 0.5 * ds;
      for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
        const double s = mid + half * gl.nodes[k];
        const cplx x = piece.at(s);
        const cplx y = continue_y(curve_, dn_, x_cur, y_cur, x);
        const cplx jac = piece.dxds(s) * (gl.weights[k] * half);
        for (std::size_t i = 0; i < numerators_.size(); ++i)
          sums_[i] += -poly::eval(numerators_[i], x) / (2.0 * y) * jac;
        x_cur = x;
        y_cur = y;
      }
      pos += ds;
    }
    // Land exactly on the endpoint for the next piece's continuation anchor.
    const cplx x_end = piece.at(1.0);
    y_cur = continue_y(curve_, dn_, x_cur, y_cur, x_end);
    x_cur = x_end;
  }

  // Final descent into a branch point e from x_w: substitute x = e + d v^2
  // (d = x_w - e), which absorbs the square-root endpoint; y(v) = v h(v) with
  // h a continuous branch of sqrt(d * prod_{m != t}(x - e_m)).
  void run_branch_end(const cplx& x_w, const cplx& y_w, const cplx& e_t) {
    const auto& gl = gauss_legendre(48);
    const cplx d = x_w - e_t;
    cplx h_prev = y_w;  // h(1) = y(x_w)
    const cvec& roots = curve_.roots();
    // March v downward from 1 so continuity is anchored at the known sheet.
    const std::size_t n = gl.nodes.size();
    cvec h_at(n);
    for (std::size_t k = n; k-- > 0;) {
      const double v = 0.5 + 0.5 * gl.nodes[k];
      const cplx x = e_t + d * v * v;
      cplx q(1.0);
      for (const cplx& e : roots) {
        if (std::abs(e - e_t) < 1e-14 * curve_.scale()) continue;
        q *= (x - e);
      }
      cplx h = psqrt(d * q);
      if (std::abs(h - h_prev) > std::abs(h + h_prev)) h = -h;
      h_prev = h;
      h_at[k] = h;
    }
    for (std::size_t k = 0; k < n; ++k) {
      const double v = 0.5 + 0.5 * gl.nodes[k];
      const cplx x = e_t + d * v * v;
      const double w = gl.weights[k] * 0.5;
      for (std::size_t i = 0; i < numerators_.size(); ++i)
        sums_[i] += poly::eval(numerators_[i], x) * d / h_at[k] * w;
    }
  }

  const cvec& sums() const { return sums_; }

 private:
  const CurveSpec& curve_;
  cvec dn_;
  int refinement_;
  std::vector<cvec> numerators_;
  cvec sums_;
};

// Series leg from infinity out to |x| = R0 in the parameter x = 1/t^2:
// omega_i = t^{2i-2} / sqrt(P(t^2)) dt with P(s) = 1 + lambda_2 s + ... .
// Returns the integral vector and the arrival sheet y(x0).
void infinity_tail(const CurveSpec& curve, const cplx& x0, cvec& tail,
                   cplx& y0) {
  const std::size_t g = curve.genus();
  const cplx t0 = 1.0 / psqrt(x0);
  cvec p_series(2 * g + 2);
  for (std::size_t m = 0; m <= 2 * g + 1; ++m) p_series[m] = curve.lambda2m(m);

  const auto& gl = gauss_legendre(64);
  tail.assign(g, cplx(0.0));
  cplx sq_prev(1.0);  // sqrt(P(0)) = 1
  cplx sq_end(1.0);
  for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
    const double s = 0.5 + 0.5 * gl.nodes[k];
    const cplx t = t0 * s;
    cplx sq = psqrt(poly::eval(p_series, t * t));
    if (std::abs(sq - sq_prev) > std::abs(sq + sq_prev)) sq = -sq;
    sq_prev = sq;
    sq_end = sq;
    const double w = gl.weights[k] * 0.5;
    cplx tp(1.0);
    for (std::size_t i = 0; i < g; ++i) {
      tail[i] += tp / sq * t0 * w;
      tp *= t * t;
    }
  }
  // sqrt(P) at s = 1 continues to the arrival sheet at x0.
  cplx sq1 = psqrt(poly::eval(p_series, t0 * t0));
  if (std::abs(sq1 - sq_end) > std::abs(sq1 + sq_end)) sq1 = -sq1;
  cplx tpow(1.0);
  for (std::size_t m = 0; m < 2 * g + 1; ++m) tpow *= t0;
  y0 = sq1 / tpow;
}

std::vector<Piece> line_with_detours(const CurveSpec& curve, const cplx& a,
                                     const cplx& b, const PathOptions& opt) {
  const cvec& roots = curve.roots();
  const double scale = curve.scale();
  const cplx d = b - a;
  const double len = std::abs(d);
  if (len == 0.0) return {};

  struct Crossing {
    double s_in, s_out;
    std::size_t root;
    double radius;
  };

  for (int attempt = 0; attempt < 4; ++attempt) {
    const double shrink = std::pow(0.5, attempt);
    std::vector<Crossing> crossings;
    bool bad = false;
    for (std::size_t m = 0; m < roots.size() && !bad; ++m) {
      const cplx e = roots[m];
      double other = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < roots.size(); ++j)
        if (j != m) other = std::min(other, std::abs(roots[j] - e));
      double r = opt.detour_scale * shrink *
                 std::min(0.05 * scale, 0.3 * other);
      // Keep endpoints outside the disc.
      const double da = std::abs(a - e), db = std::abs(b - e);
      if (da < 2.0 * r) r = std::min(r, 0.45 * da);
      if (db < 2.0 * r) r = std::min(r, 0.45 * db);
      if (r <= 1e-13 * scale) {
        if (std::min(da, db) <= 1e-13 * scale) {
          bad = true;  // endpoint sits on a branch point
          continue;
        }
        continue;
      }
      const double t_star =
          std::clamp(((e - a) * std::conj(d)).real() / (len * len), 0.0, 1.0);
      const double dmin = std::abs(a + d * t_star - e);
      if (dmin >= r * 0.999) continue;
      const double half = std::sqrt(std::max(r * r - dmin * dmin, 0.0)) / len;
      const double proj = ((e - a) * std::conj(d)).real() / (len * len);
      const double s_in = proj - half, s_out = proj + half;
      if (s_in <= 0.0 || s_out >= 1.0) continue;  // endpoint inside handled above
      crossings.push_back({s_in, s_out, m, r});
    }
    if (bad)
      fail(ErrorCode::PathThroughBranchPoint,
           "path endpoint coincides with a branch point");
    std::sort(crossings.begin(), crossings.end(),
              [](const Crossing& l, const Crossing& r) { return l.s_in < r.s_in; });
    bool overlap = false;
    for (std::size_t k = 0; k + 1 < crossings.size(); ++k)
      if (crossings[k + 1].s_in < crossings[k].s_out) overlap = true;
    if (overlap) continue;

    std::vector<Piece> pieces;
    double cur = 0.0;
    for (const Crossing& c : crossings) {
      const cplx e = roots[c.root];
      Piece seg;
      seg.line = {a + d * cur, a + d * c.s_in};
      pieces.push_back(seg);
      const cplx p_in = a + d * c.s_in, p_out = a + d * c.s_out;
      Piece arc;
      arc.is_arc = true;
      arc.arc.center = e;
      arc.arc.radius = c.radius;
      double phi0 = std::arg(p_in - e);
      double phi1 = std::arg(p_out - e);
      if (!opt.clockwise) {
        while (phi1 <= phi0) phi1 += 2.0 * pi;
      } else {
        while (phi1 >= phi0) phi1 -= 2.0 * pi;
      }
      arc.arc.phi0 = phi0;
      arc.arc.phi1 = phi1;
      pieces.push_back(arc);
      // The arc endpoints are on the circle of radius c.radius, not exactly
      // at p_in/p_out distances when the radius was shrunk; rebase the next
      // segment at the true arc exit.
      Piece bridge;
      bridge.line = {arc.at(1.0), p_out};
      pieces.push_back(bridge);
      cur = c.s_out;
    }
    Piece last;
    last.line = {a + d * cur, b};
    pieces.push_back(last);
    return pieces;
  }
  fail(ErrorCode::PathThroughBranchPoint,
       "could not route around clustered branch points");
}

}  // namespace

AbelMap::AbelMap(CurveSpec curve, CurvePoint base)
    : curve_(std::move(curve)), base_(base) {
  if (!point_on_curve(curve_, base_, 1e-8))
    fail(ErrorCode::BadInput, "Abel map base point is not on the curve");
  base_integral_.assign(curve_.genus(), cplx(0.0));
  if (!base_.at_infinity) {
    AbelMap from_inf(curve_, CurvePoint::infinity());
    base_integral_ = from_inf.map(base_);
  }
}

cvec AbelMap::map(const CurvePoint& p, const PathOptions& opt) const {
  const std::size_t g = curve_.genus();
  if (!point_on_curve(curve_, p, 1e-7))
    fail(ErrorCode::BadInput, "Abel map target is not on the curve");
  if (p.at_infinity) {
    cvec r(g);
    for (std::size_t i = 0; i < g; ++i) r[i] = -base_integral_[i];
    return r;
  }

  const cvec& roots = curve_.roots();
  const double scale = curve_.scale();
  const bool branch_target = std::abs(p.y) <= 1e-10 * scale;
  std::size_t target_root = 0;
  if (branch_target) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t m = 0; m < roots.size(); ++m) {
      const double dd = std::abs(p.x - roots[m]);
      if (dd < best) {
        best = dd;
        target_root = m;
      }
    }
    if (best > 1e-6 * scale)
      fail(ErrorCode::BadInput, "y = 0 but x is not a branch point");
  }

  const double r0 = 16.0 * scale + 4.0 * std::abs(p.x);
  const cplx dir = std::abs(p.x) > 1e-12 ? p.x / std::abs(p.x) : cplx(1.0);
  const cplx x0 = dir * r0;

  cvec tail;
  cplx y0;
  infinity_tail(curve_, x0, tail, y0);

  // Route: x0 -> (x_w ->) target.
  cplx x_w = p.x;
  if (branch_target) {
    const cplx e_t = roots[target_root];
    double other = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < roots.size(); ++j)
      if (j != target_root) other = std::min(other, std::abs(roots[j] - e_t));
    const double rho = std::min(0.4 * other, 0.25 * std::abs(x0 - e_t));
    x_w = e_t + rho * (x0 - e_t) / std::abs(x0 - e_t);
  }
  const std::vector<Piece> pieces = line_with_detours(curve_, x0, x_w, opt);

  cvec total_prev;
  for (int refinement = 1; refinement <= 16; refinement *= 2) {
    PathIntegrator integ(curve_, refinement);
    cplx x_cur = x0, y_cur = y0;
    for (const Piece& piece : pieces) integ.run(piece, x_cur, y_cur);
    if (branch_target)
      integ.run_branch_end(x_w, y_cur, roots[target_root]);
    cvec total(g);
    for (std::size_t i = 0; i < g; ++i) total[i] = tail[i] + integ.sums()[i];

    if (!total_prev.empty()) {
      double diff = 0.0;
      for (std::size_t i = 0; i < g; ++i)
        diff = std::max(diff, std::abs(total[i] - total_prev[i]) /
                                  (1.0 + std::abs(total[i])));
      if (diff <= opt.tol) {
        // Match the arrival sheet against the requested point; the other
        // lift of the same x-path is minus the integral.
        if (!branch_target) {
          const double match = std::abs(y_cur - p.y);
          const double anti = std::abs(y_cur + p.y);
          if (match > 0.3 * std::abs(p.y) && anti > 0.3 * std::abs(p.y))
            fail(ErrorCode::QuadratureNoConvergence,
                 "sheet tracking lost along the Abel path");
          if (anti < match)
            for (auto& v : total) v = -v;
        }
        for (std::size_t i = 0; i < g; ++i) total[i] -= base_integral_[i];
        return total;
      }
    }
    total_prev = total;
  }
  fail(ErrorCode::QuadratureNoConvergence,
       "Abel path integral did not converge under refinement");
}

LatticeReduction reduce_mod_lattice(const cvec& u, const PeriodData& periods) {
  const std::size_t g = periods.genus;
  if (u.size() != g) fail(ErrorCode::BadInput, "u dimension != genus");
  const cvec z = periods.inv_two_omega1.apply(u);
  CMat im_tau(g, g), re_tau(g, g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      im_tau(i, j) = periods.tau(i, j).imag();
      re_tau(i, j) = periods.tau(i, j).real();
    }
  cvec im_z(g), q(g), p(g);
  for (std::size_t i = 0; i < g; ++i) im_z[i] = z[i].imag();
  q = LU(im_tau).solve(im_z);
  const cvec rq = re_tau.apply(q);
  for (std::size_t i = 0; i < g; ++i) p[i] = z[i].real() - rq[i].real();

  LatticeReduction red;
  red.m1.resize(g);
  red.m2.resize(g);
  for (std::size_t i = 0; i < g; ++i) {
    red.m1[i] = static_cast<long>(std::floor(p[i].real() + 0.5));
    red.m2[i] = static_cast<long>(std::floor(q[i].real() + 0.5));
  }
  red.representative = u;
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j)
      red.representative[i] -=
          2.0 * periods.omega1(i, j) * static_cast<double>(red.m1[j]) +
          2.0 * periods.omega2(i, j) * static_cast<double>(red.m2[j]);
  return red;
}

double lattice_distance(const cvec& u, const PeriodData& periods) {
  const LatticeReduction red = reduce_mod_lattice(u, periods);
  const std::size_t g = periods.genus;
  const cvec z = periods.inv_two_omega1.apply(red.representative);
  CMat im_tau(g, g), re_tau(g, g);
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = 0; j < g; ++j) {
      im_tau(i, j) = periods.tau(i, j).imag();
      re_tau(i, j) = periods.tau(i, j).real();
    }
  cvec im_z(g);
  for (std::size_t i = 0; i < g; ++i) im_z[i] = z[i].imag();
  const cvec q = LU(im_tau).solve(im_z);
  const cvec rq = re_tau.apply(q);
  double dist = 0.0;
  for (std::size_t i = 0; i < g; ++i) {
    dist = std::max(dist, std::abs(q[i].real()));
    dist = std::max(dist, std::abs(z[i].real() - rq[i].real()));
  }
  return dist;
}

namespace {

void validate_inversion_points(const CurveSpec& curve,
                               const std::vector<CurvePoint>& points) {
  const std::size_t g = curve.genus();
  if (points.size() != g)
    fail(ErrorCode::BadArity, "inversion oracle needs exactly g points");
  for (const auto& p : points) {
    if (p.at_infinity)
      fail(ErrorCode::AtInfinity, "inversion oracle needs affine points");
  }
  for (std::size_t i = 0; i < g; ++i)
    for (std::size_t j = i + 1; j < g; ++j)
      if (std::abs(points[i].x - points[j].x) < 1e-6 * curve.scale())
        fail(ErrorCode::DegenerateConfiguration,
             "inversion oracle needs distinct x coordinates");
}

}  // namespace

InversionReport inversion_residual_at(const SigmaEvaluator& ev, const cvec& u,
                                      const std::vector<CurvePoint>& points) {
  const std::size_t g = ev.curve().genus();
  validate_inversion_points(ev.curve(), points);

  const WpRow row = ev.wp_row(u);

  // Elementary symmetric functions of the x coordinates.
  cvec esym(g + 1, cplx(0.0));
  esym[0] = 1.0;
  for (std::size_t m = 0; m < g; ++m)
    for (std::size_t k = std::min(m + 1, g); k >= 1; --k)
      esym[k] += points[m].x * esym[k - 1];

  InversionReport rep;
  rep.u = u;
  // wp_{1,2k-1}(u) = (-1)^{k+1} e_k(x): the monic polynomial with the x_i as
  // roots is x^g - wp_{1,1} x^{g-1} - wp_{1,3} x^{g-2} - ... - wp_{1,2g-1}.
  for (std::size_t k = 1; k <= g; ++k) {
    const cplx expect = ((k % 2 == 1) ? 1.0 : -1.0) * esym[k];
    rep.sym_residual =
        std::max(rep.sym_residual, std::abs(row.p1[k - 1] - expect) /
                                       (1.0 + std::abs(expect)));
  }
  // 2 y_i = -(x_i^{g-1} wp_{1,1,1} + x_i^{g-2} wp_{1,1,3} + ... + wp_{1,1,2g-1}).
  for (std::size_t m = 0; m < g; ++m) {
    cplx s(0.0);
    cplx xp(1.0);
    for (std::size_t k = g; k >= 1; --k) {
      s += xp * row.p11[k - 1];
      xp *= points[m].x;
    }
    const cplx lhs = 2.0 * points[m].y;
    rep.y_residual = std::max(
        rep.y_residual, std::abs(lhs + s) / (1.0 + std::abs(lhs) + std::abs(s)));
  }
  rep.max_residual = std::max(rep.sym_residual, rep.y_residual);
  return rep;
}

InversionReport jacobi_inversion_residual(
    const SigmaEvaluator& ev, const AbelMap& map,
    const std::vector<CurvePoint>& points) {
  const std::size_t g = ev.curve().genus();
  validate_inversion_points(ev.curve(), points);
  cvec u(g, cplx(0.0));
  for (const auto& p : points) {
    const cvec a = map.map(p);
    for (std::size_t i = 0; i < g; ++i) u[i] += a[i];
  }
  if (ev.near_divisor(u))
    fail(ErrorCode::OnThetaDivisor,
         "point configuration maps onto the theta divisor");
  return inversion_residual_at(ev, u, points);
}

}  // namespace hef
