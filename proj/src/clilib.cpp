// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "hef/clilib.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "hef/homology.hpp"
#include "hef/poly.hpp"

namespace hef::cli {

namespace fs = std::filesystem;

ojson config_to_json(const RunConfig& cfg) {
  ojson j;
  j["theta_tolerance"] = cfg.theta_tolerance;
  j["quad_tolerance"] = cfg.quad_tolerance;
  j["rng_seed"] = cfg.rng_seed;
  j["precision_report"] = cfg.precision_report;
  return j;
}

std::string resolve_cache_dir(const RunConfig& cfg) {
  if (!cfg.cache_dir.empty()) return cfg.cache_dir;
  if (const char* env = std::getenv("HEF_CACHE_DIR"); env && *env) return env;
  return ".hef-cache";
}

namespace {

double trunc_radius_for(const RunConfig& cfg) {
  const double t = std::max(cfg.theta_tolerance, 1e-300);
  return std::sqrt(-std::log(t) / pi);
}

}  // namespace

PeriodData cached_periods(const CurveSpec& curve, const RunConfig& cfg,
                          std::string* cache_digest) {
  const std::string dir = resolve_cache_dir(cfg);
  std::error_code ec;
  fs::create_directories(dir, ec);
  const std::string key = curve_hash(curve, cfg.quad_tolerance);
  const fs::path path = fs::path(dir) / (key + ".json");

  if (fs::exists(path)) {
    try {
      std::ifstream in(path);
      nlohmann::json j = nlohmann::json::parse(in);
      if (j.at("genus").get<std::size_t>() == curve.genus() &&
          j.at("quad_tol").get<double>() == cfg.quad_tolerance &&
          !j.at("char_delta1").empty()) {
        PeriodData p = periods_from_json(j);
        if (cache_digest)
          *cache_digest += periods_to_json(p, key).dump();
        return p;
      }
    } catch (...) {
      // fall through to recompute on any cache damage
    }
  }

  const PeriodData p = compute_periods(curve, cfg.quad_tolerance);
  const ojson j = periods_to_json(p, key);
  std::ofstream out(path);
  out << j.dump(2) << "\n";
  if (cache_digest) *cache_digest += j.dump();
  return p;
}

CurveContext cached_curve_context(const CurveSpec& curve, const RunConfig& cfg,
                                  std::optional<CurvePoint> base,
                                  std::string* cache_digest) {
  const PeriodData p = cached_periods(curve, cfg, cache_digest);
  CurveContext ctx = restore_curve_context(curve, p, base);
  ctx.sigma = std::make_shared<SigmaEvaluator>(curve, ctx.periods, cplx(1.0),
                                               trunc_radius_for(cfg));
  return ctx;
}

FamilyContext cached_family_context(const BiellipticFamily& fam,
                                    const RunConfig& cfg,
                                    std::string* cache_digest) {
  FamilyContext ctx;
  ctx.fam = fam;
  ctx.v = cached_curve_context(fam.curves.v, cfg, {}, cache_digest);
  ctx.e = cached_curve_context(fam.curves.e, cfg, {}, cache_digest);
  ctx.c = cached_curve_context(fam.curves.c, cfg,
                               CurvePoint::affine(cplx(1.0), cplx(0.0)),
                               cache_digest);
  return ctx;
}

namespace {

double min_root_separation(const CurveSpec& c) {
  double d = std::numeric_limits<double>::infinity();
  const cvec& r = c.roots();
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = i + 1; j < r.size(); ++j)
      d = std::min(d, std::abs(r[i] - r[j]));
  return d;
}

}  // namespace

std::vector<BiellipticFamily> verification_families(std::size_t count,
                                                    std::uint64_t seed) {
  std::vector<BiellipticFamily> out;
  out.push_back(build_family(cplx(1.0 / 3.0), cplx(2.0), cplx(3.0)));
  Rng rng(seed ^ 0xFA311E50ull);
  int guard = 0;
  while (out.size() < count) {
    if (++guard > 4000)
      fail(ErrorCode::DegenerateFamily,
           "could not sample enough verification families");
    const double alpha = rng.uniform(0.22, 0.42);
    const double beta = rng.uniform(1.55, 2.35);
    const double gamma = rng.uniform(2.70, 3.90);
    try {
      BiellipticFamily fam = build_family(alpha, beta, gamma);
      if (min_root_separation(fam.curves.v) < 5e-3) continue;
      if (min_root_separation(fam.curves.c) < 5e-3) continue;
      if (min_root_separation(fam.curves.e) < 5e-3) continue;
      out.push_back(std::move(fam));
    } catch (const Error&) {
      continue;
    }
  }
  return out;
}

namespace {

CurvePoint random_affine_point(const CurveSpec& curve, Rng& rng,
                               double branch_margin = 0.04, double r_lo = 0.3,
                               double r_hi = 1.5) {
  const double scale = curve.scale();
  cplx centroid(0.0);
  for (const cplx& e : curve.roots()) centroid += e;
  centroid /= static_cast<double>(curve.roots().size());
  for (int guard = 0; guard < 4000; ++guard) {
    const cplx x = centroid + rng.complex_annulus(r_lo * scale, r_hi * scale);
    if (curve.near_branch_point(x, branch_margin)) continue;
    cplx y = psqrt(curve.eval_n(x));
    if (rng.coin()) y = -y;
    return CurvePoint::affine(x, y);
  }
  fail(ErrorCode::DegenerateConfiguration,
       "could not sample a point clear of branch points");
}

// u on Jac(E) from a random E point, clear of E's lattice and of V's theta
// divisor along the L1 embedding.
cplx sample_u1(const FamilyContext& ctx, Rng& rng) {
  for (int guard = 0; guard < 400; ++guard) {
    const CurvePoint p = random_affine_point(ctx.e.curve, rng);
    const cplx u = ctx.e.abel->map(p)[0];
    if (ctx.e.sigma->near_divisor(cvec{u})) continue;
    if (ctx.v.sigma->near_divisor(embed_l1(ctx.fam, u))) continue;
    return u;
  }
  fail(ErrorCode::DegenerateConfiguration, "sampling u1 failed");
}

// u on Jac(C) from two random C points; optionally returns the points.
cvec sample_u2(const FamilyContext& ctx, Rng& rng,
               CurvePoint* out_p1 = nullptr, CurvePoint* out_p2 = nullptr) {
  const CurveSpec& c = ctx.c.curve;
  for (int guard = 0; guard < 400; ++guard) {
    const CurvePoint p1 = random_affine_point(c, rng);
    const CurvePoint p2 = random_affine_point(c, rng);
    // Margins from X = 0 and X = 1 keep the phi2 preimages well defined and
    // moderate: near X = 1 a preimage runs off toward infinity on V and the
    // restricted wp values blow up with it.
    const double m = 0.08 * c.scale();
    bool ok = std::abs(p1.x - p2.x) > 0.05 * c.scale();
    for (const CurvePoint* p : {&p1, &p2})
      ok = ok && std::abs(p->x) > m && std::abs(p->x - 1.0) > m;
    if (!ok) continue;
    const cvec a1 = ctx.c.abel->map(p1);
    const cvec a2 = ctx.c.abel->map(p2);
    cvec u{a1[0] + a2[0], a1[1] + a2[1]};
    if (ctx.c.sigma->near_divisor(u)) continue;
    // Reject configurations close to the closed-form denominators so the
    // comparison never samples amplified noise.
    const WpRow row = ctx.c.sigma->wp_row(u);
    const double gs = 1.0 + std::abs(row.p1[0]) + std::abs(row.p1[1]);
    if (std::abs(row.p1[1]) < 1e-3 * gs) continue;
    if (std::abs(1.0 - row.p1[0] - row.p1[1]) < 1e-3 * gs) continue;
    if (ctx.v.sigma->near_divisor(embed_l2(ctx.fam, u))) continue;
    if (out_p1) *out_p1 = p1;
    if (out_p2) *out_p2 = p2;
    return u;
  }
  fail(ErrorCode::DegenerateConfiguration, "sampling u2 failed");
}

// u on Jac(V) as the Abel image of three random points. Moderate |x| and a
// pairwise separation floor keep the inversion divisor, and with it the wp
// values, well conditioned for the addition pipeline.
cvec sample_u3(const FamilyContext& ctx, Rng& rng) {
  const double scale = ctx.v.curve.scale();
  for (int guard = 0; guard < 400; ++guard) {
    cvec u(3, cplx(0.0));
    cvec xs;
    bool ok = true;
    for (int m = 0; m < 3 && ok; ++m) {
      CurvePoint p;
      int inner = 0;
      do {
        p = random_affine_point(ctx.v.curve, rng, 0.04, 0.03, 0.35);
        ok = true;
        for (const cplx& x : xs)
          if (std::abs(p.x - x) < 0.03 * scale) ok = false;
      } while (!ok && ++inner < 50);
      if (!ok) break;
      xs.push_back(p.x);
      const cvec a = ctx.v.abel->map(p);
      for (std::size_t i = 0; i < 3; ++i) u[i] += a[i];
    }
    if (!ok) continue;
    if (ctx.v.sigma->near_divisor(u)) continue;
    return u;
  }
  fail(ErrorCode::DegenerateConfiguration, "sampling u3 failed");
}

ojson suite_theorem51(const FamilyContext& ctx, Rng& rng, std::size_t n) {
  double vs_direct = 0.0, const_resid = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    const cplx u = sample_u1(ctx, rng);
    const WpState closed = wpV_on_L1(ctx, u);
    const WpState direct =
        wp_state_direct(*ctx.v.sigma, embed_l1(ctx.fam, u));
    vs_direct = std::max(vs_direct, wp_state_distance(closed, direct));
    const cplx a2 = ctx.fam.params.alpha * ctx.fam.params.alpha;
    const_resid = std::max({const_resid, std::abs(direct.p13 + a2),
                            std::abs(direct.p15), std::abs(direct.p113),
                            std::abs(direct.p115)});
  }
  ojson j;
  j["samples"] = n;
  j["vs_direct_max"] = vs_direct;
  j["constants_max"] = const_resid;
  j["pass"] =
      vs_direct < kTolTheorem51 && const_resid < kTolTheorem51Const;
  return j;
}

ojson suite_theorem52(const FamilyContext& ctx, Rng& rng, std::size_t n) {
  double closed_vs_direct = 0.0, closed_vs_oracle = 0.0,
         oracle_vs_direct = 0.0;
  std::size_t done = 0;
  int guard = 0;
  while (done < n) {
    if (++guard > static_cast<int>(20 * n))
      fail(ErrorCode::DegenerateConfiguration,
           "could not collect genus-2 restriction samples");
    CurvePoint p1, p2;
    const cvec u = sample_u2(ctx, rng, &p1, &p2);
    std::array<CurvePoint, 4> pre;
    try {
      const auto pair1 = phi2_preimages(ctx.fam, p1);
      const auto pair2 = phi2_preimages(ctx.fam, p2);
      pre = {pair1.first, pair1.second, pair2.first, pair2.second};
      const WpState closed = wpV_on_L2(ctx, u);
      const WpState oracle = hk_oracle(ctx.fam, pre);
      const WpState direct =
          wp_state_direct(*ctx.v.sigma, embed_l2(ctx.fam, u));
      closed_vs_direct =
          std::max(closed_vs_direct, wp_state_distance(closed, direct));
      closed_vs_oracle =
          std::max(closed_vs_oracle, wp_state_distance(closed, oracle));
      oracle_vs_direct =
          std::max(oracle_vs_direct, wp_state_distance(oracle, direct));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::DegenerateConfiguration ||
          e.code() == ErrorCode::DenominatorVanishes ||
          e.code() == ErrorCode::OnThetaDivisor)
        continue;
      throw;
    }
    ++done;
  }
  ojson j;
  j["samples"] = n;
  j["closed_vs_direct_max"] = closed_vs_direct;
  j["closed_vs_oracle_max"] = closed_vs_oracle;
  j["oracle_vs_direct_max"] = oracle_vs_direct;
  j["pass"] = closed_vs_direct < kTolTheorem52 &&
              closed_vs_oracle < kTolTheorem52 &&
              oracle_vs_direct < kTolTheorem52;
  return j;
}

double wp_state_max(const WpState& s) {
  return std::max({std::abs(s.p11), std::abs(s.p13), std::abs(s.p15),
                   std::abs(s.p111), std::abs(s.p113), std::abs(s.p115)});
}

ojson suite_addition(const FamilyContext& ctx, Rng& rng, std::size_t n) {
  double vs_direct = 0.0, rebuild = 0.0;
  std::size_t done = 0, rejected = 0;
  int guard = 0;
  while (done < n) {
    if (++guard > static_cast<int>(120 * n))
      fail(ErrorCode::DegenerateConfiguration,
           "could not collect addition samples");
    const cvec u = sample_u3(ctx, rng);
    const cvec v = sample_u3(ctx, rng);
    cvec w(3);
    for (std::size_t i = 0; i < 3; ++i) w[i] = u[i] + v[i];
    if (ctx.v.sigma->near_divisor(w)) {
      ++rejected;
      continue;
    }
    try {
      const WpState su = wp_state_direct(*ctx.v.sigma, u);
      const WpState sv = wp_state_direct(*ctx.v.sigma, v);
      // Large wp values (points near the divisor or far out on the curve)
      // amplify cancellation in the degree-9 factorization; reject them so
      // the comparison measures the formula, not sampling noise.
      if (wp_state_max(su) > 250.0 || wp_state_max(sv) > 250.0) {
        ++rejected;
        continue;
      }
      const AdditionState st = addition_build(su, sv);
      const WpState sum = wp_add(ctx.fam, st);
      const WpState direct = wp_state_direct(*ctx.v.sigma, w);
      vs_direct = std::max(vs_direct, wp_state_distance(sum, direct));
      rebuild = std::max(rebuild, st.rebuild_residual);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NearDegenerate ||
          e.code() == ErrorCode::OnThetaDivisor ||
          e.code() == ErrorCode::DivisionRemainderTooLarge) {
        ++rejected;
        continue;
      }
      throw;
    }
    ++done;
  }
  ojson j;
  j["samples"] = n;
  j["rejected"] = rejected;
  j["vs_direct_max"] = vs_direct;
  j["rebuild_residual_max"] = rebuild;
  j["pass"] = vs_direct < kTolAddition;
  return j;
}

ojson suite_corollary(const FamilyContext& ctx, Rng& rng, std::size_t n) {
  double vs_direct = 0.0;
  std::size_t done = 0, rejected = 0;
  int guard = 0;
  while (done < n) {
    if (++guard > static_cast<int>(250 * n))
      fail(ErrorCode::DegenerateConfiguration,
           "could not collect corollary samples");
    const cplx u1 = sample_u1(ctx, rng);
    const cvec u35 = sample_u2(ctx, rng);
    const cvec lu = embed_l(ctx.fam, u1, u35);
    if (ctx.v.sigma->near_divisor(lu)) {
      ++rejected;
      continue;
    }
    try {
      const WpState su = wpV_on_L1(ctx, u1);
      const WpState sv = wpV_on_L2(ctx, u35);
      if (wp_state_max(su) > 250.0 || wp_state_max(sv) > 250.0) {
        ++rejected;
        continue;
      }
      const AdditionState st = addition_build(su, sv);
      const WpState composed = wp_add(ctx.fam, st);
      const WpState direct = wp_state_direct(*ctx.v.sigma, lu);
      vs_direct = std::max(vs_direct, wp_state_distance(composed, direct));
    } catch (const Error& e) {
      if (e.code() == ErrorCode::NearDegenerate ||
          e.code() == ErrorCode::OnThetaDivisor ||
          e.code() == ErrorCode::DenominatorVanishes ||
          e.code() == ErrorCode::DivisionRemainderTooLarge) {
        ++rejected;
        continue;
      }
      throw;
    }
    ++done;
  }
  ojson j;
  j["samples"] = n;
  j["rejected"] = rejected;
  j["vs_direct_max"] = vs_direct;
  j["pass"] = vs_direct < kTolCorollary;
  return j;
}

}  // namespace

ojson verify_report(const RunConfig& cfg, const VerifyOptions& opt) {
  const bool all = opt.suite == "all";
  if (!all && opt.suite != "theorem51" && opt.suite != "theorem52" &&
      opt.suite != "addition" && opt.suite != "corollary")
    fail(ErrorCode::BadInput,
         "suite must be theorem51|theorem52|addition|corollary|all");

  std::string digest;
  const auto families =
      verification_families(std::max<std::size_t>(opt.families, 1), cfg.rng_seed);

  ojson fams = ojson::array();
  bool pass = true;
  for (std::size_t fi = 0; fi < families.size(); ++fi) {
    FamilyContext ctx = cached_family_context(families[fi], cfg, &digest);
    if (opt.corrupt_l1 != 0.0) {
      ctx.fam.mats.l1(0, 0) *= (1.0 + opt.corrupt_l1);
      ctx.fam.mats.l(0, 0) = ctx.fam.mats.l1(0, 0);
    }
    Rng rng(cfg.rng_seed * 1000003ull + fi);
    ojson suites;
    if (all || opt.suite == "theorem51")
      suites["theorem51"] = suite_theorem51(ctx, rng, 20);
    if (all || opt.suite == "theorem52")
      suites["theorem52"] = suite_theorem52(ctx, rng, 20);
    if (all || opt.suite == "addition")
      suites["addition"] = suite_addition(ctx, rng, 20);
    if (all || opt.suite == "corollary")
      suites["corollary"] = suite_corollary(ctx, rng, 10);
    for (const auto& [name, suite] : suites.items()) {
      (void)name;
      pass = pass && suite.at("pass").get<bool>();
    }
    ojson f;
    f["alpha"] = complex_to_json(families[fi].params.alpha);
    f["beta"] = complex_to_json(families[fi].params.beta);
    f["gamma"] = complex_to_json(families[fi].params.gamma);
    f["suites"] = suites;
    fams.push_back(f);
  }

  ojson report;
  report["config"] = config_to_json(cfg);
  report["suite"] = opt.suite;
  report["family_count"] = families.size();
  report["period_cache_hash"] = fnv1a_hex(digest);
  report["families"] = fams;
  report["pass"] = pass;
  return report;
}

bool report_passes(const ojson& report) {
  return report.at("pass").get<bool>();
}

ojson family_record(const cplx& alpha, const cplx& beta, const cplx& gamma) {
  const BiellipticFamily fam = build_family(alpha, beta, gamma);
  ojson j = family_to_json(fam);
  const CMat lk = fam.mats.l * fam.mats.k;
  const CMat dev = lk - CMat::identity(3) * cplx(2.0);
  j["LK_minus_2I_max"] = dev.max_abs();
  return j;
}

ojson periods_record(const CurveSpec& curve, const RunConfig& cfg) {
  const PeriodData p = cached_periods(curve, cfg);
  ojson j = periods_to_json(p, curve_hash(curve, cfg.quad_tolerance));
  ojson diag;
  diag["tau_symmetry_residual"] = tau_symmetry_residual(p);
  diag["im_tau_min_eigenvalue"] = tau_min_imag_eigenvalue(p);
  int sign = 0;
  diag["legendre_residual"] = legendre_residual(p, &sign);
  diag["legendre_sign"] = sign;
  diag["cond_omega1"] = cond1(p.omega1);
  j["diagnostics"] = diag;
  return j;
}

ojson abel_record(const CurveSpec& curve, const CurvePoint& base,
                  const CurvePoint& p, const RunConfig& cfg) {
  const PeriodData periods = cached_periods(curve, cfg);
  const AbelMap abel(curve, base);
  const cvec u = abel.map(p);
  const LatticeReduction red = reduce_mod_lattice(u, periods);
  ojson j;
  j["curve_hash"] = curve_hash(curve, cfg.quad_tolerance);
  j["point"] = point_to_json(p);
  j["base"] = point_to_json(base);
  j["u"] = cvec_to_json(u);
  j["m1"] = red.m1;
  j["m2"] = red.m2;
  j["representative"] = cvec_to_json(red.representative);
  return j;
}

ojson wp_record(const CurveSpec& curve, const cvec& u, const RunConfig& cfg) {
  const PeriodData periods = cached_periods(curve, cfg);
  SigmaEvaluator ev(curve, periods, cplx(1.0), trunc_radius_for(cfg));
  ojson j;
  j["u"] = cvec_to_json(u);
  j["sigma"] = complex_to_json(ev.sigma(u));
  ojson wp;
  const std::size_t g = curve.genus();
  if (!ev.near_divisor(u)) {
    const WpRow row = ev.wp_row(u);
    for (std::size_t k = 0; k < g; ++k) {
      const std::string lbl = std::to_string(2 * k + 1);
      wp["1," + lbl] = complex_to_json(row.p1[k]);
      wp["1,1," + lbl] = complex_to_json(row.p11[k]);
    }
  } else {
    wp = nullptr;  // on the theta divisor the wp values are poles
  }
  j["wp"] = wp;
  if (cfg.precision_report) {
    const cvec z = periods.inv_two_omega1.apply(u);
    const ThetaJet jet = theta_jet(periods.character, z, periods.tau, 0,
                                   trunc_radius_for(cfg));
    ojson prec;
    prec["theta_max_term"] = jet.max_term;
    prec["divisor_margin"] = std::abs(jet.value) / jet.max_term;
    prec["trunc_radius"] = trunc_radius_for(cfg);
    j["precision"] = prec;
  }
  return j;
}

ojson reduce_record(const BiellipticFamily& fam, const std::string& kind,
                    const cvec& u, const RunConfig& cfg) {
  FamilyContext ctx = cached_family_context(fam, cfg);
  WpState closed;
  cvec lu;
  if (kind == "elliptic") {
    if (u.size() != 1) fail(ErrorCode::BadInput, "elliptic reduce takes one u value");
    closed = wpV_on_L1(ctx, u[0]);
    lu = embed_l1(fam, u[0]);
  } else if (kind == "genus2") {
    if (u.size() != 2) fail(ErrorCode::BadInput, "genus2 reduce takes two u values");
    closed = wpV_on_L2(ctx, u);
    lu = embed_l2(fam, u);
  } else if (kind == "corollary") {
    if (u.size() != 3) fail(ErrorCode::BadInput, "corollary reduce takes three u values");
    closed = corollary_pipeline(ctx, u[0], cvec{u[1], u[2]});
    lu = embed_l(fam, u[0], cvec{u[1], u[2]});
  } else {
    fail(ErrorCode::BadInput, "reduce kind must be elliptic|genus2|corollary");
  }
  const WpState direct = wp_state_direct(*ctx.v.sigma, lu);

  ojson j;
  j["kind"] = kind;
  j["u"] = cvec_to_json(u);
  j["Lu"] = cvec_to_json(lu);
  ojson vals;
  vals["1,1"] = complex_to_json(closed.p11);
  vals["1,3"] = complex_to_json(closed.p13);
  vals["1,5"] = complex_to_json(closed.p15);
  vals["1,1,1"] = complex_to_json(closed.p111);
  vals["1,1,3"] = complex_to_json(closed.p113);
  vals["1,1,5"] = complex_to_json(closed.p115);
  j["wp"] = vals;
  j["oracle_residual"] = wp_state_distance(closed, direct);
  return j;
}

ojson plotdata_record(const CurveSpec& curve, std::size_t wp_i,
                      std::size_t wp_j, const GridSpec& grid,
                      const RunConfig& cfg) {
  const std::size_t g = curve.genus();
  if (grid.coord % 2 == 0 || grid.coord > 2 * g - 1)
    fail(ErrorCode::BadInput, "grid coordinate must be an odd label");
  cvec base = grid.base;
  if (base.empty()) base.assign(g, cplx(0.0));
  if (base.size() != g) fail(ErrorCode::BadInput, "grid base has wrong size");

  ojson records = ojson::array();
  if (grid.nx > 0 && grid.ny > 0) {
    const PeriodData periods = cached_periods(curve, cfg);
    SigmaEvaluator ev(curve, periods, cplx(1.0), trunc_radius_for(cfg));
    const std::size_t idx = (grid.coord - 1) / 2;
    for (std::size_t iy = 0; iy < grid.ny; ++iy)
      for (std::size_t ix = 0; ix < grid.nx; ++ix) {
        const double re =
            grid.nx == 1 ? grid.re0
                         : grid.re0 + (grid.re1 - grid.re0) *
                               static_cast<double>(ix) /
                               static_cast<double>(grid.nx - 1);
        const double im =
            grid.ny == 1 ? grid.im0
                         : grid.im0 + (grid.im1 - grid.im0) *
                               static_cast<double>(iy) /
                               static_cast<double>(grid.ny - 1);
        cvec u = base;
        u[idx] = cplx(re, im);
        ojson rec;
        rec["u"] = cvec_to_json(u);
        if (ev.near_divisor(u)) {
          rec["value"] = nullptr;
        } else {
          try {
            rec["value"] = complex_to_json(ev.wp(wp_i, wp_j, u));
          } catch (const Error& e) {
            if (e.code() != ErrorCode::OnThetaDivisor) throw;
            rec["value"] = nullptr;
          }
        }
        records.push_back(rec);
      }
  }
  ojson j;
  j["wp_index"] = {wp_i, wp_j};
  j["coord"] = grid.coord;
  j["nx"] = grid.nx;
  j["ny"] = grid.ny;
  j["records"] = records;
  return j;
}

std::string plotdata_csv(const ojson& record) {
  std::ostringstream out;
  out << "re_u,im_u,re_value,im_value\n";
  const std::size_t coord = record.at("coord").get<std::size_t>();
  const std::size_t idx = (coord - 1) / 2;
  for (const auto& rec : record.at("records")) {
    const auto& u = rec.at("u")[idx];
    out << u[0].get<double>() << "," << u[1].get<double>() << ",";
    if (rec.at("value").is_null()) {
      out << ",";
    } else {
      out << rec.at("value")[0].get<double>() << ","
          << rec.at("value")[1].get<double>();
    }
    out << "\n";
  }
  return out.str();
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::QuadratureNoConvergence:
    case ErrorCode::IllConditioned:
    case ErrorCode::CharacteristicSearchFailed:
    case ErrorCode::TauNotPositive:
    case ErrorCode::PathThroughBranchPoint:
    case ErrorCode::UnsupportedConfiguration:
    case ErrorCode::NumericOverflow:
    case ErrorCode::DivisionRemainderTooLarge:
    case ErrorCode::SingularGMatrix:
      return 3;
    default:
      return 2;
  }
}

namespace {

cplx parse_complex(const std::string& s) {
  std::istringstream in(s);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(in >> re)) fail(ErrorCode::BadInput, "cannot parse complex value: " + s);
  if (in >> comma) {
    if (comma != ',' || !(in >> im))
      fail(ErrorCode::BadInput, "complex values are re or re,im: " + s);
  }
  return {re, im};
}

cvec parse_complex_list(const std::string& s) {
  cvec out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ';'))
    if (!item.empty()) out.push_back(parse_complex(item));
  return out;
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::BadInput, "cannot open " + path);
  return nlohmann::json::parse(in);
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output_path.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << "\n";
  } else {
    std::ofstream out(cfg.output_path);
    out << text;
    if (!text.empty() && text.back() != '\n') out << "\n";
  }
}

void emit_json(const RunConfig& cfg, const ojson& j) { emit(cfg, j.dump(2)); }

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"hyperelliptic sigma/wp functions of genus 1-3 and the "
               "bielliptic genus-3 reduction identities"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand

  RunConfig cfg;
  app.add_option("--tol-theta", cfg.theta_tolerance, "theta tail tolerance");
  app.add_option("--tol-quad", cfg.quad_tolerance, "cycle quadrature tolerance");
  app.add_option("--seed", cfg.rng_seed, "random seed for sampled suites");
  app.add_option("--out", cfg.output_path, "output file (default stdout)");
  app.add_option("--cache-dir", cfg.cache_dir,
                 "period cache directory (default $HEF_CACHE_DIR or .hef-cache)");
  app.add_flag("--precision-report", cfg.precision_report,
               "include precision diagnostics where available");

  // family
  auto* fam_cmd = app.add_subcommand("family", "build a bielliptic family");
  std::string alpha_s, beta_s, gamma_s;
  fam_cmd->add_option("--alpha", alpha_s, "alpha (re or re,im)")->required();
  fam_cmd->add_option("--beta", beta_s, "beta")->required();
  fam_cmd->add_option("--gamma", gamma_s, "gamma")->required();

  // periods
  auto* per_cmd = app.add_subcommand("periods", "compute or load period data");
  std::string per_curve, per_family, per_which = "V";
  per_cmd->add_option("--curve", per_curve, "curve JSON file");
  per_cmd->add_option("--family", per_family, "family JSON file");
  per_cmd->add_option("--which", per_which, "V|E|C when --family is used");

  // abel
  auto* abel_cmd = app.add_subcommand("abel", "Abel map of a point");
  std::string abel_curve, abel_point, abel_base;
  abel_cmd->add_option("--curve", abel_curve, "curve JSON file")->required();
  abel_cmd->add_option("--point", abel_point, "point JSON file")->required();
  abel_cmd->add_option("--base", abel_base,
                       "base point JSON file (default: infinity)");

  // wp
  auto* wp_cmd = app.add_subcommand("wp", "sigma and wp values at u");
  std::string wp_curve, wp_u;
  wp_cmd->add_option("--curve", wp_curve, "curve JSON file")->required();
  wp_cmd->add_option("--u", wp_u, "u values 're,im;re,im;...'")->required();

  // reduce
  auto* red_cmd = app.add_subcommand("reduce", "closed-form restricted wp values");
  std::string red_kind, red_family, red_u;
  red_cmd->add_option("kind", red_kind, "elliptic|genus2|corollary")->required();
  red_cmd->add_option("--family", red_family, "family JSON file")->required();
  red_cmd->add_option("--u", red_u, "u values 're,im;...'")->required();

  // verify
  auto* ver_cmd = app.add_subcommand("verify", "run verification suites");
  VerifyOptions vopt;
  ver_cmd->add_option("suite", vopt.suite,
                      "theorem51|theorem52|addition|corollary|all");
  ver_cmd->add_option("--families", vopt.families, "number of families");
  ver_cmd->add_option("--corrupt-l1", vopt.corrupt_l1,
                      "test fixture: perturb L1 before verifying")
      ->group("");

  // plotdata
  auto* plot_cmd = app.add_subcommand("plotdata", "emit a wp value grid");
  std::string plot_curve, plot_index = "1,1", plot_base;
  GridSpec grid;
  plot_cmd->add_option("--curve", plot_curve, "curve JSON file")->required();
  plot_cmd->add_option("--index", plot_index, "wp indices 'i,j' (odd labels)");
  plot_cmd->add_option("--coord", grid.coord, "varying u coordinate (odd label)");
  plot_cmd->add_option("--nx", grid.nx, "grid points (real direction)");
  plot_cmd->add_option("--ny", grid.ny, "grid points (imaginary direction)");
  plot_cmd->add_option("--re0", grid.re0, "grid start (real)");
  plot_cmd->add_option("--re1", grid.re1, "grid end (real)");
  plot_cmd->add_option("--im0", grid.im0, "grid start (imaginary)");
  plot_cmd->add_option("--im1", grid.im1, "grid end (imaginary)");
  plot_cmd->add_option("--fix", plot_base, "fixed u values 're,im;...'");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (cfg.theta_tolerance <= 0.0 || cfg.quad_tolerance <= 0.0)
      fail(ErrorCode::BadInput, "tolerances must be positive");
    if (fam_cmd->parsed()) {
      emit_json(cfg, family_record(parse_complex(alpha_s),
                                   parse_complex(beta_s),
                                   parse_complex(gamma_s)));
      return 0;
    }
    if (per_cmd->parsed()) {
      CurveSpec curve = [&] {
        if (!per_curve.empty()) return curve_from_json(load_json(per_curve));
        if (per_family.empty())
          fail(ErrorCode::BadInput, "periods needs --curve or --family");
        const BiellipticFamily fam = family_from_json(load_json(per_family));
        if (per_which == "V") return fam.curves.v;
        if (per_which == "E") return fam.curves.e;
        if (per_which == "C") return fam.curves.c;
        fail(ErrorCode::BadInput, "--which must be V, E, or C");
      }();
      emit_json(cfg, periods_record(curve, cfg));
      return 0;
    }
    if (abel_cmd->parsed()) {
      const CurveSpec curve = curve_from_json(load_json(abel_curve));
      const CurvePoint p = point_from_json(load_json(abel_point));
      const CurvePoint base = abel_base.empty()
                                  ? CurvePoint::infinity()
                                  : point_from_json(load_json(abel_base));
      emit_json(cfg, abel_record(curve, base, p, cfg));
      return 0;
    }
    if (wp_cmd->parsed()) {
      const CurveSpec curve = curve_from_json(load_json(wp_curve));
      const cvec u = parse_complex_list(wp_u);
      if (u.size() != curve.genus())
        fail(ErrorCode::BadInput, "wp needs exactly g u-values");
      emit_json(cfg, wp_record(curve, u, cfg));
      return 0;
    }
    if (red_cmd->parsed()) {
      const BiellipticFamily fam = family_from_json(load_json(red_family));
      emit_json(cfg, reduce_record(fam, red_kind, parse_complex_list(red_u), cfg));
      return 0;
    }
    if (ver_cmd->parsed()) {
      const ojson report = verify_report(cfg, vopt);
      emit_json(cfg, report);
      if (!report_passes(report)) {
        std::string first = "unknown";
        for (const auto& fam : report.at("families")) {
          for (const auto& [name, suite] : fam.at("suites").items()) {
            if (!suite.at("pass").get<bool>()) {
              first = name;
              break;
            }
          }
          if (first != "unknown") break;
        }
        std::cerr << "verification failed: first failing identity suite is '"
                  << first << "'\n";
        return 1;
      }
      return 0;
    }
    if (plot_cmd->parsed()) {
      const CurveSpec curve = curve_from_json(load_json(plot_curve));
      const cvec idx = parse_complex_list(plot_index);
      std::size_t wi = 1, wj = 1;
      if (idx.size() == 1) {
        wi = static_cast<std::size_t>(idx[0].real());
        wj = static_cast<std::size_t>(idx[0].imag());
        if (wj == 0) wj = wi;
      }
      if (!plot_base.empty()) grid.base = parse_complex_list(plot_base);
      const ojson rec = plotdata_record(curve, wi, wj, grid, cfg);
      if (!cfg.output_path.empty() &&
          cfg.output_path.size() > 4 &&
          cfg.output_path.substr(cfg.output_path.size() - 4) == ".csv") {
        if (rec.at("records").empty())
          emit(cfg, "");
        else
          emit(cfg, plotdata_csv(rec));
      } else if (rec.at("records").empty()) {
        emit(cfg, "");
      } else {
        emit_json(cfg, rec);
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

}  // namespace hef::cli
