// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).
//
// Command-layer logic behind the hef CLI: period caching, the verification
// suites with their pinned tolerances, wp/abel/reduce record emission, and
// plot-grid emission. Kept as a library so tests can drive commands without
// spawning processes.

#ifndef HEF_CLILIB_HPP
#define HEF_CLILIB_HPP

#include <optional>
#include <string>

#include "hef/context.hpp"
#include "hef/jsonio.hpp"
#include "hef/reduction.hpp"
#include "hef/rng.hpp"

namespace hef::cli {

struct RunConfig {
  double theta_tolerance = 1e-12;
  double quad_tolerance = 1e-11;
  std::uint64_t rng_seed = 0;
  std::string output_path;  // empty: stdout
  std::string cache_dir;    // empty: $HEF_CACHE_DIR or .hef-cache
  bool precision_report = false;
};

ojson config_to_json(const RunConfig& cfg);
std::string resolve_cache_dir(const RunConfig& cfg);

// Periods with on-disk caching keyed by curve hash + quadrature tolerance.
// cache_digest, when given, accumulates the serialized period records so
// reports can embed a provenance hash.
PeriodData cached_periods(const CurveSpec& curve, const RunConfig& cfg,
                          std::string* cache_digest = nullptr);
CurveContext cached_curve_context(const CurveSpec& curve, const RunConfig& cfg,
                                  std::optional<CurvePoint> base = {},
                                  std::string* cache_digest = nullptr);
FamilyContext cached_family_context(const BiellipticFamily& fam,
                                    const RunConfig& cfg,
                                    std::string* cache_digest = nullptr);

// Reference family (alpha, beta, gamma) = (1/3, 2, 3) plus seeded real-valued
// companions whose branch points stay separated (period-bearing suites sample
// these).
std::vector<BiellipticFamily> verification_families(std::size_t count,
                                                    std::uint64_t seed);

struct VerifyOptions {
  std::string suite = "all";  // theorem51|theorem52|addition|corollary|all
  std::size_t families = 1;
  double corrupt_l1 = 0.0;  // test fixture: relative perturbation of L1
};

// Suite thresholds (relative agreement against the direct sigma evaluation).
inline constexpr double kTolTheorem51 = 1e-6;
inline constexpr double kTolTheorem51Const = 1e-8;
inline constexpr double kTolTheorem52 = 1e-6;
inline constexpr double kTolAddition = 1e-6;
inline constexpr double kTolCorollary = 1e-5;

ojson verify_report(const RunConfig& cfg, const VerifyOptions& opt);
bool report_passes(const ojson& report);

// Single-command record builders.
ojson family_record(const cplx& alpha, const cplx& beta, const cplx& gamma);
ojson periods_record(const CurveSpec& curve, const RunConfig& cfg);
ojson abel_record(const CurveSpec& curve, const CurvePoint& base,
                  const CurvePoint& p, const RunConfig& cfg);
ojson wp_record(const CurveSpec& curve, const cvec& u, const RunConfig& cfg);
ojson reduce_record(const BiellipticFamily& fam, const std::string& kind,
                    const cvec& u, const RunConfig& cfg);

struct GridSpec {
  std::size_t coord = 1;  // odd label of the varying u coordinate
  std::size_t nx = 10, ny = 10;
  double re0 = -1.0, re1 = 1.0, im0 = -1.0, im1 = 1.0;
  cvec base;  // fixed values of the other coordinates (size g, coord entry ignored)
};

ojson plotdata_record(const CurveSpec& curve, std::size_t wp_i,
                      std::size_t wp_j, const GridSpec& grid,
                      const RunConfig& cfg);
std::string plotdata_csv(const ojson& record);

// Full CLI entry point (argument parsing, dispatch, exit codes:
// 0 ok, 1 identity failure, 2 invalid input, 3 numeric non-convergence).
int run_cli(int argc, char** argv);
int exit_code_for(ErrorCode code);

}  // namespace hef::cli

#endif  // HEF_CLILIB_HPP
