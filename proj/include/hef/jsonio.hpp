// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).
//
// JSON wire formats. Complex numbers are [re, im] pairs; matrices are flat
// row-major arrays of pairs. Serialization is round-trip exact (shortest
// representation that reparses to the same double).

#ifndef HEF_JSONIO_HPP
#define HEF_JSONIO_HPP

#include <string>

#include <json.hpp>

#include "hef/bielliptic.hpp"
#include "hef/curves.hpp"
#include "hef/periods.hpp"

namespace hef {

using ojson = nlohmann::ordered_json;

ojson complex_to_json(const cplx& z);
cplx complex_from_json(const nlohmann::json& j);

ojson cvec_to_json(const cvec& v);
cvec cvec_from_json(const nlohmann::json& j);

ojson matrix_to_json(const CMat& m);  // flat row-major
CMat matrix_from_json(const nlohmann::json& j, std::size_t rows,
                      std::size_t cols);

// {"genus": g, "lambda": [[re,im],...]}
ojson curve_to_json(const CurveSpec& curve);
CurveSpec curve_from_json(const nlohmann::json& j);

// {"x": [re,im], "y": [re,im]} or "infinity"
ojson point_to_json(const CurvePoint& p);
CurvePoint point_from_json(const nlohmann::json& j);

ojson periods_to_json(const PeriodData& p, const std::string& curve_hash);
PeriodData periods_from_json(const nlohmann::json& j);

ojson family_to_json(const BiellipticFamily& fam);
BiellipticFamily family_from_json(const nlohmann::json& j);

// FNV-1a over a canonical rendering of the curve coefficients (plus the
// quadrature tolerance for cache keys).
std::string curve_hash(const CurveSpec& curve, double quad_tol);
std::string fnv1a_hex(const std::string& data);

}  // namespace hef

#endif  // HEF_JSONIO_HPP
