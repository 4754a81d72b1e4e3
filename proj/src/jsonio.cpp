// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "hef/jsonio.hpp"

#include <cinttypes>
#include <cstdio>

namespace hef {

ojson complex_to_json(const cplx& z) { return ojson::array({z.real(), z.imag()}); }

cplx complex_from_json(const nlohmann::json& j) {
  if (!j.is_array() || j.size() != 2)
    fail(ErrorCode::BadInput, "complex value must be a [re, im] pair");
  return {j[0].get<double>(), j[1].get<double>()};
}

ojson cvec_to_json(const cvec& v) {
  ojson arr = ojson::array();
  for (const cplx& z : v) arr.push_back(complex_to_json(z));
  return arr;
}

cvec cvec_from_json(const nlohmann::json& j) {
  if (!j.is_array()) fail(ErrorCode::BadInput, "expected array of complex pairs");
  cvec v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(complex_from_json(e));
  return v;
}

ojson matrix_to_json(const CMat& m) {
  ojson arr = ojson::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      arr.push_back(complex_to_json(m(i, j)));
  return arr;
}

CMat matrix_from_json(const nlohmann::json& j, std::size_t rows,
                      std::size_t cols) {
  if (!j.is_array() || j.size() != rows * cols)
    fail(ErrorCode::BadInput, "matrix json has the wrong number of entries");
  CMat m(rows, cols);
  std::size_t k = 0;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = complex_from_json(j[k++]);
  return m;
}

ojson curve_to_json(const CurveSpec& curve) {
  ojson j;
  j["genus"] = curve.genus();
  j["lambda"] = cvec_to_json(curve.lambda());
  return j;
}

CurveSpec curve_from_json(const nlohmann::json& j) {
  if (!j.contains("genus") || !j.contains("lambda"))
    fail(ErrorCode::BadInput, "curve json needs 'genus' and 'lambda'");
  const std::size_t g = j["genus"].get<std::size_t>();
  return curve_from_coefficients(g, cvec_from_json(j["lambda"]));
}

ojson point_to_json(const CurvePoint& p) {
  if (p.at_infinity) return ojson("infinity");
  ojson j;
  j["x"] = complex_to_json(p.x);
  j["y"] = complex_to_json(p.y);
  return j;
}

CurvePoint point_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() == "infinity") return CurvePoint::infinity();
    fail(ErrorCode::BadInput, "point string must be \"infinity\"");
  }
  if (!j.contains("x") || !j.contains("y"))
    fail(ErrorCode::BadInput, "point json needs 'x' and 'y'");
  return CurvePoint::affine(complex_from_json(j["x"]),
                            complex_from_json(j["y"]));
}

ojson periods_to_json(const PeriodData& p, const std::string& hash) {
  ojson j;
  j["genus"] = p.genus;
  j["quad_tol"] = p.quad_tol;
  j["curve_hash"] = hash;
  j["omega1"] = matrix_to_json(p.omega1);
  j["omega2"] = matrix_to_json(p.omega2);
  j["eta1"] = matrix_to_json(p.eta1);
  j["eta2"] = matrix_to_json(p.eta2);
  j["tau"] = matrix_to_json(p.tau);
  j["char_delta1"] = p.character.delta1;
  j["char_delta2"] = p.character.delta2;
  return j;
}

PeriodData periods_from_json(const nlohmann::json& j) {
  PeriodData p;
  p.genus = j.at("genus").get<std::size_t>();
  p.quad_tol = j.at("quad_tol").get<double>();
  const std::size_t g = p.genus;
  p.omega1 = matrix_from_json(j.at("omega1"), g, g);
  p.omega2 = matrix_from_json(j.at("omega2"), g, g);
  p.eta1 = matrix_from_json(j.at("eta1"), g, g);
  p.eta2 = matrix_from_json(j.at("eta2"), g, g);
  p.tau = matrix_from_json(j.at("tau"), g, g);
  p.character.delta1 = j.at("char_delta1").get<std::vector<double>>();
  p.character.delta2 = j.at("char_delta2").get<std::vector<double>>();
  p.refresh_derived();
  return p;
}

ojson family_to_json(const BiellipticFamily& fam) {
  ojson j;
  j["alpha"] = complex_to_json(fam.params.alpha);
  j["beta"] = complex_to_json(fam.params.beta);
  j["gamma"] = complex_to_json(fam.params.gamma);
  j["k1"] = complex_to_json(fam.params.k1);
  j["k2"] = complex_to_json(fam.params.k2);
  j["a"] = complex_to_json(fam.params.a);
  j["b"] = complex_to_json(fam.params.b);
  j["c"] = complex_to_json(fam.params.c);
  j["V"] = curve_to_json(fam.curves.v);
  j["E"] = curve_to_json(fam.curves.e);
  j["C"] = curve_to_json(fam.curves.c);
  j["H_roots"] = cvec_to_json(fam.curves.h_roots);
  j["W_roots"] = cvec_to_json(fam.curves.w_roots);
  j["K1"] = matrix_to_json(fam.mats.k1);
  j["K2"] = matrix_to_json(fam.mats.k2);
  j["L1"] = matrix_to_json(fam.mats.l1);
  j["L2"] = matrix_to_json(fam.mats.l2);
  j["degenerate_reduction_possible"] = fam.degenerate_reduction_possible;
  return j;
}

BiellipticFamily family_from_json(const nlohmann::json& j) {
  return build_family(complex_from_json(j.at("alpha")),
                      complex_from_json(j.at("beta")),
                      complex_from_json(j.at("gamma")));
}

std::string fnv1a_hex(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

std::string curve_hash(const CurveSpec& curve, double quad_tol) {
  std::string s = "g=" + std::to_string(curve.genus()) + ";";
  char buf[80];
  for (const cplx& l : curve.lambda()) {
    std::snprintf(buf, sizeof(buf), "%.17g,%.17g;", l.real(), l.imag());
    s += buf;
  }
  std::snprintf(buf, sizeof(buf), "tol=%.17g", quad_tol);
  s += buf;
  return fnv1a_hex(s);
}

}  // namespace hef
