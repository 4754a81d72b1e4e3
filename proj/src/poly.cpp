// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "hef/poly.hpp"

#include <algorithm>
#include <cmath>

namespace hef {

void sort_lex(cvec& v) {
  std::sort(v.begin(), v.end(), [](const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
}

namespace poly {

cplx eval(const cvec& c, const cplx& x) {
  cplx v(0.0);
  for (std::size_t i = c.size(); i-- > 0;) v = v * x + c[i];
  return v;
}

cvec derivative(const cvec& c) {
  if (c.size() <= 1) return cvec{cplx(0.0)};
  cvec d(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i)
    d[i - 1] = c[i] * static_cast<double>(i);
  return d;
}

cvec from_roots(const cvec& roots) {
  cvec c{cplx(1.0)};
  for (const cplx& r : roots) {
    c.push_back(cplx(0.0));
    for (std::size_t i = c.size(); i-- > 1;) c[i] = c[i - 1];
    c[0] = cplx(0.0);
    for (std::size_t i = 0; i + 1 < c.size(); ++i) c[i] -= r * c[i + 1];
  }
  return c;
}

cvec multiply(const cvec& a, const cvec& b) {
  cvec c(a.size() + b.size() - 1, cplx(0.0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

void divide(const cvec& a, const cvec& b, cvec& q, cvec& r) {
  if (b.empty() || std::abs(b.back()) == 0.0)
    fail(ErrorCode::BadInput, "division by polynomial with zero leading term");
  r = a;
  if (a.size() < b.size()) {
    q = cvec{cplx(0.0)};
    return;
  }
  q.assign(a.size() - b.size() + 1, cplx(0.0));
  for (std::size_t k = q.size(); k-- > 0;) {
    const cplx f = r[k + b.size() - 1] / b.back();
    q[k] = f;
    for (std::size_t j = 0; j < b.size(); ++j) r[k + j] -= f * b[j];
  }
  r.resize(b.size() - 1);
  if (r.empty()) r.push_back(cplx(0.0));
}

namespace {

// One explicit shifted-QR sweep on an upper Hessenberg block [0..m] using
// Givens rotations; the Hessenberg form is preserved.
void qr_sweep(std::vector<cvec>& h, std::size_t m, const cplx& shift) {
  const std::size_t n = m + 1;
  std::vector<cplx> cs(n), sn(n);
  for (std::size_t i = 0; i < n; ++i) h[i][i] -= shift;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const cplx a = h[k][k];
    const cplx b = h[k + 1][k];
    const double r = std::sqrt(std::norm(a) + std::norm(b));
    if (r == 0.0) {
      cs[k] = 1.0;
      sn[k] = 0.0;
      continue;
    }
    cs[k] = a / r;
    sn[k] = b / r;
    for (std::size_t j = k; j < n; ++j) {
      const cplx t1 = h[k][j], t2 = h[k + 1][j];
      h[k][j] = std::conj(cs[k]) * t1 + std::conj(sn[k]) * t2;
      h[k + 1][j] = -sn[k] * t1 + cs[k] * t2;
    }
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const std::size_t top = std::min(k + 2, n - 1);
    for (std::size_t i = 0; i <= top; ++i) {
      const cplx t1 = h[i][k], t2 = h[i][k + 1];
      h[i][k] = t1 * cs[k] + t2 * sn[k];
      h[i][k + 1] = -t1 * std::conj(sn[k]) + t2 * std::conj(cs[k]);
    }
  }
  for (std::size_t i = 0; i < n; ++i) h[i][i] += shift;
}

cplx wilkinson_shift(const std::vector<cvec>& h, std::size_t m) {
  const cplx a = h[m - 1][m - 1], b = h[m - 1][m];
  const cplx c = h[m][m - 1], d = h[m][m];
  const cplx tr = a + d;
  const cplx disc = std::sqrt(tr * tr - 4.0 * (a * d - b * c));
  const cplx l1 = (tr + disc) / 2.0, l2 = (tr - disc) / 2.0;
  return std::abs(l1 - d) < std::abs(l2 - d) ? l1 : l2;
}

}  // namespace

cvec roots(const cvec& coeffs) {
  // Trim trailing (leading-coefficient) zeros.
  cvec c = coeffs;
  while (c.size() > 1 && std::abs(c.back()) == 0.0) c.pop_back();
  if (c.size() <= 1) fail(ErrorCode::BadInput, "roots of constant polynomial");
  const std::size_t n = c.size() - 1;

  // Companion matrix of the monic normalization, upper Hessenberg.
  std::vector<cvec> h(n, cvec(n, cplx(0.0)));
  for (std::size_t i = 0; i < n; ++i) h[i][n - 1] = -c[i] / c[n];
  for (std::size_t i = 1; i < n; ++i) h[i][i - 1] = 1.0;

  cvec out;
  out.reserve(n);
  std::size_t m = n - 1;
  int iter = 0;
  while (true) {
    // Deflate converged eigenvalues off the bottom.
    while (m > 0) {
      const double sub = std::abs(h[m][m - 1]);
      const double scale = std::abs(h[m][m]) + std::abs(h[m - 1][m - 1]);
      if (sub <= 1e-15 * (scale + 1e-300)) {
        out.push_back(h[m][m]);
        --m;
        iter = 0;
      } else {
        break;
      }
    }
    if (m == 0) {
      out.push_back(h[0][0]);
      break;
    }
    if (++iter > 200)
      fail(ErrorCode::QuadratureNoConvergence,
           "companion QR did not converge");
    cplx shift = wilkinson_shift(h, m);
    if (iter % 17 == 0) shift += std::abs(h[m][m - 1]);  // exceptional shift
    qr_sweep(h, m, shift);
  }

  // One Newton polish step against the original polynomial.
  const cvec d = derivative(c);
  for (auto& r : out) {
    const cplx dp = eval(d, r);
    if (std::abs(dp) > 1e-300) {
      const cplx step = eval(c, r) / dp;
      if (std::abs(step) < 1.0) r -= step;
    }
  }
  sort_lex(out);
  return out;
}

}  // namespace poly
}  // namespace hef
