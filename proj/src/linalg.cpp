// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "hef/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace hef {

CMat::CMat(std::size_t rows, std::size_t cols,
           std::initializer_list<cplx> vals)
    : rows_(rows), cols_(cols), a_(vals) {
  if (a_.size() != rows * cols)
    fail(ErrorCode::BadInput, "matrix initializer size mismatch");
}

CMat CMat::identity(std::size_t n) {
  CMat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

CMat CMat::transpose() const {
  CMat t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

CMat CMat::operator*(const CMat& rhs) const {
  if (cols_ != rhs.rows_) fail(ErrorCode::BadInput, "matmul shape mismatch");
  CMat r(rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const cplx v = (*this)(i, k);
      for (std::size_t j = 0; j < rhs.cols_; ++j) r(i, j) += v * rhs(k, j);
    }
  return r;
}

CMat CMat::operator+(const CMat& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    fail(ErrorCode::BadInput, "matrix add shape mismatch");
  CMat r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] += rhs.a_[i];
  return r;
}

CMat CMat::operator-(const CMat& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
    fail(ErrorCode::BadInput, "matrix sub shape mismatch");
  CMat r = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] -= rhs.a_[i];
  return r;
}

CMat CMat::operator*(const cplx& s) const {
  CMat r = *this;
  for (auto& v : r.a_) v *= s;
  return r;
}

cvec CMat::apply(const cvec& x) const {
  if (x.size() != cols_) fail(ErrorCode::BadInput, "matvec shape mismatch");
  cvec y(rows_, cplx(0.0));
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
  return y;
}

double CMat::max_abs() const {
  double m = 0.0;
  for (const auto& v : a_) m = std::max(m, std::abs(v));
  return m;
}

double CMat::norm1() const {
  double m = 0.0;
  for (std::size_t j = 0; j < cols_; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) s += std::abs((*this)(i, j));
    m = std::max(m, s);
  }
  return m;
}

LU::LU(const CMat& m) : lu(m), perm(m.rows()) {
  if (m.rows() != m.cols()) fail(ErrorCode::BadInput, "LU needs square matrix");
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    double best = std::abs(lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double v = std::abs(lu(i, k));
      if (v > best) {
        best = v;
        p = i;
      }
    }
    if (best == 0.0) fail(ErrorCode::IllConditioned, "singular matrix in LU");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
      std::swap(perm[k], perm[p]);
      sign = -sign;
    }
    const cplx piv = lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cplx f = lu(i, k) / piv;
      lu(i, k) = f;
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= f * lu(k, j);
    }
  }
}

cvec LU::solve(const cvec& b) const {
  const std::size_t n = lu.rows();
  if (b.size() != n) fail(ErrorCode::BadInput, "LU solve shape mismatch");
  cvec y(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx s = b[perm[i]];
    for (std::size_t j = 0; j < i; ++j) s -= lu(i, j) * y[j];
    y[i] = s;
  }
  cvec x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    cplx s = y[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= lu(ii, j) * x[j];
    x[ii] = s / lu(ii, ii);
  }
  return x;
}

CMat LU::solve(const CMat& b) const {
  const std::size_t n = lu.rows();
  CMat x(n, b.cols());
  cvec col(n);
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = 0; i < n; ++i) col[i] = b(i, j);
    cvec xi = solve(col);
    for (std::size_t i = 0; i < n; ++i) x(i, j) = xi[i];
  }
  return x;
}

cplx LU::det() const {
  cplx d(static_cast<double>(sign));
  for (std::size_t i = 0; i < lu.rows(); ++i) d *= lu(i, i);
  return d;
}

CMat inverse(const CMat& m) { return LU(m).solve(CMat::identity(m.rows())); }

cplx determinant(const CMat& m) {
  // Singular matrices have determinant zero; LU throws on them, so catch the
  // exact-singular case and report 0.
  try {
    return LU(m).det();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::IllConditioned) return cplx(0.0);
    throw;
  }
}

double cond1(const CMat& m) {
  try {
    return m.norm1() * inverse(m).norm1();
  } catch (const Error&) {
    return std::numeric_limits<double>::infinity();
  }
}

std::vector<double> symmetric_eigenvalues(const CMat& m) {
  const std::size_t n = m.rows();
  std::vector<std::vector<double>> a(n, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j).real();

  for (int sweep = 0; sweep < 64; ++sweep) {
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-30) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t =
            (theta >= 0 ? 1.0 : -1.0) /
            (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::vector<double> ev(n);
  for (std::size_t i = 0; i < n; ++i) ev[i] = a[i][i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace hef
