// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#ifndef HEF_LINALG_HPP
#define HEF_LINALG_HPP

#include <cstddef>
#include <initializer_list>

#include "hef/types.hpp"

namespace hef {

// Dense complex matrix, row-major. Everything in this project is at most
// 9x9, so plain O(n^3) kernels with partial pivoting are entirely adequate.
class CMat {
 public:
  CMat() = default;
  CMat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, cplx(0.0)) {}
  CMat(std::size_t rows, std::size_t cols, std::initializer_list<cplx> vals);

  static CMat identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  const cvec& data() const { return a_; }

  CMat transpose() const;
  CMat operator*(const CMat& rhs) const;
  CMat operator+(const CMat& rhs) const;
  CMat operator-(const CMat& rhs) const;
  CMat operator*(const cplx& s) const;

  cvec apply(const cvec& x) const;

  double max_abs() const;
  double norm1() const;  // max column sum

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  cvec a_;
};

// LU with partial pivoting; throws Error(IllConditioned) on exact singularity.
struct LU {
  explicit LU(const CMat& m);
  cvec solve(const cvec& b) const;
  CMat solve(const CMat& b) const;
  cplx det() const;

  CMat lu;
  std::vector<std::size_t> perm;
  int sign = 1;
};

CMat inverse(const CMat& m);
cplx determinant(const CMat& m);

// 1-norm condition estimate (exact inverse; fine at these sizes).
double cond1(const CMat& m);

// Eigenvalues of a real symmetric matrix (passed as CMat with zero imaginary
// parts), ascending. Cyclic Jacobi; used for positive-definiteness checks.
std::vector<double> symmetric_eigenvalues(const CMat& m);

}  // namespace hef

#endif  // HEF_LINALG_HPP
