// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#ifndef HEF_TYPES_HPP
#define HEF_TYPES_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace hef {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

inline constexpr double pi = 3.141592653589793238462643383279502884;
inline const cplx iu{0.0, 1.0};

// Failure taxonomy. Every throwing path in the library raises Error with one
// of these codes so callers (and the CLI) can map failures without string
// matching.
enum class ErrorCode {
  MultipleRoots,
  BadArity,
  AtBranchPoint,
  AtInfinity,
  NotFamilyCurve,
  QuadratureNoConvergence,
  IllConditioned,
  CharacteristicSearchFailed,
  TauNotPositive,
  OnThetaDivisor,
  PathThroughBranchPoint,
  DegenerateConfiguration,
  DegenerateFamily,
  AtPole,
  DenominatorVanishes,
  NearDegenerate,
  DivisionRemainderTooLarge,
  SingularGMatrix,
  UnsupportedConfiguration,
  NumericOverflow,
  BadInput,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline bool finite(const cplx& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace hef

#endif  // HEF_TYPES_HPP
