// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#include "hef/types.hpp"

namespace hef {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MultipleRoots: return "MultipleRoots";
    case ErrorCode::BadArity: return "BadArity";
    case ErrorCode::AtBranchPoint: return "AtBranchPoint";
    case ErrorCode::AtInfinity: return "AtInfinity";
    case ErrorCode::NotFamilyCurve: return "NotFamilyCurve";
    case ErrorCode::QuadratureNoConvergence: return "QuadratureNoConvergence";
    case ErrorCode::IllConditioned: return "IllConditioned";
    case ErrorCode::CharacteristicSearchFailed:
      return "CharacteristicSearchFailed";
    case ErrorCode::TauNotPositive: return "TauNotPositive";
    case ErrorCode::OnThetaDivisor: return "OnThetaDivisor";
    case ErrorCode::PathThroughBranchPoint: return "PathThroughBranchPoint";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::DegenerateFamily: return "DegenerateFamily";
    case ErrorCode::AtPole: return "AtPole";
    case ErrorCode::DenominatorVanishes: return "DenominatorVanishes";
    case ErrorCode::NearDegenerate: return "NearDegenerate";
    case ErrorCode::DivisionRemainderTooLarge:
      return "DivisionRemainderTooLarge";
    case ErrorCode::SingularGMatrix: return "SingularGMatrix";
    case ErrorCode::UnsupportedConfiguration:
      return "UnsupportedConfiguration";
    case ErrorCode::NumericOverflow: return "NumericOverflow";
    case ErrorCode::BadInput: return "BadInput";
  }
  return "UnknownError";
}

}  // namespace hef
