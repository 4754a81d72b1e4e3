// Copyright (c) 2026 The hef authors
//
// Licensed under the Apache License, Version 2.0 (see LICENSE or
// https://www.apache.org/licenses/LICENSE-2.0).

#ifndef HEF_QUADRATURE_HPP
#define HEF_QUADRATURE_HPP

#include <cstddef>

#include "hef/types.hpp"

namespace hef {

// Gauss-Legendre nodes/weights on [-1, 1], computed once per order by Newton
// iteration on the Legendre polynomial and cached.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

const GaussLegendre& gauss_legendre(std::size_t order);

}  // namespace hef

#endif  // HEF_QUADRATURE_HPP
