#pragma once

// Serial, index-by-index versions of the grid kernels. They follow the
// defining difference formulas literally and are kept to cross-check the
// OpenMP kernels in field.cpp and to serve as the benchmark baseline.

#include "bvms/field.hpp"

namespace bvms::reference {

VectorField grad(const ScalarField& u, double h);
ScalarField div(const VectorField& q, double h);
ScalarField pointwise_norm(const VectorField& q);
double dot(const ScalarField& u, const ScalarField& v);
double norm1_of_pointwise(const VectorField& q);

}  // namespace bvms::reference
