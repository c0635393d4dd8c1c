#include "bvms/reference.hpp"

#include <cmath>
#include <stdexcept>

namespace bvms::reference {

VectorField grad(const ScalarField& u, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("reference::grad: h must be positive");
  const std::size_t m = u.rows(), n = u.cols();
  VectorField g(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      g.c1(i, j) = i + 1 < m ? (u(i + 1, j) - u(i, j)) / h : 0.0;
      g.c2(i, j) = j + 1 < n ? (u(i, j + 1) - u(i, j)) / h : 0.0;
    }
  }
  return g;
}

ScalarField div(const VectorField& q, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("reference::div: h must be positive");
  const std::size_t m = q.rows(), n = q.cols();
  ScalarField d(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double a = 0.0;
      if (i + 1 < m) a += q.c1(i, j);
      if (i > 0) a -= q.c1(i - 1, j);
      double b = 0.0;
      if (j + 1 < n) b += q.c2(i, j);
      if (j > 0) b -= q.c2(i, j - 1);
      d(i, j) = (a + b) / h;
    }
  }
  return d;
}

ScalarField pointwise_norm(const VectorField& q) {
  ScalarField out(q.rows(), q.cols());
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = std::sqrt(q.c1[k] * q.c1[k] + q.c2[k] * q.c2[k]);
  return out;
}

double dot(const ScalarField& u, const ScalarField& v) {
  require_same_shape(u, v, "reference::dot");
  double acc = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) acc += u[k] * v[k];
  return acc;
}

double norm1_of_pointwise(const VectorField& q) {
  double acc = 0.0;
  for (std::size_t k = 0; k < q.c1.size(); ++k) acc += std::sqrt(q.c1[k] * q.c1[k] + q.c2[k] * q.c2[k]);
  return acc;
}

}  // namespace bvms::reference
