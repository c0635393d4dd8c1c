#include "bvms/field.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace bvms {

ScalarField::ScalarField(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols) {
  if (rows == 0 || cols == 0) throw ShapeError("ScalarField: rows and cols must be >= 1");
  data_.assign(rows * cols, fill);
}

ScalarField::ScalarField(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (rows == 0 || cols == 0) throw ShapeError("ScalarField: rows and cols must be >= 1");
  if (data_.size() != rows * cols) throw ShapeError("ScalarField: data length != rows*cols");
}

ScalarField ScalarField::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t m = rows.size();
  const std::size_t n = m ? rows.begin()->size() : 0;
  std::vector<double> data;
  data.reserve(m * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw ShapeError("ScalarField::from_rows: ragged rows");
    data.insert(data.end(), r.begin(), r.end());
  }
  return ScalarField(m, n, std::move(data));
}

bool ScalarField::all_finite() const noexcept {
  return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

void ScalarField::fill(double value) noexcept { std::fill(data_.begin(), data_.end(), value); }

VectorField::VectorField(ScalarField first, ScalarField second)
    : c1(std::move(first)), c2(std::move(second)) {
  if (!c1.same_shape(c2)) throw ShapeError("VectorField: component shapes differ");
}

void require_same_shape(const ScalarField& a, const ScalarField& b, const char* where) {
  if (!a.same_shape(b)) throw ShapeError(std::string(where) + ": shape mismatch");
}

void require_same_shape(const VectorField& a, const ScalarField& b, const char* where) {
  if (!a.same_shape(b)) throw ShapeError(std::string(where) + ": shape mismatch");
}

namespace {

void require_positive_h(double h, const char* where) {
  if (!(h > 0.0) || !std::isfinite(h))
    throw std::invalid_argument(std::string(where) + ": grid spacing h must be positive");
}

void reshape(ScalarField& f, std::size_t m, std::size_t n) {
  if (f.rows() != m || f.cols() != n) f = ScalarField(m, n);
}

}  // namespace

void grad_into(const ScalarField& u, double h, VectorField& out) {
  require_positive_h(h, "grad");
  const std::size_t m = u.rows(), n = u.cols();
  reshape(out.c1, m, n);
  reshape(out.c2, m, n);
  const double inv_h = 1.0 / h;
  parallel_rows(m, [&](std::size_t i) {
    const double* ui = u.row(i);
    double* g1 = out.c1.row(i);
    double* g2 = out.c2.row(i);
    if (i + 1 < m) {
      const double* un = u.row(i + 1);
      for (std::size_t j = 0; j < n; ++j) g1[j] = (un[j] - ui[j]) * inv_h;
    } else {
      for (std::size_t j = 0; j < n; ++j) g1[j] = 0.0;
    }
    for (std::size_t j = 0; j + 1 < n; ++j) g2[j] = (ui[j + 1] - ui[j]) * inv_h;
    g2[n - 1] = 0.0;
  });
}

// Backward differences: first row keeps q, last row/column drops the (zero) boundary entry.
void div_into(const VectorField& q, double h, ScalarField& out) {
  require_positive_h(h, "div");
  const std::size_t m = q.rows(), n = q.cols();
  reshape(out, m, n);
  const double inv_h = 1.0 / h;
  parallel_rows(m, [&](std::size_t i) {
    const double* q1 = q.c1.row(i);
    const double* q1p = i > 0 ? q.c1.row(i - 1) : nullptr;
    const double* q2 = q.c2.row(i);
    double* d = out.row(i);
    for (std::size_t j = 0; j < n; ++j) {
      double a = 0.0;
      if (i + 1 < m) a += q1[j];
      if (i > 0) a -= q1p[j];
      double b = 0.0;
      if (j + 1 < n) b += q2[j];
      if (j > 0) b -= q2[j - 1];
      d[j] = (a + b) * inv_h;
    }
  });
}

void pointwise_norm_into(const VectorField& q, ScalarField& out) {
  const std::size_t m = q.rows(), n = q.cols();
  reshape(out, m, n);
  parallel_rows(m, [&](std::size_t i) {
    const double* a = q.c1.row(i);
    const double* b = q.c2.row(i);
    double* o = out.row(i);
    for (std::size_t j = 0; j < n; ++j) o[j] = std::sqrt(a[j] * a[j] + b[j] * b[j]);
  });
}

VectorField grad(const ScalarField& u, double h) {
  VectorField out(u.rows(), u.cols());
  grad_into(u, h, out);
  return out;
}

ScalarField div(const VectorField& q, double h) {
  ScalarField out(q.rows(), q.cols());
  div_into(q, h, out);
  return out;
}

ScalarField pointwise_norm(const VectorField& q) {
  ScalarField out(q.rows(), q.cols());
  pointwise_norm_into(q, out);
  return out;
}

double max_squared_norm(const VectorField& q) {
  return reduce_rows_max(q.rows(), [&](std::size_t i) {
    const double* a = q.c1.row(i);
    const double* b = q.c2.row(i);
    double best = 0.0;
    for (std::size_t j = 0; j < q.cols(); ++j) best = std::max(best, a[j] * a[j] + b[j] * b[j]);
    return best;
  });
}

double norm2(const ScalarField& u) { return std::sqrt(dot(u, u)); }

double norm1(const ScalarField& u) {
  return reduce_rows_sum(u.rows(), [&](std::size_t i) {
    const double* r = u.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < u.cols(); ++j) acc += std::abs(r[j]);
    return acc;
  });
}

double norm_inf(const ScalarField& u) {
  return reduce_rows_max(u.rows(), [&](std::size_t i) {
    const double* r = u.row(i);
    double best = 0.0;
    for (std::size_t j = 0; j < u.cols(); ++j) best = std::max(best, std::abs(r[j]));
    return best;
  });
}

double dot(const ScalarField& u, const ScalarField& v) {
  require_same_shape(u, v, "dot");
  return reduce_rows_sum(u.rows(), [&](std::size_t i) {
    const double* a = u.row(i);
    const double* b = v.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < u.cols(); ++j) acc += a[j] * b[j];
    return acc;
  });
}

double dot(const VectorField& p, const VectorField& q) {
  if (!p.same_shape(q)) throw ShapeError("dot: shape mismatch");
  return dot(p.c1, q.c1) + dot(p.c2, q.c2);
}

double sum(const ScalarField& u) {
  return reduce_rows_sum(u.rows(), [&](std::size_t i) {
    const double* r = u.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < u.cols(); ++j) acc += r[j];
    return acc;
  });
}

double norm1_of_pointwise(const VectorField& q) {
  return reduce_rows_sum(q.rows(), [&](std::size_t i) {
    const double* a = q.c1.row(i);
    const double* b = q.c2.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < q.cols(); ++j) acc += std::sqrt(a[j] * a[j] + b[j] * b[j]);
    return acc;
  });
}

double norm2sq_of_pointwise(const VectorField& q) {
  return reduce_rows_sum(q.rows(), [&](std::size_t i) {
    const double* a = q.c1.row(i);
    const double* b = q.c2.row(i);
    double acc = 0.0;
    for (std::size_t j = 0; j < q.cols(); ++j) acc += a[j] * a[j] + b[j] * b[j];
    return acc;
  });
}

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
  require_same_shape(a, b, "max_abs_diff");
  return reduce_rows_max(a.rows(), [&](std::size_t i) {
    const double* x = a.row(i);
    const double* y = b.row(i);
    double best = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) best = std::max(best, std::abs(x[j] - y[j]));
    return best;
  });
}

namespace {

template <class F>
ScalarField map(const ScalarField& a, F&& f) {
  ScalarField out(a.rows(), a.cols());
  parallel_rows(a.rows(), [&](std::size_t i) {
    const double* x = a.row(i);
    double* o = out.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) o[j] = f(x[j]);
  });
  return out;
}

template <class F>
ScalarField zip(const ScalarField& a, const ScalarField& b, F&& f) {
  require_same_shape(a, b, "elementwise op");
  ScalarField out(a.rows(), a.cols());
  parallel_rows(a.rows(), [&](std::size_t i) {
    const double* x = a.row(i);
    const double* y = b.row(i);
    double* o = out.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) o[j] = f(x[j], y[j]);
  });
  return out;
}

}  // namespace

ScalarField elementwise_max(const ScalarField& a, double b) {
  return map(a, [b](double x) { return std::max(x, b); });
}

ScalarField elementwise_min(const ScalarField& a, double b) {
  return map(a, [b](double x) { return std::min(x, b); });
}

ScalarField clamp(const ScalarField& a, double lo, double hi) {
  if (lo > hi) throw std::invalid_argument("clamp: lo > hi");
  return map(a, [lo, hi](double x) { return std::clamp(x, lo, hi); });
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  return zip(a, b, [](double x, double y) { return x + y; });
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  return zip(a, b, [](double x, double y) { return x - y; });
}

ScalarField operator*(double s, const ScalarField& a) {
  return map(a, [s](double x) { return s * x; });
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  return VectorField(a.c1 + b.c1, a.c2 + b.c2);
}

VectorField operator*(double s, const VectorField& a) { return VectorField(s * a.c1, s * a.c2); }

}  // namespace bvms
