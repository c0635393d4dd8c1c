#pragma once

/// \file field.hpp
/// \brief Grid containers and the finite-difference operators on the pixel grid.
///
/// A ScalarField stores M x N samples row-major. Index (i, j) below is
/// zero-based; row i = 0 corresponds to the first pixel row of the image.
/// The forward-difference gradient sets the last row of the first component
/// and the last column of the second component to zero, and `div` is its
/// negative adjoint.
///
/// Kernels are parallelised over rows with OpenMP. Reductions accumulate one
/// partial per row and combine the partials serially, so every result is
/// bitwise identical regardless of the number of threads.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <vector>

namespace bvms {

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ScalarField {
 public:
  ScalarField() = default;
  ScalarField(std::size_t rows, std::size_t cols, double fill = 0.0);
  ScalarField(std::size_t rows, std::size_t cols, std::vector<double> data);

  /// Build from nested rows, e.g. {{0, 1}, {2, 3}}.
  static ScalarField from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }
  double& operator[](std::size_t k) noexcept { return data_[k]; }
  double operator[](std::size_t k) const noexcept { return data_[k]; }

  std::span<double> values() noexcept { return data_; }
  std::span<const double> values() const noexcept { return data_; }
  double* row(std::size_t i) noexcept { return data_.data() + i * cols_; }
  const double* row(std::size_t i) const noexcept { return data_.data() + i * cols_; }

  bool same_shape(const ScalarField& other) const noexcept {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }
  bool all_finite() const noexcept;
  void fill(double value) noexcept;

  friend bool operator==(const ScalarField&, const ScalarField&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Two components of identical shape; `c1` differences along rows (i), `c2` along columns (j).
struct VectorField {
  ScalarField c1;
  ScalarField c2;

  VectorField() = default;
  VectorField(std::size_t rows, std::size_t cols, double fill = 0.0)
      : c1(rows, cols, fill), c2(rows, cols, fill) {}
  VectorField(ScalarField first, ScalarField second);

  std::size_t rows() const noexcept { return c1.rows(); }
  std::size_t cols() const noexcept { return c1.cols(); }
  bool same_shape(const ScalarField& f) const noexcept { return c1.same_shape(f); }
  bool same_shape(const VectorField& q) const noexcept { return c1.same_shape(q.c1); }
  bool all_finite() const noexcept { return c1.all_finite() && c2.all_finite(); }

  friend bool operator==(const VectorField&, const VectorField&) = default;
};

void require_same_shape(const ScalarField& a, const ScalarField& b, const char* where);
void require_same_shape(const VectorField& a, const ScalarField& b, const char* where);

// Differential operators ----------------------------------------------------

VectorField grad(const ScalarField& u, double h);
ScalarField div(const VectorField& q, double h);
ScalarField pointwise_norm(const VectorField& q);

/// In-place variants used by the solvers. `out` is resized when its shape differs.
void grad_into(const ScalarField& u, double h, VectorField& out);
void div_into(const VectorField& q, double h, ScalarField& out);
void pointwise_norm_into(const VectorField& q, ScalarField& out);

/// max_ij |q|_ij^2, i.e. || |q|^2 ||_inf.
double max_squared_norm(const VectorField& q);

// Norms, products and elementwise helpers -------------------------------------

double norm2(const ScalarField& u);    ///< Frobenius norm
double norm1(const ScalarField& u);    ///< l1 of the vectorised field
double norm_inf(const ScalarField& u); ///< max |u_ij|
double dot(const ScalarField& u, const ScalarField& v);
double dot(const VectorField& p, const VectorField& q);
double sum(const ScalarField& u);

/// || |q| ||_1 and || |q| ||_2^2 without materialising |q|.
double norm1_of_pointwise(const VectorField& q);
double norm2sq_of_pointwise(const VectorField& q);

/// ||a - b||_inf
double max_abs_diff(const ScalarField& a, const ScalarField& b);

ScalarField elementwise_max(const ScalarField& a, double b); ///< a ∨ b
ScalarField elementwise_min(const ScalarField& a, double b); ///< a ∧ b
ScalarField clamp(const ScalarField& a, double lo, double hi);

// Linear algebra on fields, mostly for tests and drivers.
ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& a);
VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator*(double s, const VectorField& a);

}  // namespace bvms
