#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ogs {

/// Dense row-major 2-D array of doubles. One-dimensional signals are stored
/// as a single row (1 x n).
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, double fill = 0.0);
  Grid(std::size_t rows, std::size_t cols, std::vector<double> values);

  /// 1 x n grid holding `values`.
  static Grid row(std::vector<double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }
  double& operator[](std::size_t i) { return values_[i]; }
  double operator[](std::size_t i) const { return values_[i]; }

  std::span<double> values() { return values_; }
  std::span<const double> values() const { return values_; }
  const std::vector<double>& vector() const { return values_; }

  auto begin() { return values_.begin(); }
  auto end() { return values_.end(); }
  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  bool same_shape(const Grid& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

using Image = Grid;

// Elementwise helpers used throughout the solvers. All require equal shapes
// and throw std::invalid_argument otherwise.
Grid operator+(const Grid& a, const Grid& b);
Grid operator-(const Grid& a, const Grid& b);
Grid operator*(double s, const Grid& a);
Grid hadamard(const Grid& a, const Grid& b);
Grid square(const Grid& a);

double dot(const Grid& a, const Grid& b);
double sum(const Grid& a);
double norm2(const Grid& a);
double norm1(const Grid& a);
bool all_finite(const Grid& a);

void require_same_shape(const Grid& a, const Grid& b, const char* what);

}  // namespace ogs
