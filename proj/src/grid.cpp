#include "ogs/grid.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ogs {

Grid::Grid(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

Grid::Grid(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (values_.size() != rows * cols) {
    throw std::invalid_argument("Grid: value count " + std::to_string(values_.size()) +
                                " does not match " + std::to_string(rows) + "x" +
                                std::to_string(cols));
  }
}

Grid Grid::row(std::vector<double> values) {
  const std::size_t n = values.size();
  return Grid(1, n, std::move(values));
}

void require_same_shape(const Grid& a, const Grid& b, const char* what) {
  if (!a.same_shape(b)) {
    throw std::invalid_argument(std::string(what) + ": shape mismatch (" +
                                std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                " vs " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()) + ")");
  }
}

namespace {

template <typename Op>
Grid zip(const Grid& a, const Grid& b, const char* what, Op op) {
  require_same_shape(a, b, what);
  Grid out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = op(a[i], b[i]);
  return out;
}

}  // namespace

Grid operator+(const Grid& a, const Grid& b) {
  return zip(a, b, "operator+", [](double x, double y) { return x + y; });
}

Grid operator-(const Grid& a, const Grid& b) {
  return zip(a, b, "operator-", [](double x, double y) { return x - y; });
}

Grid operator*(double s, const Grid& a) {
  Grid out = a;
  for (double& v : out) v *= s;
  return out;
}

Grid hadamard(const Grid& a, const Grid& b) {
  return zip(a, b, "hadamard", [](double x, double y) { return x * y; });
}

Grid square(const Grid& a) {
  Grid out = a;
  for (double& v : out) v *= v;
  return out;
}

double dot(const Grid& a, const Grid& b) {
  require_same_shape(a, b, "dot");
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

double sum(const Grid& a) { return std::accumulate(a.begin(), a.end(), 0.0); }

double norm2(const Grid& a) { return std::sqrt(dot(a, a)); }

double norm1(const Grid& a) {
  double s = 0.0;
  for (double v : a) s += std::abs(v);
  return s;
}

bool all_finite(const Grid& a) {
  for (double v : a) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace ogs
