#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "ogs/grid.hpp"

namespace ogs {

enum class BoundaryCondition { Periodic, Zero, Reflective };

std::string_view to_string(BoundaryCondition bc);
/// Accepts "periodic", "zero", "reflective" (also the short forms "pbc", "0bc").
BoundaryCondition parse_boundary_condition(std::string_view text);

/// Window of K1 x K2 entries. A group anchored at (i, j) covers rows
/// [i - row_before(), i + row_after()] and columns [j - col_before(),
/// j + col_after()], with before = floor((K-1)/2) and after = floor(K/2).
/// One-dimensional groups of size s are 1 x s.
class GroupShape {
 public:
  GroupShape(std::size_t rows, std::size_t cols);
  static GroupShape line(std::size_t size) { return {1, size}; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t count() const { return rows_ * cols_; }

  std::size_t row_before() const { return (rows_ - 1) / 2; }
  std::size_t row_after() const { return rows_ / 2; }
  std::size_t col_before() const { return (cols_ - 1) / 2; }
  std::size_t col_after() const { return cols_ / 2; }

  friend bool operator==(const GroupShape&, const GroupShape&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
};

/// Translation-invariant group weights. Negative inputs are stored as their
/// absolute values (the penalty only sees |w|); at least one entry must be
/// nonzero.
class GroupWeights {
 public:
  explicit GroupWeights(Grid values);
  static GroupWeights ones(const GroupShape& shape);
  static GroupWeights line(std::vector<double> values);

  const Grid& values() const { return values_; }
  const Grid& squared() const { return squared_; }
  double squared_norm() const { return squared_norm_; }
  double norm() const;
  GroupShape shape() const { return {values_.rows(), values_.cols()}; }

  /// Same penalty expressed on an odd-sized window: every even dimension gets
  /// a leading zero row/column, so [w1, w2] becomes [0, w1, w2].
  GroupWeights to_odd() const;

 private:
  Grid values_;
  Grid squared_;
  double squared_norm_ = 0.0;
};

struct Padding {
  std::size_t top = 0;
  std::size_t bottom = 0;
  std::size_t left = 0;
  std::size_t right = 0;
};

/// Maps a possibly out-of-range index onto [0, n) under `bc`. Zero boundary
/// yields nullopt outside the signal. Reflective is the whole-sample mirror
/// (edge sample repeated): ... x1 x0 | x0 x1 ... x_{n-1} | x_{n-1} ...
std::optional<std::size_t> boundary_index(std::ptrdiff_t i, std::size_t n,
                                          BoundaryCondition bc);

/// Pads `signal` on each side according to `bc`.
Grid extend(const Grid& signal, BoundaryCondition bc, const Padding& pad);

enum class WindowStrategy { Auto, Direct, Fft };

/// Windows with at least this many taps use the FFT path under Auto.
inline constexpr std::size_t kFftWindowThreshold = 64;

/// Weighted window sums: out(i, j) = sum_{a,b} weights_sq(a, b) *
/// ext(i - row_before + a, j - col_before + b), where ext is the `bc`
/// extension of signal_sq and the window shape is that of weights_sq. One
/// value per anchor inside the signal. Passing squared data gives
/// ||w o (x_ij)_g||^2.
Grid group_energy(const Grid& signal_sq, const Grid& weights_sq, BoundaryCondition bc,
                  WindowStrategy strategy = WindowStrategy::Auto);

/// Adjoint of group_energy's windowing: every anchor scatters
/// weights_sq(a, b) * values(anchor) back to the entry it covers at (a, b).
Grid spread(const Grid& values, const Grid& weights_sq, BoundaryCondition bc,
            WindowStrategy strategy = WindowStrategy::Auto);

/// The grid on which a prox problem with boundary condition `bc` becomes
/// periodic:
///  - Periodic: the signal itself.
///  - Zero: zero-padded so that every window overlapping the signal has its
///    own anchor (row_after/col_after before, row_before/col_before after).
///  - Reflective: whole-sample symmetric extension to twice the length along
///    every axis the window spans; the objective there counts each original
///    term 2^k times, undone by objective_scale().
class ProblemDomain {
 public:
  ProblemDomain(std::size_t rows, std::size_t cols, const GroupShape& shape,
                BoundaryCondition bc);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t lifted_rows() const { return lifted_rows_; }
  std::size_t lifted_cols() const { return lifted_cols_; }
  BoundaryCondition boundary() const { return bc_; }
  double objective_scale() const { return scale_; }

  Grid lift(const Grid& x) const;
  Grid restrict(const Grid& lifted) const;
  /// Adjoint of lift.
  Grid fold(const Grid& lifted) const;
  /// Mean over the copies of each entry, objective_scale() * fold(lifted).
  /// A per-entry quantity computed on the lifted grid (a gain, a majorizer
  /// weight) comes back to the original entries this way.
  Grid average(const Grid& lifted) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  BoundaryCondition bc_;
  Padding pad_;
  std::size_t lifted_rows_;
  std::size_t lifted_cols_;
  double scale_ = 1.0;
};

}  // namespace ogs
