#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "ogs/grid.hpp"

namespace ogs {

using Spectrum = std::vector<std::complex<double>>;

/// 2-D real-to-complex FFT of a fixed size, backed by FFTW.
///
/// The half spectrum has rows x (cols/2 + 1) entries, row-major. Plans are
/// created with FFTW_ESTIMATE so transforms are bitwise reproducible from run
/// to run. Plan creation is serialized internally; an instance itself must not
/// be shared between threads.
class RealFft2d {
 public:
  RealFft2d(std::size_t rows, std::size_t cols);
  ~RealFft2d();
  RealFft2d(const RealFft2d&) = delete;
  RealFft2d& operator=(const RealFft2d&) = delete;
  RealFft2d(RealFft2d&& other) noexcept;
  RealFft2d& operator=(RealFft2d&& other) noexcept;

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t spectrum_cols() const { return cols_ / 2 + 1; }
  std::size_t spectrum_size() const { return rows_ * spectrum_cols(); }

  Spectrum forward(const Grid& input);
  /// Normalized inverse: inverse(forward(x)) == x up to roundoff.
  Grid inverse(const Spectrum& spectrum);

 private:
  void release();

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  double* real_ = nullptr;
  void* complex_ = nullptr;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
};

}  // namespace ogs
