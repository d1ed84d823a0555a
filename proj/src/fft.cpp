#include "ogs/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <utility>

namespace ogs {

namespace {

// FFTW's planner is not thread-safe.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

RealFft2d::RealFft2d(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("RealFft2d: empty transform");
  real_ = fftw_alloc_real(rows * cols);
  auto* spec = fftw_alloc_complex(spectrum_size());
  complex_ = spec;
  std::lock_guard lock(planner_mutex());
  forward_plan_ = fftw_plan_dft_r2c_2d(static_cast<int>(rows), static_cast<int>(cols), real_,
                                       spec, FFTW_ESTIMATE);
  inverse_plan_ = fftw_plan_dft_c2r_2d(static_cast<int>(rows), static_cast<int>(cols), spec,
                                       real_, FFTW_ESTIMATE);
}

RealFft2d::~RealFft2d() { release(); }

RealFft2d::RealFft2d(RealFft2d&& other) noexcept
    : rows_(std::exchange(other.rows_, 0)),
      cols_(std::exchange(other.cols_, 0)),
      real_(std::exchange(other.real_, nullptr)),
      complex_(std::exchange(other.complex_, nullptr)),
      forward_plan_(std::exchange(other.forward_plan_, nullptr)),
      inverse_plan_(std::exchange(other.inverse_plan_, nullptr)) {}

RealFft2d& RealFft2d::operator=(RealFft2d&& other) noexcept {
  if (this != &other) {
    release();
    rows_ = std::exchange(other.rows_, 0);
    cols_ = std::exchange(other.cols_, 0);
    real_ = std::exchange(other.real_, nullptr);
    complex_ = std::exchange(other.complex_, nullptr);
    forward_plan_ = std::exchange(other.forward_plan_, nullptr);
    inverse_plan_ = std::exchange(other.inverse_plan_, nullptr);
  }
  return *this;
}

void RealFft2d::release() {
  if (forward_plan_ != nullptr || inverse_plan_ != nullptr) {
    std::lock_guard lock(planner_mutex());
    if (forward_plan_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
    if (inverse_plan_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
  }
  forward_plan_ = inverse_plan_ = nullptr;
  if (real_ != nullptr) fftw_free(real_);
  if (complex_ != nullptr) fftw_free(complex_);
  real_ = nullptr;
  complex_ = nullptr;
}

Spectrum RealFft2d::forward(const Grid& input) {
  if (input.rows() != rows_ || input.cols() != cols_) {
    throw std::invalid_argument("RealFft2d::forward: input shape does not match plan");
  }
  std::copy(input.begin(), input.end(), real_);
  fftw_execute(static_cast<fftw_plan>(forward_plan_));
  const auto* spec = static_cast<const fftw_complex*>(complex_);
  Spectrum out(spectrum_size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = {spec[i][0], spec[i][1]};
  return out;
}

Grid RealFft2d::inverse(const Spectrum& spectrum) {
  if (spectrum.size() != spectrum_size()) {
    throw std::invalid_argument("RealFft2d::inverse: spectrum size does not match plan");
  }
  auto* spec = static_cast<fftw_complex*>(complex_);
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    spec[i][0] = spectrum[i].real();
    spec[i][1] = spectrum[i].imag();
  }
  // c2r destroys its input; the buffer is refilled on every call.
  fftw_execute(static_cast<fftw_plan>(inverse_plan_));
  const double scale = 1.0 / static_cast<double>(rows_ * cols_);
  Grid out(rows_, cols_);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = real_[i] * scale;
  return out;
}

}  // namespace ogs
