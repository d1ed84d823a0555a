#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "ogs/fft.hpp"
#include "ogs/grid.hpp"

namespace ogs {

enum class KernelKind { Average, Gaussian, Delta };

/// Normalized point-spread function with an odd number of rows and columns.
/// The center tap is at ((rows-1)/2, (cols-1)/2).
struct BlurKernel {
  Grid taps;
  KernelKind kind = KernelKind::Delta;
  std::size_t size = 1;
  double sigma = 0.0;
};

BlurKernel make_average_kernel(std::size_t m);
BlurKernel make_gaussian_kernel(std::size_t size, double sigma);
BlurKernel make_delta_kernel();

/// "average:9", "gaussian:7:5" or "delta".
BlurKernel parse_kernel(std::string_view text);
std::string to_string(const BlurKernel& kernel);

/// Circular convolution, i.e. H f under periodic boundaries.
Image blur_periodic(const Image& img, const BlurKernel& kernel);
/// Circular correlation, the adjoint H^T.
Image blur_adjoint(const Image& img, const BlurKernel& kernel);

/// Eigenvalues of the BCCB matrix H: the DFT of the kernel zero-padded to
/// rows x cols with its center moved to (0, 0). Half-spectrum layout of
/// RealFft2d.
Spectrum kernel_eigenvalues(const BlurKernel& kernel, std::size_t rows, std::size_t cols);

/// Adds zero-mean Gaussian noise scaled so that
/// 20 log10(||img|| / ||noise||) == bsnr_db exactly. An infinite bsnr adds nothing.
Image add_gaussian_noise(const Image& img, double bsnr_db, std::uint64_t seed);

/// Each pixel independently becomes 0 with probability level/2, 1 with
/// probability level/2, and is otherwise kept.
Image add_salt_pepper(const Image& img, double level, std::uint64_t seed);

/// 10 log10(m n / ||f - ref||^2) with a unit peak; +inf when f == ref.
double psnr(const Image& f, const Image& ref);
/// ||f - ref|| / ||ref||
double rel_err(const Image& f, const Image& ref);
/// mean |f - ref|
double mae(const Image& f, const Image& ref);

/// 20 log10(||signal|| / ||noise||)
double bsnr(const Image& signal, const Image& noise);

class ImageIoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 8-bit grayscale PGM (P5) or PNG, picked by extension. Pixels are mapped
/// to [0, 1] by dividing by 255.
Image read_image(const std::filesystem::path& path);
/// Values are clamped to [0, 1] and rounded to the nearest of 256 levels.
void write_image(const std::filesystem::path& path, const Image& img);

/// Deterministic piecewise-constant test scene with levels in [0.1, 0.9]:
/// flat background with rectangles, a disc, a triangle and a ring.
Image synthetic_phantom(std::size_t rows, std::size_t cols);

}  // namespace ogs
