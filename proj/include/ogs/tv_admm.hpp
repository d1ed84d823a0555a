#pragma once

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ogs/fft.hpp"
#include "ogs/grid.hpp"
#include "ogs/group_geometry.hpp"
#include "ogs/imaging.hpp"

namespace ogs {

enum class Model { AtvL2, ItvL2, AtvL1, ItvL1 };

std::string_view to_string(Model model);
/// "atv-l2", "itv-l2", "atv-l1", "itv-l1"
Model parse_model(std::string_view text);
bool is_l1(Model model);
bool is_isotropic(Model model);

/// Periodic forward differences: gx(i,j) = f(i+1,j) - f(i,j) down the rows,
/// gy(i,j) = f(i,j+1) - f(i,j) along the columns.
struct GradientField {
  Grid gx;
  Grid gy;
};

GradientField grad(const Image& f);
/// Adjoints of the two difference operators (periodic backward differences
/// with the sign flipped): grad_x_adjoint(p)(i,j) = p(i-1,j) - p(i,j).
Image grad_x_adjoint(const Grid& p);
Image grad_y_adjoint(const Grid& p);
/// grad_x_adjoint(gx) + grad_y_adjoint(gy)
Image grad_adjoint(const GradientField& g);
/// -grad_adjoint(g)
Image div(const GradientField& g);

/// Clamp to [0, 1].
Image project_box(const Image& f);

/// c_grad (Dx^T Dx + Dy^T Dy) + c_blur H^T H + c_identity I
struct SpectralCoefficients {
  double gradient = 0.0;
  double blur = 0.0;
  double identity = 0.0;
};

/// Solves the BCCB normal equation by pointwise division in the Fourier
/// domain. kernel_eigs is the half spectrum from kernel_eigenvalues().
Image spectral_solve(const Image& rhs, const Spectrum& kernel_eigs,
                     const SpectralCoefficients& coeffs);

/// Reusable form of spectral_solve for one image size.
class SpectralSystem {
 public:
  SpectralSystem(std::size_t rows, std::size_t cols, const Spectrum& kernel_eigs,
                 const SpectralCoefficients& coeffs);

  Image solve(const Image& rhs);
  /// H f, evaluated with the same eigenvalues.
  Image blur(const Image& f);
  /// H^T f
  Image blur_adjoint(const Image& f);

 private:
  Image multiply(const Image& f, bool conjugate);

  RealFft2d fft_;
  Spectrum eigs_;
  std::vector<double> denominator_;
};

struct AdmmConfig {
  Model model = Model::AtvL2;
  double mu = 1e5;
  double beta1 = 35.0;
  double beta2 = 20.0;
  /// Only used by the L1 models.
  double beta3 = 1.0;
  double gamma = 1.618;
  GroupWeights weights = GroupWeights::ones(GroupShape(3, 3));
  /// Boundary rule for the groups over the gradient images.
  BoundaryCondition bc_gradient = BoundaryCondition::Zero;
  std::size_t max_iters = 500;
  double rel_tol = 1e-5;

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;

  /// Experiment defaults per model. L1 mu is for 30% salt-and-pepper.
  static AdmmConfig defaults(Model model);
};

struct SolveReport {
  std::size_t iterations = 0;
  /// F^0, F^1, ..., F^iterations
  std::vector<double> objective_trajectory;
  bool converged = false;
  /// Against the reference image, NaN when none was given.
  double psnr = 0.0;
  double rel_err = 0.0;
  double elapsed_seconds = 0.0;
};

struct SolveResult {
  Image restored;
  SolveReport report;
};

/// Thrown when an iterate stops being finite.
class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, std::size_t iteration)
      : std::runtime_error(what), iteration_(iteration) {}
  std::size_t iteration() const { return iteration_; }

 private:
  std::size_t iteration_;
};

struct SolveOptions {
  /// Clean image for PSNR / ReE in the report.
  const Image* reference = nullptr;
  /// Called with (k, f^k) for k = 1, 2, ...
  std::function<void(std::size_t, const Image&)> on_iterate;
};

/// The model objective on f: R_W(grad f) + mu/2 ||Hf - g||^2 (L2) or
/// R_W(grad f) + mu ||Hf - g||_1 (L1). R_W is the OGS penalty of each gradient
/// image (ATV) or of the two jointly (ITV).
double model_objective(const Image& f, const Image& g, const BlurKernel& kernel,
                       const AdmmConfig& cfg);

/// Box-constrained OGS-TV deblurring with quadratic fidelity (ATV or ITV).
SolveResult solve_l2(const Image& g, const BlurKernel& kernel, const AdmmConfig& cfg,
                     const SolveOptions& options = {});

/// Box-constrained OGS-TV deblurring with l1 fidelity (ATV or ITV).
SolveResult solve_l1(const Image& g, const BlurKernel& kernel, const AdmmConfig& cfg,
                     const SolveOptions& options = {});

/// Dispatches on cfg.model.
SolveResult solve(const Image& g, const BlurKernel& kernel, const AdmmConfig& cfg,
                  const SolveOptions& options = {});

}  // namespace ogs
