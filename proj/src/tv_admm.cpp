#include "ogs/tv_admm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ogs/prox.hpp"

namespace ogs {

std::string_view to_string(Model model) {
  switch (model) {
    case Model::AtvL2:
      return "atv-l2";
    case Model::ItvL2:
      return "itv-l2";
    case Model::AtvL1:
      return "atv-l1";
    case Model::ItvL1:
      return "itv-l1";
  }
  return "atv-l2";
}

Model parse_model(std::string_view text) {
  for (Model m : {Model::AtvL2, Model::ItvL2, Model::AtvL1, Model::ItvL1}) {
    if (text == to_string(m)) return m;
  }
  throw std::invalid_argument("unknown model '" + std::string(text) +
                              "' (expected atv-l2, itv-l2, atv-l1 or itv-l1)");
}

bool is_l1(Model model) { return model == Model::AtvL1 || model == Model::ItvL1; }
bool is_isotropic(Model model) { return model == Model::ItvL2 || model == Model::ItvL1; }

GradientField grad(const Image& f) {
  const std::size_t m = f.rows();
  const std::size_t n = f.cols();
  GradientField g{Grid(m, n), Grid(m, n)};
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t down = (i + 1) % m;
    for (std::size_t j = 0; j < n; ++j) {
      g.gx(i, j) = f(down, j) - f(i, j);
      g.gy(i, j) = f(i, (j + 1) % n) - f(i, j);
    }
  }
  return g;
}

Image grad_x_adjoint(const Grid& p) {
  const std::size_t m = p.rows();
  Image out(m, p.cols());
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t up = (i + m - 1) % m;
    for (std::size_t j = 0; j < p.cols(); ++j) out(i, j) = p(up, j) - p(i, j);
  }
  return out;
}

Image grad_y_adjoint(const Grid& p) {
  const std::size_t n = p.cols();
  Image out(p.rows(), n);
  for (std::size_t i = 0; i < p.rows(); ++i) {
    for (std::size_t j = 0; j < n; ++j) out(i, j) = p(i, (j + n - 1) % n) - p(i, j);
  }
  return out;
}

Image grad_adjoint(const GradientField& g) {
  require_same_shape(g.gx, g.gy, "grad_adjoint");
  return grad_x_adjoint(g.gx) + grad_y_adjoint(g.gy);
}

Image div(const GradientField& g) { return -1.0 * grad_adjoint(g); }

Image project_box(const Image& f) {
  Image out = f;
  for (double& v : out) v = std::clamp(v, 0.0, 1.0);
  return out;
}

SpectralSystem::SpectralSystem(std::size_t rows, std::size_t cols, const Spectrum& kernel_eigs,
                               const SpectralCoefficients& coeffs)
    : fft_(rows, cols), eigs_(kernel_eigs), denominator_(fft_.spectrum_size()) {
  if (eigs_.size() != fft_.spectrum_size()) {
    throw std::invalid_argument("SpectralSystem: eigenvalue array does not match the image size");
  }
  const std::size_t hc = fft_.spectrum_cols();
  for (std::size_t k = 0; k < rows; ++k) {
    const double dx = 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(k) /
                                           static_cast<double>(rows));
    for (std::size_t l = 0; l < hc; ++l) {
      const double dy = 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi * static_cast<double>(l) /
                                             static_cast<double>(cols));
      const double d = coeffs.gradient * (dx + dy) + coeffs.blur * std::norm(eigs_[k * hc + l]) +
                       coeffs.identity;
      if (!(d > 0.0)) {
        throw std::logic_error("SpectralSystem: normal equation is not positive definite");
      }
      denominator_[k * hc + l] = d;
    }
  }
}

Image SpectralSystem::solve(const Image& rhs) {
  Spectrum s = fft_.forward(rhs);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] /= denominator_[i];
  return fft_.inverse(s);
}

Image SpectralSystem::multiply(const Image& f, bool conjugate) {
  Spectrum s = fft_.forward(f);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] *= conjugate ? std::conj(eigs_[i]) : eigs_[i];
  return fft_.inverse(s);
}

Image SpectralSystem::blur(const Image& f) { return multiply(f, false); }
Image SpectralSystem::blur_adjoint(const Image& f) { return multiply(f, true); }

Image spectral_solve(const Image& rhs, const Spectrum& kernel_eigs,
                     const SpectralCoefficients& coeffs) {
  SpectralSystem system(rhs.rows(), rhs.cols(), kernel_eigs, coeffs);
  return system.solve(rhs);
}

void AdmmConfig::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw std::invalid_argument(std::string("AdmmConfig: ") + name +
                                  " must be positive and finite");
    }
  };
  positive(mu, "mu");
  positive(beta1, "beta1");
  positive(beta2, "beta2");
  if (is_l1(model)) positive(beta3, "beta3");
  if (!(gamma > 0.0 && gamma < std::numbers::phi)) {
    throw std::invalid_argument("AdmmConfig: gamma must lie in (0, (1+sqrt5)/2)");
  }
  if (max_iters == 0) throw std::invalid_argument("AdmmConfig: max_iters must be >= 1");
  positive(rel_tol, "rel_tol");
}

AdmmConfig AdmmConfig::defaults(Model model) {
  AdmmConfig cfg;
  cfg.model = model;
  switch (model) {
    case Model::AtvL2:
      break;
    case Model::ItvL2:
      cfg.beta1 = 100.0;
      break;
    case Model::AtvL1:
      cfg.mu = 180.0;
      cfg.beta1 = 80.0;
      cfg.beta2 = 2000.0;
      cfg.beta3 = 1.0;
      break;
    case Model::ItvL1:
      cfg.mu = 140.0;
      cfg.beta1 = 80.0;
      cfg.beta2 = 2000.0;
      cfg.beta3 = 1.0;
      break;
  }
  return cfg;
}

namespace {

double regularizer(const GradientField& g, const AdmmConfig& cfg) {
  if (is_isotropic(cfg.model)) {
    const Grid channels[] = {g.gx, g.gy};
    return ogs_penalty(channels, cfg.weights, cfg.bc_gradient);
  }
  return ogs_penalty(g.gx, cfg.weights, cfg.bc_gradient) +
         ogs_penalty(g.gy, cfg.weights, cfg.bc_gradient);
}

double fidelity(const Image& residual, const AdmmConfig& cfg) {
  return is_l1(cfg.model) ? cfg.mu * norm1(residual) : 0.5 * cfg.mu * dot(residual, residual);
}

// v = argmin R_W(v) + beta1/2 ||v - t||^2 for the gradient pair.
GradientField shrink_gradient(const Grid& tx, const Grid& ty, const AdmmConfig& cfg) {
  if (is_isotropic(cfg.model)) {
    const Grid channels[] = {tx, ty};
    std::vector<Grid> v = ogs_shrink_joint(channels, cfg.beta1, cfg.weights, cfg.bc_gradient);
    return {std::move(v[0]), std::move(v[1])};
  }
  const std::span<const Grid> x(&tx, 1);
  const std::span<const Grid> y(&ty, 1);
  return {std::move(ogs_shrink_joint(x, cfg.beta1, cfg.weights, cfg.bc_gradient).front()),
          std::move(ogs_shrink_joint(y, cfg.beta1, cfg.weights, cfg.bc_gradient).front())};
}

void check_inputs(const Image& g, const BlurKernel& kernel, const AdmmConfig& cfg,
                  const SolveOptions& options, bool l1) {
  cfg.validate();
  if (is_l1(cfg.model) != l1) {
    throw std::invalid_argument(std::string("model ") + std::string(to_string(cfg.model)) +
                                (l1 ? " is not an l1 model" : " is not an l2 model"));
  }
  if (g.empty() || !all_finite(g)) throw std::invalid_argument("degraded image is empty or non-finite");
  if (kernel.taps.rows() > g.rows() || kernel.taps.cols() > g.cols()) {
    throw std::invalid_argument("blur kernel larger than image");
  }
  const GroupShape shape = cfg.weights.shape();
  if (shape.rows() > g.rows() || shape.cols() > g.cols()) {
    throw std::invalid_argument("group larger than image");
  }
  if (options.reference) require_same_shape(g, *options.reference, "reference image");
}

double relative_change(double previous, double current) {
  const double delta = std::abs(current - previous);
  if (delta == 0.0) return 0.0;
  return delta / std::abs(previous);
}

void finish_report(SolveReport& report, const Image& f, const SolveOptions& options,
                   std::chrono::steady_clock::time_point start) {
  if (options.reference) {
    report.psnr = psnr(f, *options.reference);
    report.rel_err = rel_err(f, *options.reference);
  } else {
    report.psnr = std::numeric_limits<double>::quiet_NaN();
    report.rel_err = std::numeric_limits<double>::quiet_NaN();
  }
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void require_finite(const Image& f, std::size_t iteration) {
  if (!all_finite(f)) {
    throw SolverError("non-finite iterate at iteration " + std::to_string(iteration), iteration);
  }
}

}  // namespace

double model_objective(const Image& f, const Image& g, const BlurKernel& kernel,
                       const AdmmConfig& cfg) {
  require_same_shape(f, g, "model_objective");
  return regularizer(grad(f), cfg) + fidelity(blur_periodic(f, kernel) - g, cfg);
}

SolveResult solve_l2(const Image& g, const BlurKernel& kernel, const AdmmConfig& cfg,
                     const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  check_inputs(g, kernel, cfg, options, false);
  const std::size_t m = g.rows();
  const std::size_t n = g.cols();
  SpectralSystem system(m, n, kernel_eigenvalues(kernel, m, n), {cfg.beta1, cfg.mu, cfg.beta2});
  const Image htg = system.blur_adjoint(g);

  Image f = g;
  Grid lx(m, n, 0.0), ly(m, n, 0.0), l3(m, n, 0.0);
  auto objective = [&](const Image& x, const GradientField& gx) {
    return regularizer(gx, cfg) + fidelity(system.blur(x) - g, cfg);
  };

  SolveResult result;
  GradientField df = grad(f);
  result.report.objective_trajectory.push_back(objective(f, df));
  for (std::size_t k = 0; k < cfg.max_iters; ++k) {
    const GradientField v =
        shrink_gradient(df.gx + (1.0 / cfg.beta1) * lx, df.gy + (1.0 / cfg.beta1) * ly, cfg);
    const Image u = project_box(f + (1.0 / cfg.beta2) * l3);

    const Image rhs = grad_x_adjoint(cfg.beta1 * v.gx - lx) + grad_y_adjoint(cfg.beta1 * v.gy - ly) +
                      cfg.mu * htg + cfg.beta2 * u - l3;
    f = system.solve(rhs);
    require_finite(f, k + 1);
    df = grad(f);

    lx = lx - (cfg.gamma * cfg.beta1) * (v.gx - df.gx);
    ly = ly - (cfg.gamma * cfg.beta1) * (v.gy - df.gy);
    l3 = l3 - (cfg.gamma * cfg.beta2) * (u - f);

    const double value = objective(f, df);
    const double previous = result.report.objective_trajectory.back();
    result.report.objective_trajectory.push_back(value);
    result.report.iterations = k + 1;
    if (options.on_iterate) options.on_iterate(k + 1, f);
    if (relative_change(previous, value) < cfg.rel_tol) {
      result.report.converged = true;
      break;
    }
  }
  finish_report(result.report, f, options, start);
  result.restored = std::move(f);
  return result;
}

SolveResult solve_l1(const Image& g, const BlurKernel& kernel, const AdmmConfig& cfg,
                     const SolveOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  check_inputs(g, kernel, cfg, options, true);
  const std::size_t m = g.rows();
  const std::size_t n = g.cols();
  SpectralSystem system(m, n, kernel_eigenvalues(kernel, m, n), {cfg.beta1, cfg.beta2, cfg.beta3});
  const Image htg = system.blur_adjoint(g);

  Image f = g;
  Grid lx(m, n, 0.0), ly(m, n, 0.0), l3(m, n, 0.0), l4(m, n, 0.0);
  auto objective = [&](const GradientField& gx, const Image& residual) {
    return regularizer(gx, cfg) + fidelity(residual, cfg);
  };

  SolveResult result;
  GradientField df = grad(f);
  Image residual = system.blur(f) - g;
  result.report.objective_trajectory.push_back(objective(df, residual));
  for (std::size_t k = 0; k < cfg.max_iters; ++k) {
    const GradientField v =
        shrink_gradient(df.gx + (1.0 / cfg.beta1) * lx, df.gy + (1.0 / cfg.beta1) * ly, cfg);
    const Image z = soft_threshold(residual + (1.0 / cfg.beta2) * l3, cfg.beta2 / cfg.mu);
    const Image u = project_box(f + (1.0 / cfg.beta3) * l4);

    const Image rhs = grad_x_adjoint(cfg.beta1 * v.gx - lx) + grad_y_adjoint(cfg.beta1 * v.gy - ly) +
                      system.blur_adjoint(cfg.beta2 * z - l3) + cfg.beta2 * htg +
                      cfg.beta3 * u - l4;
    f = system.solve(rhs);
    require_finite(f, k + 1);
    df = grad(f);
    residual = system.blur(f) - g;

    lx = lx - (cfg.gamma * cfg.beta1) * (v.gx - df.gx);
    ly = ly - (cfg.gamma * cfg.beta1) * (v.gy - df.gy);
    l3 = l3 - (cfg.gamma * cfg.beta2) * (z - residual);
    l4 = l4 - (cfg.gamma * cfg.beta3) * (u - f);

    const double value = objective(df, residual);
    const double previous = result.report.objective_trajectory.back();
    result.report.objective_trajectory.push_back(value);
    result.report.iterations = k + 1;
    if (options.on_iterate) options.on_iterate(k + 1, f);
    if (relative_change(previous, value) < cfg.rel_tol) {
      result.report.converged = true;
      break;
    }
  }
  finish_report(result.report, f, options, start);
  result.restored = std::move(f);
  return result;
}

SolveResult solve(const Image& g, const BlurKernel& kernel, const AdmmConfig& cfg,
                  const SolveOptions& options) {
  return is_l1(cfg.model) ? solve_l1(g, kernel, cfg, options) : solve_l2(g, kernel, cfg, options);
}

}  // namespace ogs
