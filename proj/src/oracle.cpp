#include "ogs/oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace ogs {

MmResult mm_prox(const ProxProblem& problem, const MmConfig& config) {
  problem.validate();
  if (config.max_iters < 1) throw std::invalid_argument("mm_prox: max_iters must be >= 1");
  const Grid& w2 = problem.weights.squared();
  const ProblemDomain domain(problem.data.rows(), problem.data.cols(),
                             problem.weights.shape(), problem.bc);
  const Grid& x = problem.data;
  Grid z = x;

  MmResult result;
  if (config.record_trajectory) {
    result.objective_trajectory.reserve(config.max_iters + 1);
    result.objective_trajectory.push_back(evaluate_objective(x, problem));
  }
  for (std::size_t it = 0; it < config.max_iters; ++it) {
    const Grid energy = group_energy(square(domain.lift(z)), w2, BoundaryCondition::Periodic);
    Grid inv(energy.rows(), energy.cols());
    for (std::size_t j = 0; j < energy.size(); ++j) {
      inv[j] = 1.0 / std::max(std::sqrt(std::max(energy[j], 0.0)), config.norm_floor);
    }
    // Curvature of the majorizer per original entry.
    const Grid lambda = domain.average(spread(inv, w2, BoundaryCondition::Periodic));
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = x[i] / (1.0 + lambda[i] / problem.beta);
    if (config.record_trajectory) {
      result.objective_trajectory.push_back(evaluate_objective(z, problem));
    }
  }
  result.minimizer = std::move(z);
  return result;
}

namespace {

// One group as a sparse list of (variable index, summed squared weight).
// Reflective groups can touch the same variable twice, hence the summing.
struct SparseGroup {
  std::vector<std::size_t> index;
  std::vector<double> weight_sq;
};

// Per axis: every anchor's tap -> source variable (or nullopt), built straight
// from the boundary definitions.
struct AxisGroups {
  std::vector<std::vector<std::optional<std::size_t>>> anchors;
  double factor = 1.0;
};

AxisGroups enumerate_axis(std::size_t n, std::size_t taps, BoundaryCondition bc) {
  const auto sn = static_cast<long>(n);
  const auto before = static_cast<long>((taps - 1) / 2);
  const auto after = static_cast<long>(taps / 2);
  AxisGroups out;
  auto add_anchor = [&](long first, auto source) {
    std::vector<std::optional<std::size_t>> anchor;
    for (long k = 0; k < static_cast<long>(taps); ++k) anchor.push_back(source(first + k));
    out.anchors.push_back(std::move(anchor));
  };
  switch (bc) {
    case BoundaryCondition::Periodic:
      for (long i = 0; i < sn; ++i) {
        add_anchor(i - before, [&](long q) -> std::optional<std::size_t> {
          return static_cast<std::size_t>(((q % sn) + sn) % sn);
        });
      }
      break;
    case BoundaryCondition::Zero:
      // Every window that overlaps the signal.
      for (long i = -after; i <= sn - 1 + before; ++i) {
        add_anchor(i - before, [&](long q) -> std::optional<std::size_t> {
          if (q < 0 || q >= sn) return std::nullopt;
          return static_cast<std::size_t>(q);
        });
      }
      break;
    case BoundaryCondition::Reflective:
      if (taps == 1) {
        for (long i = 0; i < sn; ++i) {
          add_anchor(i, [](long q) -> std::optional<std::size_t> {
            return static_cast<std::size_t>(q);
          });
        }
      } else {
        // Periodic over the mirrored signal x0..x_{n-1} x_{n-1}..x0.
        const long period = 2 * sn;
        for (long p = 0; p < period; ++p) {
          add_anchor(p - before, [&](long q) -> std::optional<std::size_t> {
            const long m = ((q % period) + period) % period;
            return static_cast<std::size_t>(m < sn ? m : period - 1 - m);
          });
        }
        out.factor = 0.5;
      }
      break;
  }
  return out;
}

struct GroupSystem {
  std::vector<SparseGroup> groups;
  double scale = 1.0;
};

GroupSystem enumerate_groups(const ProxProblem& problem) {
  const Grid& w2 = problem.weights.squared();
  const std::size_t cols = problem.data.cols();
  const AxisGroups row_groups = enumerate_axis(problem.data.rows(), w2.rows(), problem.bc);
  const AxisGroups col_groups = enumerate_axis(cols, w2.cols(), problem.bc);
  GroupSystem system;
  system.scale = row_groups.factor * col_groups.factor;
  for (const auto& ra : row_groups.anchors) {
    for (const auto& ca : col_groups.anchors) {
      std::map<std::size_t, double> taps;
      for (std::size_t a = 0; a < ra.size(); ++a) {
        if (!ra[a]) continue;
        for (std::size_t b = 0; b < ca.size(); ++b) {
          if (!ca[b] || w2(a, b) == 0.0) continue;
          taps[*ra[a] * cols + *ca[b]] += w2(a, b);
        }
      }
      if (taps.empty()) continue;
      SparseGroup g;
      for (const auto& [idx, w] : taps) {
        g.index.push_back(idx);
        g.weight_sq.push_back(w);
      }
      system.groups.push_back(std::move(g));
    }
  }
  return system;
}

struct SmoothedObjective {
  const GroupSystem& system;
  const Eigen::VectorXd& x;
  double beta;
  double epsilon;

  double value(const Eigen::VectorXd& z) const {
    double penalty = 0.0;
    for (const SparseGroup& g : system.groups) {
      double q = epsilon * epsilon;
      for (std::size_t t = 0; t < g.index.size(); ++t) {
        q += g.weight_sq[t] * z[g.index[t]] * z[g.index[t]];
      }
      penalty += std::sqrt(q);
    }
    return system.scale * penalty + 0.5 * beta * (z - x).squaredNorm();
  }

  void derivatives(const Eigen::VectorXd& z, Eigen::VectorXd& grad,
                   Eigen::MatrixXd& hess) const {
    const auto n = z.size();
    grad = beta * (z - x);
    hess = beta * Eigen::MatrixXd::Identity(n, n);
    for (const SparseGroup& g : system.groups) {
      double q = epsilon * epsilon;
      for (std::size_t t = 0; t < g.index.size(); ++t) {
        q += g.weight_sq[t] * z[g.index[t]] * z[g.index[t]];
      }
      const double s = std::sqrt(q);
      const double c = system.scale;
      for (std::size_t t = 0; t < g.index.size(); ++t) {
        const auto i = static_cast<Eigen::Index>(g.index[t]);
        const double ai_zi = g.weight_sq[t] * z[i];
        grad[i] += c * ai_zi / s;
        hess(i, i) += c * g.weight_sq[t] / s;
        for (std::size_t u = 0; u < g.index.size(); ++u) {
          const auto k = static_cast<Eigen::Index>(g.index[u]);
          hess(i, k) -= c * ai_zi * g.weight_sq[u] * z[k] / (s * s * s);
        }
      }
    }
  }
};

struct NewtonOutcome {
  std::size_t iterations = 0;
  double gradient_norm = 0.0;
  /// Half the squared Newton decrement, an estimate of f(z) - min f.
  double gap = 0.0;
};

NewtonOutcome newton_minimize(const SmoothedObjective& f, Eigen::VectorXd& z, double tolerance,
                              std::size_t max_iters) {
  NewtonOutcome out;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
  for (; out.iterations < max_iters; ++out.iterations) {
    f.derivatives(z, grad, hess);
    out.gradient_norm = grad.norm();
    const Eigen::VectorXd step = -hess.ldlt().solve(grad);
    const double slope = grad.dot(step);
    out.gap = -0.5 * slope;
    if (out.gap <= tolerance) return out;
    const double f0 = f.value(z);
    double t = 1.0;
    bool accepted = false;
    while (t > 1e-20) {
      const Eigen::VectorXd trial = z + t * step;
      if (f.value(trial) <= f0 + 1e-4 * t * slope) {
        z = trial;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      // No representable decrease left: the full step is below roundoff.
      z += step;
      f.derivatives(z, grad, hess);
      out.gradient_norm = grad.norm();
      out.gap = 0.5 * grad.dot(hess.ldlt().solve(grad));
      ++out.iterations;
      return out;
    }
  }
  f.derivatives(z, grad, hess);
  out.gradient_norm = grad.norm();
  out.gap = 0.5 * grad.dot(hess.ldlt().solve(grad));
  return out;
}

}  // namespace

BruteForceResult brute_force_prox(const ProxProblem& problem, const BruteForceConfig& config) {
  problem.validate();
  if (problem.data.size() > kBruteForceMaxEntries) {
    throw std::invalid_argument("brute_force_prox: problem has " +
                                std::to_string(problem.data.size()) + " entries, limit is " +
                                std::to_string(kBruteForceMaxEntries));
  }
  if (!(config.epsilon > 0.0) || !(config.tolerance > 0.0)) {
    throw std::invalid_argument("brute_force_prox: epsilon and tolerance must be positive");
  }
  const GroupSystem system = enumerate_groups(problem);
  const auto n = static_cast<Eigen::Index>(problem.data.size());
  const Eigen::VectorXd x =
      Eigen::Map<const Eigen::VectorXd>(problem.data.values().data(), n);
  Eigen::VectorXd z = x;

  BruteForceResult result;
  for (double eps = std::max(1e-2, config.epsilon); eps > config.epsilon; eps *= 0.1) {
    const SmoothedObjective stage{system, x, problem.beta, eps};
    result.iterations += newton_minimize(stage, z, 1e-12, 100).iterations;
  }
  const SmoothedObjective final_stage{system, x, problem.beta, config.epsilon};
  const NewtonOutcome last = newton_minimize(final_stage, z, config.tolerance, config.max_iters);
  result.iterations += last.iterations;
  result.gradient_norm = last.gradient_norm;
  result.gap = last.gap;
  result.converged = last.gap <= config.tolerance;
  result.minimizer = Grid(problem.data.rows(), problem.data.cols(),
                          std::vector<double>(z.data(), z.data() + n));
  return result;
}

ComparisonReport compare(const ProxProblem& problem, const MmConfig& config) {
  const ShrinkResult shrink = ogs_shrink(problem);
  MmConfig mm_config = config;
  mm_config.record_trajectory = true;
  MmResult mm = mm_prox(problem, mm_config);

  ComparisonReport report;
  report.regime = shrink.regime;
  report.explicit_objective = shrink.objective;
  report.mm_objective = evaluate_objective(mm.minimizer, problem);
  report.rel_err_objective =
      std::abs(report.explicit_objective - report.mm_objective) / std::abs(report.mm_objective);

  const Grid diff = shrink.minimizer - mm.minimizer;
  const double mm_norm = norm2(mm.minimizer);
  // "Numerically zero" relative to the data; the ratio is meaningless there.
  if (mm_norm > 1e-8 * norm2(problem.data)) report.rel_err_minimizer = norm2(diff) / mm_norm;
  report.mae_minimizer = norm1(diff) / static_cast<double>(diff.size());
  report.objective_trajectory = std::move(mm.objective_trajectory);
  report.explicit_trajectory.assign(report.objective_trajectory.size(), shrink.objective);
  return report;
}

}  // namespace ogs
