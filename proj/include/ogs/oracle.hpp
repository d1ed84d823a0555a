#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "ogs/grid.hpp"
#include "ogs/prox.hpp"

namespace ogs {

struct MmConfig {
  std::size_t max_iters = 20;
  bool record_trajectory = true;
  /// Group norms below this are floored before inversion.
  double norm_floor = 1e-12;
};

struct MmResult {
  Grid minimizer;
  /// Objective at z^0 = x, z^1, ..., z^max_iters (empty unless recorded).
  std::vector<double> objective_trajectory;
};

/// Majorization-minimization for the overlapping-group prox problem. Each
/// step minimizes the quadratic majorizer ||u|| <= ||u||^2 / (2||v||) + ||v||/2
/// at the current iterate, giving z <- x / (1 + spread(1/||w o z_g||) / beta).
MmResult mm_prox(const ProxProblem& problem, const MmConfig& config = {});

struct BruteForceConfig {
  /// Smoothing: ||v|| is replaced by sqrt(||v||^2 + epsilon^2).
  double epsilon = 1e-9;
  /// Stop once the Newton estimate of the remaining objective gap on the
  /// smoothed problem is at most this.
  double tolerance = 1e-14;
  std::size_t max_iters = 500;
};

struct BruteForceResult {
  Grid minimizer;
  bool converged = false;
  std::size_t iterations = 0;
  double gradient_norm = 0.0;
  /// Estimated f(z) - min f for the smoothed objective.
  double gap = 0.0;
};

/// Largest problem brute_force_prox accepts.
inline constexpr std::size_t kBruteForceMaxEntries = 64;

/// Ground-truth minimizer for tiny problems. Groups are enumerated explicitly
/// from the boundary rule (independently of group_energy/spread) and the
/// smoothed objective is minimized by damped Newton steps with backtracking,
/// with epsilon continuation from 1e-2 down to config.epsilon. A run that
/// does not reach the tolerance returns converged = false.
BruteForceResult brute_force_prox(const ProxProblem& problem,
                                  const BruteForceConfig& config = {});

struct ComparisonReport {
  double explicit_objective = 0.0;
  double mm_objective = 0.0;
  /// |f(z_explicit) - f(z_mm)| / |f(z_mm)|
  double rel_err_objective = 0.0;
  /// ||z_explicit - z_mm|| / ||z_mm||; empty when z_mm is numerically zero.
  std::optional<double> rel_err_minimizer;
  /// mean |z_explicit - z_mm|
  double mae_minimizer = 0.0;
  std::vector<double> objective_trajectory;
  /// The explicit result's objective repeated max_iters + 1 times.
  std::vector<double> explicit_trajectory;
  Regime regime = Regime::Approximate;
};

ComparisonReport compare(const ProxProblem& problem, const MmConfig& config = {});

}  // namespace ogs
