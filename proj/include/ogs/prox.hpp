#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "ogs/grid.hpp"
#include "ogs/group_geometry.hpp"

namespace ogs {

/// Which explicit formula combines the per-group shrinkages.
///  - Averaged: z_i = x_i * sum_j max(w_k^2/C - w_k^2/(beta ||w o x_j||), 0)  (default)
///  - Scaled:   z_i = x_i * max(1 - (1/beta) sum_j w_k^2/||w o x_j||, 0)
/// where j runs over the groups containing i, k is i's position in group j
/// and C = ||w||^2. Both agree when beta is very small or very large; the
/// averaged form is the better approximation in between.
enum class ShrinkFormula { Averaged, Scaled };

enum class Regime { ExactSmallBeta, ExactLargeBeta, Approximate };

std::string_view to_string(Regime regime);

/// beta >= kLargeBetaFactor * ||w|| / sqrt(s) is treated as "large".
inline constexpr double kLargeBetaFactor = 30.0;

/// min_z ||z||_{w,2,1} + beta/2 ||z - x||^2 over a 1-D signal (1 x n) or a
/// matrix, with groups shaped like `weights`.
struct ProxProblem {
  Grid data;
  double beta = 1.0;
  GroupWeights weights = GroupWeights::line({1.0});
  BoundaryCondition bc = BoundaryCondition::Zero;

  /// Throws std::invalid_argument on beta <= 0, non-finite data or a group
  /// larger than the data.
  void validate() const;
};

struct ShrinkResult {
  Grid minimizer;
  double objective = 0.0;
  Regime regime = Regime::Approximate;
};

/// sgn(x) * max(|x| - 1/beta, 0), elementwise.
Grid soft_threshold(const Grid& x, double beta);
double soft_threshold(double x, double beta);

/// (x / ||x||) * max(||x|| - 1/beta, 0); zero when x is zero.
std::vector<double> group_threshold(std::span<const double> x, double beta);

/// Labels beta against ||w|| / sqrt(s), s being the number of group entries.
Regime classify_regime(double beta, const GroupWeights& weights);

/// Explicit (non-iterative) overlapping-group shrinkage.
ShrinkResult ogs_shrink(const ProxProblem& problem,
                        ShrinkFormula formula = ShrinkFormula::Averaged);

/// sum over groups of ||w o z_g|| + beta/2 ||z - x||^2 under problem.bc.
double evaluate_objective(const Grid& z, const ProxProblem& problem);

/// Sum over all groups of the weighted group norm. With several channels each
/// group holds the same window of every channel (joint / isotropic grouping).
double ogs_penalty(std::span<const Grid> channels, const GroupWeights& weights,
                   BoundaryCondition bc);
double ogs_penalty(const Grid& z, const GroupWeights& weights, BoundaryCondition bc);

/// Multi-channel explicit shrinkage with shared groups. Each entry is still
/// covered with total weight ||w||^2, so the single-channel formula applies
/// with the group energy summed over channels; with a 1 x 1 window this is
/// the pointwise vector shrinkage of the stacked channels.
std::vector<Grid> ogs_shrink_joint(std::span<const Grid> channels, double beta,
                                   const GroupWeights& weights, BoundaryCondition bc,
                                   ShrinkFormula formula = ShrinkFormula::Averaged);

}  // namespace ogs
