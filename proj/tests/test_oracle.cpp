#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ogs/oracle.hpp"
#include "support.hpp"

namespace ogs {
namespace {

using testing::max_abs_diff;
using testing::random_grid;
using testing::uniform_size;

const BoundaryCondition kAllBcs[] = {BoundaryCondition::Periodic, BoundaryCondition::Zero,
                                     BoundaryCondition::Reflective};

const double kSymmetricT = 1.0 - std::sqrt(2.0) / 100.0;

ProxProblem symmetric_problem() {
  return {Grid::row({1, 1, 1, 1}), 100.0, GroupWeights::line({1, 1}), BoundaryCondition::Periodic};
}

ProxProblem random_problem(std::mt19937_64& rng, BoundaryCondition bc) {
  const bool two_d = std::bernoulli_distribution(0.5)(rng);
  const std::size_t m = two_d ? uniform_size(rng, 2, 4) : 1;
  const std::size_t n = two_d ? uniform_size(rng, 2, 4) : uniform_size(rng, 2, 8);
  const std::size_t k1 = two_d ? uniform_size(rng, 1, m) : 1;
  const std::size_t k2 = uniform_size(rng, 1, std::min<std::size_t>(n, 3));
  const GroupWeights w(random_grid(k1, k2, rng, 0.1, 1.0));
  const double unit = w.norm() / std::sqrt(static_cast<double>(k1 * k2));
  const double beta = unit * std::exp(std::uniform_real_distribution<double>(-1, 5)(rng));
  return {random_grid(m, n, rng, -1.0, 1.0), beta, w, bc};
}

TEST(MmProx, ZeroIsFixedPoint) {
  const ProxProblem p{Grid(3, 3, 0.0), 2.0, GroupWeights::ones(GroupShape(2, 2)),
                      BoundaryCondition::Zero};
  const MmResult r = mm_prox(p);
  EXPECT_EQ(r.minimizer, Grid(3, 3, 0.0));
  for (double f : r.objective_trajectory) EXPECT_EQ(f, 0.0);
}

TEST(MmProx, SingletonGroupConvergesToSoftThreshold) {
  std::mt19937_64 rng(1);
  const double beta = 4.0;
  Grid x = random_grid(3, 5, rng, 0.0, 1.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = (i % 2 ? -1.0 : 1.0) * (1.0 / beta + 0.1 + x[i]);
  }
  MmConfig cfg;
  cfg.max_iters = 50;
  const ProxProblem p{x, beta, GroupWeights::line({1.0}), BoundaryCondition::Zero};
  EXPECT_LE(max_abs_diff(mm_prox(p, cfg).minimizer, soft_threshold(x, beta)), 1e-8);
}

TEST(MmProx, SymmetricInstanceBy20Iterations) {
  const MmResult r = mm_prox(symmetric_problem());
  for (double v : r.minimizer) EXPECT_NEAR(v, kSymmetricT, 1e-7);
}

TEST(MmProx, TrajectoryShapeAndMonotonicity) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 60; ++trial) {
    for (BoundaryCondition bc : kAllBcs) {
      const ProxProblem p = random_problem(rng, bc);
      const MmResult r = mm_prox(p);
      ASSERT_EQ(r.objective_trajectory.size(), 21u);
      EXPECT_DOUBLE_EQ(r.objective_trajectory.front(), evaluate_objective(p.data, p));
      for (std::size_t k = 1; k < r.objective_trajectory.size(); ++k) {
        const double prev = r.objective_trajectory[k - 1];
        EXPECT_LE(r.objective_trajectory[k], prev + 1e-12 * std::max(1.0, std::abs(prev)));
      }
    }
  }
}

TEST(MmProx, RejectsBadInput) {
  EXPECT_THROW(mm_prox({Grid::row({1, 2}), -1.0}), std::invalid_argument);
  MmConfig cfg;
  cfg.max_iters = 0;
  EXPECT_THROW(mm_prox({Grid::row({1, 2}), 1.0}, cfg), std::invalid_argument);
}

TEST(BruteForce, TrivialInstances) {
  const BruteForceResult zero = brute_force_prox({Grid(2, 3, 0.0), 1.0, GroupWeights::line({1, 1})});
  EXPECT_TRUE(zero.converged);
  EXPECT_LE(max_abs_diff(zero.minimizer, Grid(2, 3, 0.0)), 1e-12);

  const BruteForceResult sym = brute_force_prox(symmetric_problem());
  EXPECT_TRUE(sym.converged);
  for (double v : sym.minimizer) EXPECT_NEAR(v, kSymmetricT, 1e-5);
}

TEST(BruteForce, SingletonGroupMatchesSoftThreshold) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Grid x = random_grid(1, uniform_size(rng, 1, 8), rng, -2, 2);
    const double beta = std::exp(std::uniform_real_distribution<double>(-1, 3)(rng));
    const ProxProblem p{x, beta, GroupWeights::line({1.0}), BoundaryCondition::Zero};
    const BruteForceResult r = brute_force_prox(p);
    EXPECT_TRUE(r.converged);
    EXPECT_LE(evaluate_objective(r.minimizer, p) - evaluate_objective(soft_threshold(x, beta), p),
              1e-6);
  }
}

TEST(BruteForce, RejectsLargeProblems) {
  EXPECT_THROW(brute_force_prox({Grid(9, 8, 0.5), 1.0}), std::invalid_argument);
  BruteForceConfig bad;
  bad.epsilon = 0.0;
  EXPECT_THROW(brute_force_prox({Grid(2, 2, 0.5), 1.0}, bad), std::invalid_argument);
}

TEST(BruteForce, ReportsNonConvergence) {
  BruteForceConfig cfg;
  cfg.max_iters = 0;
  cfg.tolerance = 1e-300;
  std::mt19937_64 rng(4);
  const ProxProblem p{random_grid(1, 6, rng), 3.0, GroupWeights::line({1, 1, 1}),
                      BoundaryCondition::Zero};
  EXPECT_FALSE(brute_force_prox(p, cfg).converged);
}

TEST(Oracles, BruteForceBoundsBothSolvers) {
  std::mt19937_64 rng(5);
  MmConfig mm;
  mm.max_iters = 200;
  for (int trial = 0; trial < 40; ++trial) {
    for (BoundaryCondition bc : kAllBcs) {
      const ProxProblem p = random_problem(rng, bc);
      const BruteForceResult brute = brute_force_prox(p);
      ASSERT_TRUE(brute.converged) << "gap " << brute.gap;
      const double fb = evaluate_objective(brute.minimizer, p);
      EXPECT_GE(ogs_shrink(p).objective, fb - 1e-6);
      EXPECT_GE(evaluate_objective(mm_prox(p, mm).minimizer, p), fb - 1e-6);
    }
  }
}

TEST(Oracles, LongMmAgreesWithBruteForceAtLargeBeta) {
  std::mt19937_64 rng(6);
  MmConfig mm;
  mm.max_iters = 300;
  for (int trial = 0; trial < 20; ++trial) {
    ProxProblem p = random_problem(rng, BoundaryCondition::Periodic);
    p.data = p.data + Grid(p.data.rows(), p.data.cols(), 2.0);
    p.beta = 30.0 * p.weights.norm() / std::sqrt(static_cast<double>(p.weights.shape().count()));
    const Grid brute = brute_force_prox(p).minimizer;
    EXPECT_LE(max_abs_diff(mm_prox(p, mm).minimizer, brute), 1e-7);
  }
}

TEST(Compare, SmallBetaIsExact) {
  std::mt19937_64 rng(7);
  const ProxProblem p{random_grid(1, 12, rng, 0.0, 1.0), 1.0, GroupWeights::line({1, 1, 1}),
                      BoundaryCondition::Zero};
  const ComparisonReport r = compare(p);
  EXPECT_LE(r.rel_err_objective, 1e-7);
  EXPECT_FALSE(r.rel_err_minimizer.has_value());
  EXPECT_EQ(r.regime, Regime::ExactSmallBeta);
}

TEST(Compare, FlatExplicitTrajectory) {
  std::mt19937_64 rng(8);
  const ProxProblem p{random_grid(6, 6, rng, 0.0, 1.0), 7.0, GroupWeights::ones(GroupShape(3, 3)),
                      BoundaryCondition::Periodic};
  MmConfig cfg;
  cfg.max_iters = 20;
  const ComparisonReport r = compare(p, cfg);
  ASSERT_EQ(r.explicit_trajectory.size(), 21u);
  ASSERT_EQ(r.objective_trajectory.size(), 21u);
  for (double f : r.explicit_trajectory) EXPECT_EQ(f, r.explicit_objective);
  EXPECT_EQ(r.mm_objective, r.objective_trajectory.back());
  ASSERT_TRUE(r.rel_err_minimizer.has_value());
  EXPECT_EQ(r.regime, Regime::Approximate);
}

}  // namespace
}  // namespace ogs
