#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ogs/group_geometry.hpp"
#include "support.hpp"

namespace ogs {
namespace {

using testing::max_abs_diff;
using testing::random_grid;
using testing::uniform_size;

// Index map written out case by case; used as the reference for the library.
std::optional<std::size_t> reference_index(long i, long n, BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::Periodic:
      return static_cast<std::size_t>(((i % n) + n) % n);
    case BoundaryCondition::Zero:
      if (i < 0 || i >= n) return std::nullopt;
      return static_cast<std::size_t>(i);
    case BoundaryCondition::Reflective:
      while (i < 0 || i >= n) {
        if (i < 0) i = -i - 1;
        if (i >= n) i = 2 * n - 1 - i;
      }
      return static_cast<std::size_t>(i);
  }
  return std::nullopt;
}

Grid reference_energy(const Grid& sig, const Grid& w2, BoundaryCondition bc) {
  const long lb = static_cast<long>((w2.rows() - 1) / 2);
  const long cb = static_cast<long>((w2.cols() - 1) / 2);
  Grid out(sig.rows(), sig.cols(), 0.0);
  for (long i = 0; i < static_cast<long>(sig.rows()); ++i) {
    for (long j = 0; j < static_cast<long>(sig.cols()); ++j) {
      double acc = 0.0;
      for (long a = 0; a < static_cast<long>(w2.rows()); ++a) {
        for (long b = 0; b < static_cast<long>(w2.cols()); ++b) {
          const auto r = reference_index(i - lb + a, static_cast<long>(sig.rows()), bc);
          const auto c = reference_index(j - cb + b, static_cast<long>(sig.cols()), bc);
          if (r && c) acc += w2(a, b) * sig(*r, *c);
        }
      }
      out(i, j) = acc;
    }
  }
  return out;
}

const BoundaryCondition kAllBcs[] = {BoundaryCondition::Periodic, BoundaryCondition::Zero,
                                     BoundaryCondition::Reflective};

TEST(GroupShape, ExtentsFollowFloorRule) {
  for (std::size_t k = 1; k <= 9; ++k) {
    const GroupShape s(k, k);
    EXPECT_EQ(s.row_before(), (k - 1) / 2);
    EXPECT_EQ(s.row_after(), k / 2);
    EXPECT_EQ(s.row_before() + s.row_after() + 1, k);
  }
  const GroupShape even = GroupShape::line(4);
  EXPECT_EQ(even.rows(), 1u);
  EXPECT_EQ(even.col_before(), 1u);
  EXPECT_EQ(even.col_after(), 2u);
  EXPECT_THROW(GroupShape(0, 3), std::invalid_argument);
}

TEST(GroupWeights, StoresAbsoluteValues) {
  const GroupWeights w = GroupWeights::line({-1.0, 2.0, -3.0});
  EXPECT_EQ(w.values()[0], 1.0);
  EXPECT_EQ(w.values()[2], 3.0);
  EXPECT_DOUBLE_EQ(w.squared_norm(), 14.0);
  EXPECT_DOUBLE_EQ(w.norm(), std::sqrt(14.0));
  EXPECT_EQ(w.squared()[1], 4.0);
}

TEST(GroupWeights, RejectsDegenerateInput) {
  EXPECT_THROW(GroupWeights::line({0.0, 0.0}), std::invalid_argument);
  EXPECT_THROW(GroupWeights::line({}), std::invalid_argument);
  EXPECT_THROW(GroupWeights::line({1.0, NAN}), std::invalid_argument);
}

TEST(GroupWeights, ToOddPrependsZero) {
  const GroupWeights w = GroupWeights::line({1.0, 2.0}).to_odd();
  ASSERT_EQ(w.shape(), GroupShape::line(3));
  EXPECT_EQ(w.values()[0], 0.0);
  EXPECT_EQ(w.values()[1], 1.0);
  EXPECT_EQ(w.values()[2], 2.0);
  const GroupWeights sq = GroupWeights::ones(GroupShape(2, 4)).to_odd();
  EXPECT_EQ(sq.shape(), GroupShape(3, 5));
  EXPECT_EQ(sq.values()(0, 3), 0.0);
  EXPECT_EQ(sq.values()(1, 0), 0.0);
  EXPECT_EQ(sq.values()(1, 1), 1.0);
}

TEST(Extend, OneSidedExamples) {
  const Grid x = Grid::row({1, 2, 3});
  const Padding pad{0, 0, 1, 1};
  EXPECT_EQ(extend(x, BoundaryCondition::Zero, pad).vector(), (std::vector<double>{0, 1, 2, 3, 0}));
  EXPECT_EQ(extend(x, BoundaryCondition::Periodic, pad).vector(),
            (std::vector<double>{3, 1, 2, 3, 1}));
  EXPECT_EQ(extend(x, BoundaryCondition::Reflective, pad).vector(),
            (std::vector<double>{1, 1, 2, 3, 3}));
}

TEST(Extend, EmptySignalThrows) {
  EXPECT_THROW(extend(Grid(), BoundaryCondition::Zero, Padding{}), std::invalid_argument);
}

TEST(Extend, IsIdempotentOnRepeat) {
  std::mt19937_64 rng(3);
  const Grid x = random_grid(4, 5, rng);
  for (BoundaryCondition bc : kAllBcs) {
    EXPECT_EQ(extend(x, bc, {2, 1, 3, 2}), extend(x, bc, {2, 1, 3, 2}));
    EXPECT_EQ(extend(x, bc, {}), x);
  }
}

TEST(BoundaryIndex, MatchesCaseByCaseReference) {
  for (BoundaryCondition bc : kAllBcs) {
    for (long n = 1; n <= 5; ++n) {
      for (long i = -12; i < 12; ++i) {
        EXPECT_EQ(boundary_index(i, static_cast<std::size_t>(n), bc), reference_index(i, n, bc))
            << to_string(bc) << " i=" << i << " n=" << n;
      }
    }
  }
}

TEST(BoundaryCondition, ParsesNames) {
  EXPECT_EQ(parse_boundary_condition("zero"), BoundaryCondition::Zero);
  EXPECT_EQ(parse_boundary_condition("periodic"), BoundaryCondition::Periodic);
  EXPECT_EQ(parse_boundary_condition("reflective"), BoundaryCondition::Reflective);
  EXPECT_THROW(parse_boundary_condition("mirror-ish"), std::invalid_argument);
  for (BoundaryCondition bc : kAllBcs) EXPECT_EQ(parse_boundary_condition(to_string(bc)), bc);
}

TEST(GroupEnergy, SmallExamples) {
  const Grid ones = Grid::row({1, 1, 1, 1});
  const Grid w2 = Grid::row({1, 1});
  EXPECT_EQ(group_energy(ones, w2, BoundaryCondition::Periodic).vector(),
            (std::vector<double>{2, 2, 2, 2}));
  EXPECT_EQ(spread(ones, w2, BoundaryCondition::Periodic).vector(),
            (std::vector<double>{2, 2, 2, 2}));
  const Grid spike = Grid::row({1, 0, 0, 0});
  EXPECT_EQ(group_energy(spike, Grid::row({1, 1, 1}), BoundaryCondition::Zero).vector(),
            (std::vector<double>{1, 1, 0, 0}));
  const Grid zeros(3, 4, 0.0);
  for (BoundaryCondition bc : kAllBcs) {
    EXPECT_EQ(group_energy(zeros, Grid(2, 3, 1.5), bc), zeros);
    EXPECT_EQ(spread(zeros, Grid(2, 3, 1.5), bc), zeros);
  }
}

TEST(GroupEnergy, MatchesWindowEnumeration) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = uniform_size(rng, 1, 9);
    const std::size_t n = uniform_size(rng, 1, 9);
    const Grid sig = random_grid(m, n, rng, 0.0, 1.0);
    const Grid w2 = random_grid(uniform_size(rng, 1, m), uniform_size(rng, 1, n), rng, 0.0, 2.0);
    for (BoundaryCondition bc : kAllBcs) {
      const Grid expected = reference_energy(sig, w2, bc);
      EXPECT_LE(max_abs_diff(group_energy(sig, w2, bc, WindowStrategy::Direct), expected), 1e-13);
      EXPECT_LE(max_abs_diff(group_energy(sig, w2, bc, WindowStrategy::Fft), expected), 1e-12);
    }
  }
}

TEST(GroupEnergy, GroupLargerThanSignalThrows) {
  EXPECT_THROW(group_energy(Grid(2, 2), Grid(3, 1, 1.0), BoundaryCondition::Zero),
               std::invalid_argument);
  EXPECT_THROW(spread(Grid(2, 2), Grid(1, 3, 1.0), BoundaryCondition::Periodic),
               std::invalid_argument);
}

TEST(Spread, IsAdjointOfGroupEnergy) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t m = uniform_size(rng, 8, 32);
    const std::size_t n = uniform_size(rng, 8, 32);
    const Grid x = random_grid(m, n, rng);
    const Grid y = random_grid(m, n, rng);
    const Grid w2 = random_grid(uniform_size(rng, 1, 6), uniform_size(rng, 1, 6), rng, 0.0, 1.0);
    for (BoundaryCondition bc : kAllBcs) {
      for (WindowStrategy st : {WindowStrategy::Direct, WindowStrategy::Fft}) {
        const double lhs = dot(group_energy(x, w2, bc, st), y);
        const double rhs = dot(x, spread(y, w2, bc, st));
        EXPECT_NEAR(lhs, rhs, 1e-12 * std::max(1.0, std::abs(lhs)));
      }
    }
  }
}

TEST(Spread, DirectAndFftAgreeForLargeWindows) {
  std::mt19937_64 rng(8);
  const Grid v = random_grid(24, 30, rng);
  const Grid w2 = random_grid(9, 9, rng, 0.0, 1.0);
  for (BoundaryCondition bc : kAllBcs) {
    EXPECT_LE(max_abs_diff(spread(v, w2, bc, WindowStrategy::Direct),
                           spread(v, w2, bc, WindowStrategy::Fft)),
              1e-12);
  }
}

TEST(GroupEnergy, OddPaddedWeightsGiveSameResult) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Grid sig = random_grid(7, 8, rng, 0.0, 1.0);
    const GroupWeights w(random_grid(uniform_size(rng, 1, 4), uniform_size(rng, 1, 4), rng, 0.1, 1.0));
    const GroupWeights odd = w.to_odd();
    for (BoundaryCondition bc : kAllBcs) {
      EXPECT_LE(max_abs_diff(group_energy(sig, w.squared(), bc),
                             group_energy(sig, odd.squared(), bc)),
                1e-14);
      EXPECT_LE(max_abs_diff(spread(sig, w.squared(), bc), spread(sig, odd.squared(), bc)), 1e-14);
    }
  }
}

TEST(ProblemDomain, LiftRestrictAndFold) {
  std::mt19937_64 rng(2);
  for (BoundaryCondition bc : kAllBcs) {
    for (int trial = 0; trial < 10; ++trial) {
      const std::size_t m = uniform_size(rng, 3, 9);
      const std::size_t n = uniform_size(rng, 3, 9);
      const GroupShape shape(uniform_size(rng, 1, 3), uniform_size(rng, 1, 3));
      const ProblemDomain d(m, n, shape, bc);
      const Grid x = random_grid(m, n, rng);
      const Grid lifted = d.lift(x);
      ASSERT_EQ(lifted.rows(), d.lifted_rows());
      ASSERT_EQ(lifted.cols(), d.lifted_cols());
      EXPECT_EQ(d.restrict(lifted), x);
      const Grid y = random_grid(d.lifted_rows(), d.lifted_cols(), rng);
      EXPECT_NEAR(dot(lifted, y), dot(x, d.fold(y)), 1e-12);
    }
  }
}

TEST(ProblemDomain, ZeroBcPadsEveryOverlappingWindow) {
  const ProblemDomain d(5, 6, GroupShape(3, 4), BoundaryCondition::Zero);
  EXPECT_EQ(d.lifted_rows(), 5u + 3 - 1);
  EXPECT_EQ(d.lifted_cols(), 6u + 4 - 1);
  EXPECT_EQ(d.objective_scale(), 1.0);
  const ProblemDomain r(5, 6, GroupShape(1, 3), BoundaryCondition::Reflective);
  EXPECT_EQ(r.lifted_rows(), 5u);
  EXPECT_EQ(r.lifted_cols(), 12u);
  EXPECT_EQ(r.objective_scale(), 0.5);
  const ProblemDomain p(5, 6, GroupShape(3, 3), BoundaryCondition::Periodic);
  EXPECT_EQ(p.lifted_rows(), 5u);
  EXPECT_EQ(p.objective_scale(), 1.0);
}

}  // namespace
}  // namespace ogs
