#include "ogs/prox.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ogs {

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::ExactSmallBeta:
      return "exact-small-beta";
    case Regime::ExactLargeBeta:
      return "exact-large-beta";
    case Regime::Approximate:
      return "approximate";
  }
  return "unknown";
}

namespace {

void require_positive_beta(double beta, const char* what) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument(std::string(what) + ": beta must be positive and finite, got " +
                                std::to_string(beta));
  }
}

void check_channels(std::span<const Grid> channels, const char* what) {
  if (channels.empty()) throw std::invalid_argument(std::string(what) + ": no channels");
  for (const Grid& c : channels) {
    require_same_shape(channels.front(), c, what);
    if (c.empty()) throw std::invalid_argument(std::string(what) + ": empty data");
    if (!all_finite(c)) throw std::invalid_argument(std::string(what) + ": non-finite data");
  }
}

// Group energies summed over channels, on the lifted (periodic) domain.
Grid lifted_energy(std::span<const Grid> lifted, const Grid& weights_sq) {
  Grid energy(lifted.front().rows(), lifted.front().cols(), 0.0);
  for (const Grid& x : lifted) {
    const Grid e = group_energy(square(x), weights_sq, BoundaryCondition::Periodic);
    for (std::size_t i = 0; i < energy.size(); ++i) energy[i] += e[i];
  }
  // The FFT path can leave -1e-17 where the exact value is 0.
  for (double& e : energy) e = std::max(e, 0.0);
  return energy;
}

}  // namespace

void ProxProblem::validate() const {
  require_positive_beta(beta, "ProxProblem");
  if (data.empty()) throw std::invalid_argument("ProxProblem: empty data");
  if (!all_finite(data)) throw std::invalid_argument("ProxProblem: non-finite data");
  const GroupShape shape = weights.shape();
  if (shape.rows() > data.rows() || shape.cols() > data.cols()) {
    throw std::invalid_argument("ProxProblem: group larger than data");
  }
}

double soft_threshold(double x, double beta) {
  const double mag = std::abs(x) - 1.0 / beta;
  if (mag <= 0.0) return 0.0;
  return x > 0.0 ? mag : -mag;
}

Grid soft_threshold(const Grid& x, double beta) {
  require_positive_beta(beta, "soft_threshold");
  Grid out = x;
  for (double& v : out) v = soft_threshold(v, beta);
  return out;
}

std::vector<double> group_threshold(std::span<const double> x, double beta) {
  require_positive_beta(beta, "group_threshold");
  double nrm = 0.0;
  for (double v : x) nrm += v * v;
  nrm = std::sqrt(nrm);
  std::vector<double> out(x.size(), 0.0);
  const double keep = nrm - 1.0 / beta;
  if (nrm == 0.0 || keep <= 0.0) return out;
  const double factor = keep / nrm;
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] * factor;
  return out;
}

Regime classify_regime(double beta, const GroupWeights& weights) {
  const double unit =
      weights.norm() / std::sqrt(static_cast<double>(weights.shape().count()));
  if (beta <= unit) return Regime::ExactSmallBeta;
  if (beta >= kLargeBetaFactor * unit) return Regime::ExactLargeBeta;
  return Regime::Approximate;
}

std::vector<Grid> ogs_shrink_joint(std::span<const Grid> channels, double beta,
                                   const GroupWeights& weights, BoundaryCondition bc,
                                   ShrinkFormula formula) {
  require_positive_beta(beta, "ogs_shrink");
  check_channels(channels, "ogs_shrink");
  const Grid& w2 = weights.squared();
  const double coverage = weights.squared_norm();
  const ProblemDomain domain(channels.front().rows(), channels.front().cols(), weights.shape(),
                             bc);

  std::vector<Grid> lifted;
  lifted.reserve(channels.size());
  for (const Grid& c : channels) lifted.push_back(domain.lift(c));
  const Grid energy = lifted_energy(lifted, w2);

  // A zero group norm is read as 1/||.|| = 1. Such a group only covers zero
  // entries, so whatever it adds to G multiplies a zero.
  Grid gain;
  if (formula == ShrinkFormula::Averaged) {
    Grid per_group(energy.rows(), energy.cols());
    for (std::size_t j = 0; j < energy.size(); ++j) {
      const double inv = energy[j] > 0.0 ? 1.0 / std::sqrt(energy[j]) : 1.0;
      per_group[j] = std::max(1.0 / coverage - inv / beta, 0.0);
    }
    gain = spread(per_group, w2, BoundaryCondition::Periodic);
  } else {
    Grid inv(energy.rows(), energy.cols());
    for (std::size_t j = 0; j < energy.size(); ++j) {
      inv[j] = energy[j] > 0.0 ? 1.0 / std::sqrt(energy[j]) : 1.0;
    }
    gain = spread(inv, w2, BoundaryCondition::Periodic);
    for (double& g : gain) g = std::max(1.0 - g / beta, 0.0);
  }

  // Mirrored copies of an entry can get different gains when the window is
  // not symmetric; the entry takes their mean.
  const Grid entry_gain = domain.average(gain);
  std::vector<Grid> out;
  out.reserve(channels.size());
  for (const Grid& x : channels) out.push_back(hadamard(entry_gain, x));
  return out;
}

ShrinkResult ogs_shrink(const ProxProblem& problem, ShrinkFormula formula) {
  problem.validate();
  const std::span<const Grid> channel(&problem.data, 1);
  std::vector<Grid> z =
      ogs_shrink_joint(channel, problem.beta, problem.weights, problem.bc, formula);
  ShrinkResult result;
  result.minimizer = std::move(z.front());
  result.objective = evaluate_objective(result.minimizer, problem);
  result.regime = classify_regime(problem.beta, problem.weights);
  return result;
}

double ogs_penalty(std::span<const Grid> channels, const GroupWeights& weights,
                   BoundaryCondition bc) {
  check_channels(channels, "ogs_penalty");
  const ProblemDomain domain(channels.front().rows(), channels.front().cols(), weights.shape(),
                             bc);
  std::vector<Grid> lifted;
  lifted.reserve(channels.size());
  for (const Grid& c : channels) lifted.push_back(domain.lift(c));
  const Grid energy = lifted_energy(lifted, weights.squared());
  double total = 0.0;
  for (double e : energy) total += std::sqrt(e);
  return domain.objective_scale() * total;
}

double ogs_penalty(const Grid& z, const GroupWeights& weights, BoundaryCondition bc) {
  return ogs_penalty(std::span<const Grid>(&z, 1), weights, bc);
}

double evaluate_objective(const Grid& z, const ProxProblem& problem) {
  problem.validate();
  require_same_shape(z, problem.data, "evaluate_objective");
  const Grid diff = z - problem.data;
  return ogs_penalty(z, problem.weights, problem.bc) + 0.5 * problem.beta * dot(diff, diff);
}

}  // namespace ogs
