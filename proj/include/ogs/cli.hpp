#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ogs/group_geometry.hpp"
#include "ogs/imaging.hpp"
#include "ogs/oracle.hpp"
#include "ogs/tv_admm.hpp"

namespace ogs::cli {

/// Parses "3x3" (or a single "3" for a square window).
GroupShape parse_group(const std::string& text);
/// "ones" or a text file of whitespace-separated rows of numbers.
GroupWeights load_weights(const std::string& spec, const GroupShape& shape);

struct ProxCompareConfig {
  std::vector<double> betas = {1, 5, 7, 10, 15, 20, 30, 50};
  std::vector<BoundaryCondition> bcs = {BoundaryCondition::Zero, BoundaryCondition::Periodic};
  std::size_t size = 100;
  /// Rows and columns [zero_begin, zero_end) are zeroed.
  std::size_t zero_begin = 44;
  std::size_t zero_end = 55;
  GroupWeights weights = GroupWeights::ones(GroupShape(3, 3));
  std::string weights_spec = "ones";
  std::size_t mm_iters = 20;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Uniform [0, 1) matrix with the center block zeroed.
Grid prox_test_matrix(const ProxCompareConfig& cfg);

struct ProxCompareRow {
  BoundaryCondition bc;
  double beta;
  ComparisonReport report;
};

std::vector<ProxCompareRow> run_prox_compare(const ProxCompareConfig& cfg);
/// Header "bc,beta,ReE of f,ReE of X,MAE of X"; "---" when the minimizer
/// error is undefined.
std::string prox_compare_csv(const std::vector<ProxCompareRow>& rows);
nlohmann::json prox_compare_json(const ProxCompareConfig& cfg,
                                 const std::vector<ProxCompareRow>& rows);

struct DeblurConfig {
  AdmmConfig admm = AdmmConfig::defaults(Model::AtvL2);
  std::string weights_spec = "ones";
  std::string kernel = "average:9";
  /// Gaussian noise for the L2 models; infinity disables it.
  double bsnr = 40.0;
  /// Salt-and-pepper level for the L1 models.
  double sp_level = 0.3;
  std::uint64_t seed = 1;
  /// Clean image; a synthetic phantom of phantom_size when empty.
  std::string input;
  /// Already degraded observation; skips the degradation step.
  std::string degraded;
  std::size_t phantom_size = 256;
  std::string out = "out";
  bool timing = true;
};

/// Preset mu for the salt-and-pepper level nearest to `level`.
double default_l1_mu(Model model, double level);

struct DeblurOutput {
  Image clean;
  Image degraded;
  SolveResult result;
  nlohmann::json report;
};

/// Degrades (unless given a degraded image), restores, and assembles the JSON
/// report. Does not touch the file system beyond reading inputs.
DeblurOutput run_deblur(const DeblurConfig& cfg);

nlohmann::json run_metrics(const std::filesystem::path& a, const std::filesystem::path& b);

nlohmann::json to_json(const DeblurConfig& cfg);
nlohmann::json to_json(const SolveReport& report, bool timing);

/// Full command-line entry point. Returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ogs::cli
