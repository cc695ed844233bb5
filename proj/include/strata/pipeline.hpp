#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "strata/baseline.hpp"
#include "strata/bootstrap.hpp"
#include "strata/estimator.hpp"
#include "strata/types.hpp"

namespace strata {

struct RunConfig {
  std::optional<std::string> input_path;
  std::optional<GroupedData> counts;  // inline alternative to input_path

  bool run_ls = true;
  bool run_mle = false;
  DesignParams design{0.5, DesignParams::Mode::EstimateEmpirical};

  std::int64_t bootstrap_replications = 0;  // 0 = off
  bool bootstrap_hold_p = false;
  std::uint64_t seed = 1;
  int restarts = 64;
  int threads = 0;  // 0 = hardware concurrency
  std::int64_t mle_exact_cap = 200;
};

struct EstimatorBlock {
  std::string name;  // "ls" or "mle"
  std::string p_mode;
  std::string method;
  TypeVector t_hat;
  std::array<double, 4> shares{};  // exact; rounded to 4 decimals on output
  double p_used = 0;
  double criterion = 0;  // objective (ls) or log-likelihood (mle)
  std::vector<TypeVector> ties;
  std::int64_t starts = 0;
  std::int64_t moves = 0;
  bool converged = true;
  std::optional<BootstrapReport> bootstrap;
};

struct EstimateReport {
  std::string source;  // input path or "inline"
  GroupedData g;
  std::uint64_t seed = 0;
  std::optional<BaselineShares> baseline;
  std::string baseline_error;  // set when the baseline is not computable
  std::vector<EstimatorBlock> estimators;
};

EstimateReport run_pipeline(const RunConfig& cfg);

std::string render_json(const EstimateReport& report);
std::string render_text(const EstimateReport& report);

}  // namespace strata
