#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "strata/estimator.hpp"
#include "strata/types.hpp"

namespace strata {

// One multinomial resample of the n individuals over the four observed
// cells.  Deterministic given the seed.
GroupedData resample(const GroupedData& g, std::uint64_t seed);

struct BootstrapReport {
  std::int64_t replications = 0;
  std::int64_t excluded = 0;  // replications whose estimator failed
  std::array<double, 4> se_t{};
  std::array<double, 4> se_shares{};
  double se_p = 0;
  // Per-replication estimates in replication order, when retained.
  std::vector<PointEstimate> estimates;
};

// Standard errors as the sample standard deviation of the estimator applied
// to `replications` resamples.  Replication r uses seeds derived from
// (seed, r), so results do not depend on evaluation order or the number of
// worker threads.  Fails if more than 10% of replications fail.
//
// hold_p_fixed pins the empirical/free p at its original-sample value
// instead of re-estimating it inside every replication.
BootstrapReport bootstrap_se(const GroupedData& g,
                             const EstimatorConfig& estimator,
                             std::int64_t replications, std::uint64_t seed,
                             int threads = 0, bool keep_estimates = false,
                             bool hold_p_fixed = false);

}  // namespace strata
