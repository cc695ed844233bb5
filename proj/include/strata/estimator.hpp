#pragma once

#include <cstdint>
#include <string>

#include "strata/types.hpp"

namespace strata {

enum class EstimatorKind { LeastSquares, MaximumLikelihood };

// Named configuration for one estimator run; used by the pipeline and as the
// per-replication estimator of the bootstrap.
struct EstimatorConfig {
  EstimatorKind kind = EstimatorKind::LeastSquares;
  DesignParams design;  // Fixed uses design.p; the other modes derive p
  int restarts = 64;
  std::int64_t mle_exact_cap = 200;

  std::string name() const;
};

struct PointEstimate {
  TypeVector t_hat;
  double p_used = 0;
  // objective value (least squares) or log-likelihood (maximum likelihood)
  double criterion = 0;
};

PointEstimate run_estimator(const GroupedData& g, const EstimatorConfig& cfg,
                            std::uint64_t seed);

}  // namespace strata
