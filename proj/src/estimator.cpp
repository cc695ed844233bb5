#include "strata/estimator.hpp"

#include <stdexcept>

#include "strata/least_squares.hpp"
#include "strata/mle.hpp"

namespace strata {

std::string EstimatorConfig::name() const {
  std::string n = kind == EstimatorKind::LeastSquares ? "ls" : "mle";
  switch (design.mode) {
    case DesignParams::Mode::Fixed: n += "/fixed-p"; break;
    case DesignParams::Mode::EstimateEmpirical: n += "/empirical-p"; break;
    case DesignParams::Mode::EstimateJoint: n += "/free-p"; break;
  }
  return n;
}

PointEstimate run_estimator(const GroupedData& g, const EstimatorConfig& cfg,
                            std::uint64_t seed) {
  require_sample(g);
  PointEstimate est;

  const auto resolved_p = [&]() -> double {
    if (cfg.design.mode == DesignParams::Mode::Fixed) return cfg.design.p;
    // empirical intervention fraction
    return double(g.g1 + g.g2) / double(g.total());
  };

  if (cfg.kind == EstimatorKind::LeastSquares) {
    LsSolution sol;
    if (cfg.design.mode == DesignParams::Mode::EstimateJoint)
      sol = ls_estimate_free_p(g, seed, cfg.restarts);
    else
      sol = ls_estimate(g, resolved_p(), seed, cfg.restarts);
    est.t_hat = sol.t_hat;
    est.p_used = sol.p_used;
    est.criterion = sol.objective;
  } else {
    MleResult r;
    if (cfg.design.mode == DesignParams::Mode::EstimateJoint) {
      r = mle_estimate_p(g, seed, cfg.mle_exact_cap, cfg.restarts);
    } else {
      const double p = resolved_p();
      require_open_unit(p, "run_estimator");
      r = g.total() <= cfg.mle_exact_cap
              ? mle_exact(g, p, cfg.mle_exact_cap)
              : mle_heuristic(g, p, seed, cfg.restarts);
    }
    est.t_hat = r.t_hat;
    est.p_used = r.p_used;
    est.criterion = r.log_likelihood;
  }
  return est;
}

}  // namespace strata
