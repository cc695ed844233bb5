#include "strata/bootstrap.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "strata/simulator.hpp"

namespace strata {

namespace {

double sample_sd(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  if (n < 2) return 0.0;
  double mean = 0;
  for (double x : xs) mean += x;
  mean /= double(n);
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / double(n - 1));
}

}  // namespace

GroupedData resample(const GroupedData& g, std::uint64_t seed) {
  require_sample(g);
  Rng rng(seed);
  const auto cells = g.as_array();
  std::vector<double> weights(cells.begin(), cells.end());
  const auto counts = multinomial_draw(rng, g.total(), weights);
  return GroupedData::from_array({counts[0], counts[1], counts[2], counts[3]});
}

BootstrapReport bootstrap_se(const GroupedData& g,
                             const EstimatorConfig& estimator,
                             std::int64_t replications, std::uint64_t seed,
                             int threads, bool keep_estimates,
                             bool hold_p_fixed) {
  require_sample(g);
  if (replications < 2)
    throw std::invalid_argument("bootstrap_se: replications < 2");

  EstimatorConfig per_rep = estimator;
  if (hold_p_fixed && estimator.design.mode != DesignParams::Mode::Fixed) {
    per_rep.design.mode = DesignParams::Mode::Fixed;
    per_rep.design.p =
        estimator.design.mode == DesignParams::Mode::EstimateEmpirical
            ? double(g.g1 + g.g2) / double(g.total())
            : run_estimator(g, estimator, derive_seed(seed, 4, 0)).p_used;
  }

  const std::size_t r_total = static_cast<std::size_t>(replications);
  std::vector<PointEstimate> results(r_total);
  std::vector<char> failed(r_total, 0);

  auto run_one = [&](std::size_t r) {
    const GroupedData sample = resample(g, derive_seed(seed, 5, r));
    results[r] = run_estimator(sample, per_rep, derive_seed(seed, 6, r));
  };

  int workers = threads > 0 ? threads
                            : int(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  workers = int(std::min<std::size_t>(std::size_t(workers), r_total));

  if (workers == 1) {
    for (std::size_t r = 0; r < r_total; ++r) {
      try {
        run_one(r);
      } catch (const std::exception&) {
        failed[r] = 1;
      }
    }
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
      while (true) {
        const std::size_t r = next.fetch_add(1);
        if (r >= r_total) return;
        try {
          run_one(r);
        } catch (const std::exception&) {
          failed[r] = 1;
        }
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  BootstrapReport report;
  report.replications = replications;
  for (std::size_t r = 0; r < r_total; ++r) report.excluded += failed[r];
  if (10 * report.excluded > replications)
    throw std::runtime_error("bootstrap_se: " + std::to_string(report.excluded) +
                             " of " + std::to_string(replications) +
                             " replications failed (over the 10% ceiling)");

  const double n = double(g.total());
  std::array<std::vector<double>, 4> t_series;
  std::array<std::vector<double>, 4> share_series;
  std::vector<double> p_series;
  for (std::size_t r = 0; r < r_total; ++r) {
    if (failed[r]) continue;
    const auto t = results[r].t_hat.as_array();
    for (int i = 0; i < 4; ++i) {
      t_series[i].push_back(double(t[i]));
      share_series[i].push_back(double(t[i]) / n);
    }
    p_series.push_back(results[r].p_used);
  }
  for (int i = 0; i < 4; ++i) {
    report.se_t[i] = sample_sd(t_series[i]);
    report.se_shares[i] = sample_sd(share_series[i]);
  }
  report.se_p = sample_sd(p_series);

  if (keep_estimates) {
    report.estimates.reserve(r_total - std::size_t(report.excluded));
    for (std::size_t r = 0; r < r_total; ++r)
      if (!failed[r]) report.estimates.push_back(results[r]);
  }
  return report;
}

}  // namespace strata
