#include "strata/simulator.hpp"

#include <cmath>
#include <stdexcept>

namespace strata {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stirling tail of ln k!: ln k! - [(k+1/2) ln(k+1) - (k+1) + ln(2*pi)/2].
double stirling_tail(std::int64_t k) {
  static const double table[] = {
      0.08106146679532726, 0.04134069595540929, 0.02767792568499834,
      0.02079067210376509, 0.01664469118982119, 0.01387612882307075,
      0.01189670994589177, 0.01041126526197209, 0.009255462182712733,
      0.008330563433362871};
  if (k <= 9) return table[k];
  const double kp1sq = double(k + 1) * double(k + 1);
  return (1.0 / 12 - (1.0 / 360 - 1.0 / 1260 / kp1sq) / kp1sq) / double(k + 1);
}

// Inversion along the pmf recurrence; expected cost O(n*p).  p <= 0.5.
std::int64_t binomial_binv(Rng& rng, std::int64_t n, double p) {
  const double q = 1.0 - p;
  const double s = p / q;
  const double a = double(n + 1) * s;
  while (true) {
    double r = std::pow(q, double(n));
    double u = rng.uniform();
    std::int64_t k = 0;
    while (u > r) {
      u -= r;
      ++k;
      if (k > n) break;  // guard against accumulated rounding
      r *= a / double(k) - s;
    }
    if (k <= n) return k;
  }
}

// Hormann's transformed-rejection sampler; requires n*p*(1-p) large enough
// that the hat is valid (callers use it when n*min(p,q) >= 10).  p <= 0.5.
std::int64_t binomial_btrs(Rng& rng, std::int64_t n, double p) {
  const double q = 1.0 - p;
  const double spq = std::sqrt(double(n) * p * q);
  const double b = 1.15 + 2.53 * spq;
  const double a = -0.0873 + 0.0248 * b + 0.01 * p;
  const double c = double(n) * p + 0.5;
  const double v_r = 0.92 - 4.2 / b;
  const double r = p / q;
  const double alpha = (2.83 + 5.1 / b) * spq;
  const double m = std::floor(double(n + 1) * p);

  while (true) {
    const double u = rng.uniform() - 0.5;
    double v = rng.uniform();
    const double us = 0.5 - std::fabs(u);
    const double kd = std::floor((2.0 * a / us + b) * u + c);
    if (kd < 0 || kd > double(n)) continue;
    if (us >= 0.07 && v <= v_r) return std::int64_t(kd);
    v = std::log(v * alpha / (a / (us * us) + b));
    const double k = kd;
    const double bound =
        (m + 0.5) * std::log((m + 1) / (r * (double(n) - m + 1))) +
        (double(n) + 1) * std::log((double(n) - m + 1) / (double(n) - k + 1)) +
        (k + 0.5) * std::log(r * (double(n) - k + 1) / (k + 1)) +
        stirling_tail(std::int64_t(m)) + stirling_tail(n - std::int64_t(m)) -
        stirling_tail(std::int64_t(k)) - stirling_tail(n - std::int64_t(k));
    if (v <= bound) return std::int64_t(kd);
  }
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t index) {
  return splitmix64(splitmix64(seed ^ (stream * 0xa0761d6478bd642fULL)) + index);
}

std::int64_t binomial_draw(Rng& rng, std::int64_t n, double p) {
  if (n < 0) throw std::invalid_argument("binomial_draw: n < 0");
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("binomial_draw: p outside [0,1]");
  if (n == 0 || p == 0.0) return 0;
  if (p == 1.0) return n;
  const bool flip = p > 0.5;
  const double ps = flip ? 1.0 - p : p;
  const std::int64_t k = (double(n) * ps < 10.0) ? binomial_binv(rng, n, ps)
                                                 : binomial_btrs(rng, n, ps);
  return flip ? n - k : k;
}

std::vector<std::int64_t> multinomial_draw(Rng& rng, std::int64_t n,
                                           const std::vector<double>& weights) {
  double total = 0;
  for (double w : weights) {
    if (w < 0) throw std::invalid_argument("multinomial_draw: negative weight");
    total += w;
  }
  if (!(total > 0))
    throw std::invalid_argument("multinomial_draw: no positive weight");

  std::vector<std::int64_t> counts(weights.size(), 0);
  std::int64_t remaining = n;
  double mass = total;
  for (std::size_t i = 0; i + 1 < weights.size() && remaining > 0; ++i) {
    if (weights[i] <= 0) continue;
    const double prob = std::min(weights[i] / mass, 1.0);
    counts[i] = binomial_draw(rng, remaining, prob);
    remaining -= counts[i];
    mass -= weights[i];
  }
  if (!weights.empty()) counts[weights.size() - 1] += remaining;
  return counts;
}

CountMatrix simulate_once(const TypeVector& t, double p, std::uint64_t seed) {
  require_nonnegative(t);
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("simulate_once: p outside [0,1]");
  Rng rng(seed);
  CountMatrix m;
  // Intervention/control cells per type, in row order.
  static constexpr int intervention_col[4] = {2, 2, 1, 1};
  static constexpr int control_col[4] = {4, 3, 4, 3};
  const auto counts = t.as_array();
  for (int i = 0; i < 4; ++i) {
    const std::int64_t k = binomial_draw(rng, counts[i], p);
    m.at(i + 1, intervention_col[i]) = k;
    m.at(i + 1, control_col[i]) = counts[i] - k;
  }
  return m;
}

std::vector<GroupedData> simulate_grouped(const SimConfig& cfg) {
  if (cfg.replications < 1)
    throw std::invalid_argument("simulate_grouped: replications < 1");
  std::vector<GroupedData> out;
  out.reserve(static_cast<std::size_t>(cfg.replications));
  for (std::int64_t r = 0; r < cfg.replications; ++r) {
    const CountMatrix m =
        simulate_once(cfg.t, cfg.p, derive_seed(cfg.seed, 0, std::uint64_t(r)));
    out.push_back(m.column_totals());
  }
  return out;
}

}  // namespace strata
