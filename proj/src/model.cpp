#include "strata/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace strata {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(exp(a) + exp(b)) without leaving log space.
double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (b == kNegInf) return a;
  return a + std::log1p(std::exp(b - a));
}

}  // namespace

LogProb log_binom_pmf(std::int64_t k, std::int64_t r, double p) {
  if (r < 0) throw std::invalid_argument("log_binom_pmf: r < 0");
  require_open_unit(p, "log_binom_pmf");
  if (k < 0 || k > r) return LogProb::zero();
  const double lp = std::lgamma(double(r) + 1.0) - std::lgamma(double(k) + 1.0) -
                    std::lgamma(double(r - k) + 1.0) +
                    double(k) * std::log(p) + double(r - k) * std::log1p(-p);
  return LogProb::from_log(lp);
}

EllRange feasible_ell_range(const TypeVector& t, const GroupedData& g) {
  const std::int64_t lo =
      std::max({std::int64_t{0}, g.g2 - t.defiers, t.never - g.g4,
                t.never + t.compliers - g.g1 - g.g4});
  const std::int64_t hi =
      std::min({t.never, g.g2, t.never + t.compliers - g.g4,
                t.never + t.compliers + t.always - g.g1 - g.g4});
  return {lo, hi};
}

LogLikelihood::LogLikelihood(const GroupedData& g, double p) : g_(g), p_(p) {
  require_nonnegative(g);
  require_open_unit(p, "LogLikelihood");
  log_p_ = std::log(p);
  log_q_ = std::log1p(-p);
  lfact_.resize(static_cast<std::size_t>(g.total()) + 1);
  for (std::size_t i = 0; i < lfact_.size(); ++i)
    lfact_[i] = std::lgamma(double(i) + 1.0);
}

double LogLikelihood::binom_log(std::int64_t k, std::int64_t r) const {
  // Callers stay inside the feasible range, so 0 <= k <= r holds here.
  return lfact_[r] - lfact_[k] - lfact_[r - k] + double(k) * log_p_ +
         double(r - k) * log_q_;
}

double LogLikelihood::operator()(const TypeVector& t) const {
  if (t.never < 0 || t.defiers < 0 || t.compliers < 0 || t.always < 0)
    return kNegInf;
  if (t.total() != g_.total()) return kNegInf;
  const EllRange range = feasible_ell_range(t, g_);
  double acc = kNegInf;
  for (std::int64_t ell = range.lo; ell <= range.hi; ++ell) {
    const double term =
        binom_log(ell, t.never) + binom_log(g_.g2 - ell, t.defiers) +
        binom_log(t.never + t.compliers - g_.g4 - ell, t.compliers) +
        binom_log(g_.g1 + g_.g4 + ell - t.never - t.compliers, t.always);
    acc = log_add(acc, term);
  }
  return acc;
}

LogProb log_data_probability(const TypeVector& t, const GroupedData& g,
                             double p) {
  require_nonnegative(t);
  require_nonnegative(g);
  const LogLikelihood ll(g, p);
  const double lp = ll(t);
  return lp == kNegInf ? LogProb::zero() : LogProb::from_log(lp);
}

std::map<GroupedData, double> enumerate_distribution(const TypeVector& t,
                                                     double p,
                                                     std::int64_t cap) {
  require_nonnegative(t);
  require_open_unit(p, "enumerate_distribution");
  if (t.total() > cap)
    throw std::invalid_argument("enumerate_distribution: total " +
                                std::to_string(t.total()) + " exceeds cap " +
                                std::to_string(cap));

  // pmf of Binomial(n, p) by forward recurrence; deliberately a different
  // numerical route than the log-gamma evaluation it is used to check.
  const auto pmf = [p](std::int64_t n) {
    std::vector<double> f(static_cast<std::size_t>(n) + 1);
    f[0] = std::pow(1.0 - p, double(n));
    const double ratio = p / (1.0 - p);
    for (std::int64_t k = 0; k < n; ++k)
      f[k + 1] = f[k] * double(n - k) / double(k + 1) * ratio;
    return f;
  };

  const auto f1 = pmf(t.never);
  const auto f2 = pmf(t.defiers);
  const auto f3 = pmf(t.compliers);
  const auto f4 = pmf(t.always);

  std::map<GroupedData, double> dist;
  for (std::int64_t k1 = 0; k1 <= t.never; ++k1)
    for (std::int64_t k2 = 0; k2 <= t.defiers; ++k2)
      for (std::int64_t k3 = 0; k3 <= t.compliers; ++k3)
        for (std::int64_t k4 = 0; k4 <= t.always; ++k4) {
          const double pr = f1[k1] * f2[k2] * f3[k3] * f4[k4];
          const GroupedData g{k3 + k4, k1 + k2,
                              (t.defiers - k2) + (t.always - k4),
                              (t.never - k1) + (t.compliers - k3)};
          dist[g] += pr;
        }
  return dist;
}

}  // namespace strata
