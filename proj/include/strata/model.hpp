#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "strata/types.hpp"

namespace strata {

// log of C(r,k) p^k (1-p)^(r-k), via log-gamma.  Zero probability outside
// the support 0 <= k <= r.
LogProb log_binom_pmf(std::int64_t k, std::int64_t r, double p);

// Closed interval of summation indices with a nonzero integrand in the data
// probability; empty when lo > hi.
struct EllRange {
  std::int64_t lo = 0;
  std::int64_t hi = -1;

  bool empty() const { return lo > hi; }
  std::int64_t width() const { return empty() ? 0 : hi - lo + 1; }
};

// Intersection of the support constraints of the four binomial factors:
// ell in [0, t1], g2 - ell in [0, t2], t1 + t3 - g4 - ell in [0, t3],
// g1 + g4 + ell - t1 - t3 in [0, t4].
EllRange feasible_ell_range(const TypeVector& t, const GroupedData& g);

// P(G = g | t, p): the deconvolution sum over the number of never takers
// assigned to the intervention group.  Zero when the totals disagree or the
// feasible range is empty.  All accumulation is in log space.
LogProb log_data_probability(const TypeVector& t, const GroupedData& g,
                             double p);

// Repeated-evaluation form of log_data_probability: caches the log-factorial
// table for one dataset so the estimators can score many type vectors.
class LogLikelihood {
 public:
  LogLikelihood(const GroupedData& g, double p);

  // log P(G = g | t, p); -infinity for probability zero.
  double operator()(const TypeVector& t) const;

  const GroupedData& data() const { return g_; }
  double p() const { return p_; }

 private:
  double binom_log(std::int64_t k, std::int64_t r) const;

  GroupedData g_;
  double p_;
  double log_p_;
  double log_q_;
  std::vector<double> lfact_;  // lfact_[i] = lgamma(i + 1)
};

// Exact distribution of the grouped data for a given type vector, computed
// by direct convolution of the four independent intervention-count binomials
// (forward pmf recurrences, no log-gamma).  Serves as the independent oracle
// for log_data_probability on small instances.
std::map<GroupedData, double> enumerate_distribution(const TypeVector& t,
                                                     double p,
                                                     std::int64_t cap = 20);

}  // namespace strata
