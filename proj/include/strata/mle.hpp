#pragma once

#include <cstdint>
#include <vector>

#include "strata/types.hpp"

namespace strata {

enum class MleMethod { ExactEnumeration, HeuristicSearch };

struct MleResult {
  TypeVector t_hat;
  double p_used = 0;
  double log_likelihood = 0;
  MleMethod method = MleMethod::ExactEnumeration;
  bool converged = true;
  // Exact method: every maximizer, in lexicographic order (t_hat is the
  // first).  Empty for the heuristic, which cannot certify ties.
  std::vector<TypeVector> ties;
};

// Full enumeration of the simplex sum(t) = n; O(n^3) points.  Tie-break:
// lexicographically smallest type vector.
MleResult mle_exact(const GroupedData& g, double p, std::int64_t cap = 200);

// Multi-start hill climbing on the simplex: the baseline start plus
// `restarts` seeded random compositions of n; moves transfer +/-delta
// between ordered coordinate pairs, delta in {1, 10, 100, ...} capped at n.
// Deterministic given (g, p, seed, restarts).
MleResult mle_heuristic(const GroupedData& g, double p, std::uint64_t seed,
                        int restarts, std::int64_t max_iterations = 100000);

// Profile over a grid of p values: the full estimator at each grid point,
// best joint likelihood wins; ties prefer smaller p, then lexicographic t.
MleResult mle_profile_p(const GroupedData& g, const std::vector<double>& grid,
                        std::uint64_t seed, std::int64_t exact_cap = 200,
                        int restarts = 20);

// Pipeline convenience: a 99-point grid on [0.01, 0.99] followed by one
// refinement pass on a 21-point grid around the winner.
MleResult mle_estimate_p(const GroupedData& g, std::uint64_t seed,
                         std::int64_t exact_cap = 200, int restarts = 20);

}  // namespace strata
