#pragma once

// Test-only reference implementations, kept deliberately naive and
// independent of the search paths they are used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "strata/least_squares.hpp"
#include "strata/model.hpp"
#include "strata/types.hpp"

namespace strata::testing {

inline std::string data_dir() {
  const char* env = std::getenv("STRATA_DATA_DIR");
  return env ? env : "data";
}

inline GroupedData paper_counts() { return {86108, 113440, 72643, 122649}; }

// Exact distribution of the grouped data by brute force over all 2^n
// assignment vectors; usable for n up to ~14.
inline std::map<GroupedData, double> brute_force_distribution(
    const TypeVector& t, double p) {
  std::vector<int> type_of;  // 0 never, 1 defier, 2 complier, 3 always
  for (int i = 0; i < 4; ++i)
    for (std::int64_t k = 0; k < t.as_array()[i]; ++k) type_of.push_back(i);
  const int n = int(type_of.size());

  std::map<GroupedData, double> dist;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    GroupedData g{};
    int assigned = 0;
    for (int i = 0; i < n; ++i) {
      const bool intervention = (mask >> i) & 1ull;
      assigned += intervention;
      switch (type_of[i]) {
        case 0: (intervention ? g.g2 : g.g4) += 1; break;
        case 1: (intervention ? g.g2 : g.g3) += 1; break;
        case 2: (intervention ? g.g1 : g.g4) += 1; break;
        case 3: (intervention ? g.g1 : g.g3) += 1; break;
      }
    }
    dist[g] += std::pow(p, assigned) * std::pow(1.0 - p, n - assigned);
  }
  return dist;
}

// All type vectors on the simplex sum(t) = n, in lexicographic order.
inline std::vector<TypeVector> simplex_points(std::int64_t n) {
  std::vector<TypeVector> out;
  for (std::int64_t t1 = 0; t1 <= n; ++t1)
    for (std::int64_t t2 = 0; t2 <= n - t1; ++t2)
      for (std::int64_t t3 = 0; t3 <= n - t1 - t2; ++t3)
        out.push_back({t1, t2, t3, n - t1 - t2 - t3});
  return out;
}

struct SimplexMax {
  double log_likelihood;
  std::vector<TypeVector> argmax;  // lexicographic order
};

inline SimplexMax simplex_argmax(const GroupedData& g, double p) {
  const LogLikelihood ll(g, p);
  SimplexMax best{-std::numeric_limits<double>::infinity(), {}};
  for (const TypeVector& t : simplex_points(g.total())) {
    const double v = ll(t);
    if (std::isinf(v)) continue;
    if (v > best.log_likelihood) {
      best.log_likelihood = v;
      best.argmax.assign(1, t);
    } else if (v == best.log_likelihood) {
      best.argmax.push_back(t);
    }
  }
  return best;
}

struct LsExhaustive {
  double objective;
  std::vector<TypeVector> argmin;  // distinct, lexicographic order
};

// Full scan over every feasible matrix via the four column splits.
inline LsExhaustive exhaustive_ls_min(const GroupedData& g, double p) {
  LsExhaustive best{std::numeric_limits<double>::infinity(), {}};
  for (std::int64_t a = 0; a <= g.g1; ++a)
    for (std::int64_t b = 0; b <= g.g2; ++b)
      for (std::int64_t c = 0; c <= g.g3; ++c)
        for (std::int64_t d = 0; d <= g.g4; ++d) {
          const Splits s{a, b, c, d};
          const double v = objective_S(splits_to_matrix(g, s), p);
          if (v < best.objective) {
            best.objective = v;
            best.argmin.assign(1, splits_to_types(g, s));
          } else if (v == best.objective) {
            const TypeVector t = splits_to_types(g, s);
            if (std::find(best.argmin.begin(), best.argmin.end(), t) ==
                best.argmin.end())
              best.argmin.push_back(t);
          }
        }
  std::sort(best.argmin.begin(), best.argmin.end());
  return best;
}

}  // namespace strata::testing
