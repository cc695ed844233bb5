#include "strata/mle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "strata/baseline.hpp"
#include "strata/model.hpp"
#include "strata/simulator.hpp"

namespace strata {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<std::int64_t> delta_ladder(std::int64_t n) {
  std::vector<std::int64_t> deltas;
  for (std::int64_t d = 1; d <= n; d *= 10) deltas.push_back(d);
  return deltas;
}

// Uniform random composition of n into four parts (three sorted cut points).
TypeVector random_composition(Rng& rng, std::int64_t n) {
  std::array<std::int64_t, 3> cuts;
  for (auto& c : cuts)
    c = std::int64_t(rng.uniform() * double(n + 1));
  std::sort(cuts.begin(), cuts.end());
  return {cuts[0], cuts[1] - cuts[0], cuts[2] - cuts[1], n - cuts[2]};
}

// Best-improvement hill climbing from one start; returns the local maximum.
TypeVector climb(const LogLikelihood& ll, TypeVector t,
                 const std::vector<std::int64_t>& deltas,
                 std::int64_t max_iterations, std::int64_t& iterations,
                 bool& converged) {
  double best = ll(t);
  while (iterations < max_iterations) {
    ++iterations;
    double move_best = best;
    TypeVector move_t = t;
    auto arr = t.as_array();
    for (int from = 0; from < 4; ++from) {
      if (arr[from] == 0) continue;
      for (int to = 0; to < 4; ++to) {
        if (to == from) continue;
        for (std::int64_t d : deltas) {
          if (d > arr[from]) break;
          auto next = arr;
          next[from] -= d;
          next[to] += d;
          const TypeVector cand = TypeVector::from_array(next);
          const double v = ll(cand);
          if (v > move_best) {
            move_best = v;
            move_t = cand;
          }
        }
      }
    }
    if (move_best <= best) return t;  // no strict improvement: local maximum
    best = move_best;
    t = move_t;
  }
  converged = false;
  return t;
}

}  // namespace

MleResult mle_exact(const GroupedData& g, double p, std::int64_t cap) {
  require_sample(g);
  require_open_unit(p, "mle_exact");
  const std::int64_t n = g.total();
  if (n > cap)
    throw std::invalid_argument("mle_exact: n=" + std::to_string(n) +
                                " exceeds cap " + std::to_string(cap));

  const LogLikelihood ll(g, p);
  MleResult res;
  res.p_used = p;
  res.method = MleMethod::ExactEnumeration;
  res.log_likelihood = kNegInf;

  // Ascending enumeration is lexicographic, so the first maximizer found is
  // the lexicographically smallest.
  for (std::int64_t t1 = 0; t1 <= n; ++t1)
    for (std::int64_t t2 = 0; t2 <= n - t1; ++t2)
      for (std::int64_t t3 = 0; t3 <= n - t1 - t2; ++t3) {
        const TypeVector t{t1, t2, t3, n - t1 - t2 - t3};
        const double v = ll(t);
        if (v == kNegInf) continue;
        if (v > res.log_likelihood) {
          res.log_likelihood = v;
          res.ties.clear();
          res.ties.push_back(t);
        } else if (v == res.log_likelihood) {
          res.ties.push_back(t);
        }
      }
  if (res.ties.empty())
    throw std::logic_error("mle_exact: no type vector has positive probability");
  res.t_hat = res.ties.front();
  return res;
}

MleResult mle_heuristic(const GroupedData& g, double p, std::uint64_t seed,
                        int restarts, std::int64_t max_iterations) {
  require_sample(g);
  require_open_unit(p, "mle_heuristic");
  if (restarts < 1) throw std::invalid_argument("mle_heuristic: restarts < 1");

  const std::int64_t n = g.total();
  const LogLikelihood ll(g, p);
  const auto deltas = delta_ladder(n);

  MleResult res;
  res.p_used = p;
  res.method = MleMethod::HeuristicSearch;
  res.log_likelihood = kNegInf;
  res.t_hat = baseline_start(g);

  std::int64_t iterations = 0;
  for (int r = 0; r <= restarts; ++r) {
    TypeVector start;
    if (r == 0) {
      start = baseline_start(g);
    } else {
      Rng rng(derive_seed(seed, 1, std::uint64_t(r)));
      start = random_composition(rng, n);
    }
    const TypeVector local =
        climb(ll, start, deltas, max_iterations, iterations, res.converged);
    const double v = ll(local);
    if (v > res.log_likelihood ||
        (v == res.log_likelihood && local < res.t_hat)) {
      res.log_likelihood = v;
      res.t_hat = local;
    }
  }
  return res;
}

MleResult mle_profile_p(const GroupedData& g, const std::vector<double>& grid,
                        std::uint64_t seed, std::int64_t exact_cap,
                        int restarts) {
  if (grid.empty()) throw std::invalid_argument("mle_profile_p: empty grid");
  for (double p : grid) require_open_unit(p, "mle_profile_p");
  require_sample(g);

  const bool exact = g.total() <= exact_cap;
  bool have = false;
  MleResult best;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    MleResult cur = exact ? mle_exact(g, grid[i], exact_cap)
                          : mle_heuristic(g, grid[i],
                                          derive_seed(seed, 2, i), restarts);
    const bool better =
        !have || cur.log_likelihood > best.log_likelihood ||
        (cur.log_likelihood == best.log_likelihood &&
         (cur.p_used < best.p_used ||
          (cur.p_used == best.p_used && cur.t_hat < best.t_hat)));
    if (better) {
      best = std::move(cur);
      have = true;
    }
  }
  return best;
}

MleResult mle_estimate_p(const GroupedData& g, std::uint64_t seed,
                         std::int64_t exact_cap, int restarts) {
  std::vector<double> grid;
  for (int i = 1; i <= 99; ++i) grid.push_back(double(i) / 100.0);
  const MleResult coarse = mle_profile_p(g, grid, seed, exact_cap, restarts);

  std::vector<double> fine;
  for (int i = -10; i <= 10; ++i) {
    const double p = coarse.p_used + double(i) / 1000.0;
    if (p > 0.0 && p < 1.0) fine.push_back(p);
  }
  return mle_profile_p(g, fine, seed, exact_cap, restarts);
}

}  // namespace strata
