#include "strata/baseline.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

namespace strata {

double first_stage(const GroupedData& g) {
  require_nonnegative(g);
  if (g.g1 + g.g2 == 0 || g.g3 + g.g4 == 0)
    throw std::invalid_argument("first_stage: an assignment arm is empty");
  return double(g.g1) / double(g.g1 + g.g2) -
         double(g.g3) / double(g.g3 + g.g4);
}

BaselineShares monotonicity_shares(const GroupedData& g) {
  BaselineShares s;
  s.first_stage = first_stage(g);
  s.complier_share = s.first_stage;
  s.never_share = double(g.g2) / double(g.g1 + g.g2);
  s.always_share = double(g.g3) / double(g.g3 + g.g4);
  s.defier_share = 0.0;
  s.p_empirical = double(g.g1 + g.g2) / double(g.total());
  s.monotonicity_consistent = s.first_stage >= 0.0;
  return s;
}

TypeVector baseline_start(const GroupedData& g) {
  require_sample(g);
  const std::int64_t n = g.total();
  std::array<double, 4> share;
  if (g.g1 + g.g2 == 0 || g.g3 + g.g4 == 0) {
    share = {0.25, 0.25, 0.25, 0.25};
  } else {
    const BaselineShares s = monotonicity_shares(g);
    share = {s.never_share, 0.0, std::max(s.complier_share, 0.0),
             s.always_share};
    const double mass = share[0] + share[1] + share[2] + share[3];
    for (double& v : share) v /= mass;
  }

  // Largest-remainder rounding onto the simplex sum(t) = n.
  std::array<std::int64_t, 4> t{};
  std::array<double, 4> rem{};
  std::int64_t assigned = 0;
  for (int i = 0; i < 4; ++i) {
    const double exact = share[i] * double(n);
    t[i] = static_cast<std::int64_t>(exact);
    rem[i] = exact - double(t[i]);
    assigned += t[i];
  }
  std::array<int, 4> order{0, 1, 2, 3};
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return rem[a] > rem[b]; });
  for (int k = 0; assigned < n; ++k, ++assigned) t[order[k % 4]] += 1;
  return TypeVector::from_array(t);
}

}  // namespace strata
