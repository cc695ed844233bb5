#include <cmath>
#include <stdexcept>

#include <doctest.h>

#include "oracles.hpp"
#include "strata/model.hpp"
#include "strata/simulator.hpp"

using namespace strata;

namespace {

// Seeded random type vector with total in [0, max_total].
TypeVector random_type_vector(Rng& rng, std::int64_t max_total) {
  const auto n = std::int64_t(rng.uniform() * double(max_total + 1));
  std::array<std::int64_t, 3> cuts;
  for (auto& c : cuts) c = std::int64_t(rng.uniform() * double(n + 1));
  std::sort(cuts.begin(), cuts.end());
  return {cuts[0], cuts[1] - cuts[0], cuts[2] - cuts[1], n - cuts[2]};
}

GroupedData swapped_arms(const GroupedData& g) { return {g.g3, g.g4, g.g1, g.g2}; }
TypeVector swapped_types(const TypeVector& t) {
  return {t.never, t.compliers, t.defiers, t.always};
}

}  // namespace

TEST_CASE("log_binom_pmf basics") {
  CHECK(log_binom_pmf(0, 0, 0.5).log() == doctest::Approx(0.0));
  CHECK(log_binom_pmf(1, 2, 0.5).log() == doctest::Approx(std::log(0.5)));
  CHECK(log_binom_pmf(5, 3, 0.4).is_zero());
  CHECK(log_binom_pmf(-1, 3, 0.4).is_zero());
  CHECK_THROWS_AS(log_binom_pmf(1, 2, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(log_binom_pmf(1, 2, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(log_binom_pmf(1, -1, 0.5), std::invalid_argument);
}

TEST_CASE("feasible_ell_range intersections") {
  const EllRange full = feasible_ell_range({1, 1, 1, 1}, {1, 1, 1, 1});
  CHECK(full.lo == 0);
  CHECK(full.hi == 1);

  const EllRange pinned = feasible_ell_range({1, 0, 0, 0}, {0, 1, 0, 0});
  CHECK(pinned.lo == 1);
  CHECK(pinned.hi == 1);

  const EllRange none = feasible_ell_range({2, 0, 0, 0}, {0, 0, 0, 3});
  CHECK(none.empty());
  CHECK(none.width() == 0);
}

TEST_CASE("log_data_probability worked examples") {
  CHECK(log_data_probability({1, 0, 0, 0}, {0, 1, 0, 0}, 0.5).log() ==
        doctest::Approx(std::log(0.5)));
  CHECK(log_data_probability({0, 0, 1, 0}, {1, 0, 0, 0}, 0.3).log() ==
        doctest::Approx(std::log(0.3)));
  CHECK(log_data_probability({1, 1, 1, 1}, {1, 1, 1, 1}, 0.5).log() ==
        doctest::Approx(std::log(0.125)));
  // total mismatch hits the indicator, not an error
  CHECK(log_data_probability({2, 0, 0, 0}, {0, 0, 0, 3}, 0.5).is_zero());
  CHECK_THROWS_AS(log_data_probability({1, 0, 0, 0}, {0, 1, 0, 0}, 1.2),
                  std::invalid_argument);
}

TEST_CASE("enumerate_distribution basics") {
  const auto single = enumerate_distribution({1, 0, 0, 0}, 0.5);
  CHECK(single.size() == 2);
  CHECK(single.at({0, 1, 0, 0}) == doctest::Approx(0.5));
  CHECK(single.at({0, 0, 0, 1}) == doctest::Approx(0.5));

  const auto empty = enumerate_distribution({0, 0, 0, 0}, 0.3);
  CHECK(empty.size() == 1);
  CHECK(empty.at({0, 0, 0, 0}) == doctest::Approx(1.0));

  const auto four = enumerate_distribution({1, 1, 1, 1}, 0.5);
  CHECK(four.at({1, 1, 1, 1}) == doctest::Approx(0.125));

  CHECK_THROWS_AS(enumerate_distribution({21, 0, 0, 0}, 0.5, 20),
                  std::invalid_argument);

  double total = 0;
  for (const auto& [g, pr] : four) total += pr;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("enumerate_distribution matches assignment-vector brute force") {
  const TypeVector fixtures[] = {
      {2, 1, 1, 0}, {0, 2, 3, 1}, {3, 3, 2, 2}, {1, 0, 0, 4}};
  for (const TypeVector& t : fixtures) {
    for (const double p : {0.3, 0.5, 0.77}) {
      const auto fast = enumerate_distribution(t, p);
      const auto slow = testing::brute_force_distribution(t, p);
      REQUIRE(fast.size() == slow.size());
      for (const auto& [g, pr] : slow)
        CHECK(fast.at(g) == doctest::Approx(pr).epsilon(1e-12));
    }
  }
}

TEST_CASE("likelihood normalizes and matches the enumeration oracle") {
  Rng rng(20250401);
  for (int rep = 0; rep < 40; ++rep) {
    const TypeVector t = random_type_vector(rng, 12);
    const std::int64_t n = t.total();
    for (const double p : {0.2, 0.5, 0.505, 0.8}) {
      const auto oracle = enumerate_distribution(t, p);
      double total = 0;
      // every consistent g, not just those in the oracle's support
      for (std::int64_t g1 = 0; g1 <= n; ++g1)
        for (std::int64_t g2 = 0; g2 <= n - g1; ++g2)
          for (std::int64_t g3 = 0; g3 <= n - g1 - g2; ++g3) {
            const GroupedData g{g1, g2, g3, n - g1 - g2 - g3};
            const LogProb lp = log_data_probability(t, g, p);
            total += lp.prob();
            const auto it = oracle.find(g);
            const double expected = it == oracle.end() ? 0.0 : it->second;
            CHECK(lp.prob() == doctest::Approx(expected).epsilon(0).scale(1).margin(1e-10));
            // support is exactly the nonempty feasible range
            const bool zero = lp.is_zero();
            const bool empty_range = feasible_ell_range(t, g).empty();
            CHECK(zero == (empty_range || g.total() != t.total()));
          }
      CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
    }
  }
}

TEST_CASE("relabeling the arms mirrors p") {
  Rng rng(777);
  for (int rep = 0; rep < 25; ++rep) {
    const TypeVector t = random_type_vector(rng, 10);
    const std::int64_t n = t.total();
    const double p = 0.1 + 0.8 * rng.uniform();
    for (std::int64_t g1 = 0; g1 <= n; ++g1)
      for (std::int64_t g2 = 0; g2 <= n - g1; ++g2)
        for (std::int64_t g3 = 0; g3 <= n - g1 - g2; ++g3) {
          const GroupedData g{g1, g2, g3, n - g1 - g2 - g3};
          const double lhs = log_data_probability(t, g, p).prob();
          const double rhs =
              log_data_probability(swapped_types(t), swapped_arms(g), 1.0 - p)
                  .prob();
          CHECK(lhs == doctest::Approx(rhs).epsilon(0).scale(1).margin(1e-10));
        }
  }
}

TEST_CASE("LogProb guards") {
  CHECK_THROWS_AS(LogProb::from_log(0.5), std::invalid_argument);
  CHECK(LogProb::from_log(1e-12).log() == 0.0);
  CHECK(LogProb::zero().prob() == 0.0);
  CHECK(LogProb::from_log(-1.0).prob() == doctest::Approx(std::exp(-1.0)));
}
