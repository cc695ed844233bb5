#include <stdexcept>

#include <doctest.h>

#include "oracles.hpp"
#include "strata/baseline.hpp"

using namespace strata;

TEST_CASE("first stage on the bundled sample") {
  const GroupedData g = testing::paper_counts();
  CHECK(first_stage(g) == doctest::Approx(0.0595).epsilon(0).margin(5e-4));
  CHECK(first_stage({5, 0, 0, 5}) == doctest::Approx(1.0));
  CHECK(first_stage({1, 1, 1, 1}) == doctest::Approx(0.0));
  CHECK_THROWS_AS(first_stage({0, 0, 1, 1}), std::invalid_argument);
  CHECK_THROWS_AS(first_stage({1, 1, 0, 0}), std::invalid_argument);
}

TEST_CASE("monotonicity shares replicate the no-defier accounting") {
  const BaselineShares s = monotonicity_shares(testing::paper_counts());
  CHECK(s.always_share == doctest::Approx(0.372).epsilon(0).margin(1e-3));
  CHECK(s.never_share == doctest::Approx(0.568).epsilon(0).margin(1e-3));
  CHECK(s.complier_share == doctest::Approx(0.060).epsilon(0).margin(1e-3));
  CHECK(s.p_empirical == doctest::Approx(0.5054).epsilon(0).margin(1e-4));
  CHECK(s.defier_share == 0.0);
  CHECK(s.monotonicity_consistent);
  CHECK(s.never_share + s.always_share + s.complier_share ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("monotonicity shares edge patterns") {
  const BaselineShares perfect = monotonicity_shares({5, 0, 0, 5});
  CHECK(perfect.always_share == 0.0);
  CHECK(perfect.never_share == 0.0);
  CHECK(perfect.complier_share == doctest::Approx(1.0));

  const BaselineShares defiance = monotonicity_shares({0, 5, 5, 0});
  CHECK(defiance.first_stage == doctest::Approx(-1.0));
  CHECK_FALSE(defiance.monotonicity_consistent);
}

TEST_CASE("baseline start lands on the simplex") {
  const GroupedData cases[] = {
      testing::paper_counts(), {5, 0, 0, 5}, {1, 1, 1, 1}, {3, 0, 0, 0},
      {7, 3, 2, 9}};
  for (const GroupedData& g : cases) {
    const TypeVector t = baseline_start(g);
    CHECK(t.total() == g.total());
    CHECK(t.never >= 0);
    CHECK(t.defiers >= 0);
    CHECK(t.compliers >= 0);
    CHECK(t.always >= 0);
  }
  // shares scaled by n, largest remainder: stays within one of the target
  const GroupedData g = testing::paper_counts();
  const BaselineShares s = monotonicity_shares(g);
  const TypeVector t = baseline_start(g);
  CHECK(std::abs(double(t.never) - s.never_share * double(g.total())) <= 1.0);
  CHECK(std::abs(double(t.always) - s.always_share * double(g.total())) <= 1.0);
  CHECK(t.defiers == 0);
}
