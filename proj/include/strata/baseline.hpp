#pragma once

#include "strata/types.hpp"

namespace strata {

// Strata shares implied by the no-defier assumption, plus the empirical
// assignment fraction.  When the first stage is negative the instrument
// orientation is inconsistent with that assumption; the shares are still
// reported but flagged.
struct BaselineShares {
  double first_stage = 0;
  double complier_share = 0;  // equals first_stage
  double never_share = 0;
  double always_share = 0;
  double defier_share = 0;  // identically zero under monotonicity
  double p_empirical = 0;
  bool monotonicity_consistent = true;
};

// Treated fraction in the intervention arm minus treated fraction in the
// control arm.  Requires both arms nonempty.
double first_stage(const GroupedData& g);

BaselineShares monotonicity_shares(const GroupedData& g);

// Baseline shares scaled to counts and rounded to the simplex (largest
// remainder), for use as a deterministic solver start.  Negative shares are
// clamped before rounding; an empty arm falls back to an even split.
TypeVector baseline_start(const GroupedData& g);

}  // namespace strata
