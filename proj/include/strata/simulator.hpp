#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "strata/types.hpp"

namespace strata {

// Deterministic generator: a standard mt19937_64 stream with uniforms built
// from the top 53 bits.  Distribution sampling is done by the documented
// algorithms below rather than the <random> distribution classes, whose
// output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }
  // Uniform on [0, 1).
  double uniform() { return double(eng_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 eng_;
};

// Seed for an independent substream, via two splitmix64 steps over
// (seed, stream, index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream,
                          std::uint64_t index);

// Binomial(n, p) draw.  Inversion (BINV) when n*min(p,1-p) is small, the
// BTRS transformed-rejection sampler otherwise.  p in [0, 1].
std::int64_t binomial_draw(Rng& rng, std::int64_t n, double p);

// One multinomial draw of n items over the cell probabilities implied by
// weights (nonnegative, positive total), by conditional binomial splits.
std::vector<std::int64_t> multinomial_draw(Rng& rng, std::int64_t n,
                                           const std::vector<double>& weights);

struct SimConfig {
  TypeVector t;
  double p = 0.5;  // closed interval [0,1]; degenerate designs are allowed
  std::uint64_t seed = 1;
  std::int64_t replications = 1;
};

// One assignment draw: k_i ~ Binomial(t_i, p) per type, placed in the type's
// intervention cell with the remainder in its control cell.
CountMatrix simulate_once(const TypeVector& t, double p, std::uint64_t seed);

// Column totals of `replications` independent draws; replication r uses the
// seed derived from (cfg.seed, r), so the output is independent of any
// partitioning across workers.
std::vector<GroupedData> simulate_grouped(const SimConfig& cfg);

}  // namespace strata
