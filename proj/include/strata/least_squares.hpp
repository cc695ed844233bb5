#pragma once

#include <cstdint>
#include <vector>

#include "strata/types.hpp"

namespace strata {

// Nonempty subset of the four type indices {1,2,3,4}, stored as a bit mask.
class SubsetId {
 public:
  explicit SubsetId(unsigned mask);

  bool contains(int i) const { return (mask_ >> (i - 1)) & 1u; }
  int size() const;
  unsigned mask() const { return mask_; }
  std::vector<int> members() const;

  auto operator<=>(const SubsetId&) const = default;

 private:
  unsigned mask_;
};

// The 15 nonempty subsets, ordered by size then lexicographically by members:
// {1},{2},{3},{4},{1,2},...,{3,4},{1,2,3},...,{2,3,4},{1,2,3,4}.
std::vector<SubsetId> enumerate_subsets();

// Actual minus intended intervention count within the subset:
//   sum_{i in I} [N(i,1)+N(i,2)] - p * sum_{i in I} t(i).
double randomization_error(const CountMatrix& n, const SubsetId& I, double p);

// Sum over the 15 subsets of err(I)^2 / (p(1-p) sum_{i in I} t(i)); a subset
// with zero type mass has identically zero error and contributes 0.
double objective_S(const CountMatrix& n, double p);

// The four free column splits that parameterize every feasible matrix:
//   a = N(3,1) in [0,g1]   (complement N(4,1) = g1-a)
//   b = N(1,2) in [0,g2]   (complement N(2,2) = g2-b)
//   c = N(2,3) in [0,g3]   (complement N(4,3) = g3-c)
//   d = N(1,4) in [0,g4]   (complement N(3,4) = g4-d)
struct Splits {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;
  std::int64_t d = 0;

  auto operator<=>(const Splits&) const = default;
};

CountMatrix splits_to_matrix(const GroupedData& g, const Splits& s);
TypeVector splits_to_types(const GroupedData& g, const Splits& s);

struct LsSolution {
  CountMatrix n_hat;
  TypeVector t_hat;
  double p_used = 0;
  double objective = 0;
  std::int64_t starts_tried = 0;
  std::int64_t moves_taken = 0;
  // Distinct type vectors among discovered solutions with equal objective,
  // in lexicographic order (t_hat is the first).
  std::vector<TypeVector> ties;
};

// Minimize objective_S over feasible integer matrices: multi-start golden
// section coordinate descent on the continuous 4-box, rounding, then integer
// coordinate local search with +/-delta moves, delta in {1, 10, 100, ...}.
// `restarts` is the total number of starts (baseline, box corners, then a
// seeded scrambled-Halton spread).  Deterministic given (g, p, seed,
// restarts).
LsSolution ls_estimate(const GroupedData& g, double p, std::uint64_t seed,
                       int restarts = 64);

// Variant with p estimated: golden-section minimization over
// p in [1/n, 1-1/n] with an integer re-solve at each probe.  Ties prefer the
// p closest to the empirical intervention fraction, which is always probed.
LsSolution ls_estimate_free_p(const GroupedData& g, std::uint64_t seed,
                              int restarts = 64);

}  // namespace strata
