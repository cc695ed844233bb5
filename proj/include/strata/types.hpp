#pragma once

#include <array>
#include <compare>
#include <cstdint>

namespace strata {

// Observed cell counts of the instrument-by-treatment cross-tabulation.
//   g1: treated, intervention group   (Z=1, D=1)
//   g2: untreated, intervention group (Z=1, D=0)
//   g3: treated, control group        (Z=0, D=1)
//   g4: untreated, control group      (Z=0, D=0)
// The instrument and treatment exist only through this cell encoding.
struct GroupedData {
  std::int64_t g1 = 0;
  std::int64_t g2 = 0;
  std::int64_t g3 = 0;
  std::int64_t g4 = 0;

  std::int64_t total() const { return g1 + g2 + g3 + g4; }
  std::array<std::int64_t, 4> as_array() const { return {g1, g2, g3, g4}; }
  static GroupedData from_array(const std::array<std::int64_t, 4>& a) {
    return {a[0], a[1], a[2], a[3]};
  }

  auto operator<=>(const GroupedData&) const = default;
};

// Latent counts of the four compliance types.  The default comparison is
// lexicographic on (never, defiers, compliers, always); the estimators use
// it as their tie-break order.
struct TypeVector {
  std::int64_t never = 0;      // untreated under either assignment
  std::int64_t defiers = 0;    // treated only under control assignment
  std::int64_t compliers = 0;  // treated only under intervention assignment
  std::int64_t always = 0;     // treated under either assignment

  std::int64_t total() const { return never + defiers + compliers + always; }
  std::array<std::int64_t, 4> as_array() const {
    return {never, defiers, compliers, always};
  }
  static TypeVector from_array(const std::array<std::int64_t, 4>& a) {
    return {a[0], a[1], a[2], a[3]};
  }

  auto operator<=>(const TypeVector&) const = default;
};

// Type-by-group counts.  Rows are types in the TypeVector order, columns are
// observed groups in the GroupedData order.  Eight of the sixteen cells are
// structurally impossible: a type can only appear in one intervention-arm
// group and one control-arm group.
class CountMatrix {
 public:
  // 1-based indices, matching the (i, j) convention used throughout.
  std::int64_t& at(int i, int j) { return n_[i - 1][j - 1]; }
  std::int64_t at(int i, int j) const { return n_[i - 1][j - 1]; }

  // Cells that can hold participants: (1,2) (1,4) (2,2) (2,3) (3,1) (3,4)
  // (4,1) (4,3).
  static bool cell_allowed(int i, int j);
  bool structural_zeros_hold() const;

  TypeVector row_totals() const;
  GroupedData column_totals() const;

  // Intervention-arm count of type i: the single nonzero cell in columns 1-2.
  std::int64_t intervention_count(int i) const { return n_[i - 1][0] + n_[i - 1][1]; }

  auto operator<=>(const CountMatrix&) const = default;

 private:
  std::array<std::array<std::int64_t, 4>, 4> n_{};
};

// Assignment design: the Bernoulli parameter and how it enters estimation.
struct DesignParams {
  enum class Mode {
    Fixed,              // p supplied by the caller
    EstimateEmpirical,  // p set to the empirical intervention fraction
    EstimateJoint,      // p estimated jointly with the type vector
  };

  double p = 0.5;
  Mode mode = Mode::Fixed;
};

// A probability held in log space, with an explicit representation for zero.
class LogProb {
 public:
  LogProb() = default;  // probability zero

  static LogProb zero() { return LogProb(); }
  // Accepts -inf (zero probability); tiny positive log values from rounding
  // are clamped to 0.
  static LogProb from_log(double lp);

  bool is_zero() const;
  double log() const { return log_; }  // -inf when zero
  double prob() const;

  auto operator<=>(const LogProb&) const = default;

 private:
  double log_ = -1.0 / 0.0;
};

// Shared precondition checks; throw std::invalid_argument on violation.
void require_nonnegative(const GroupedData& g);
void require_nonnegative(const TypeVector& t);
void require_sample(const GroupedData& g);  // nonnegative and total > 0
void require_open_unit(double p, const char* where);

}  // namespace strata
