#include "strata/types.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace strata {

bool CountMatrix::cell_allowed(int i, int j) {
  switch (i) {
    case 1: return j == 2 || j == 4;
    case 2: return j == 2 || j == 3;
    case 3: return j == 1 || j == 4;
    case 4: return j == 1 || j == 3;
    default: return false;
  }
}

bool CountMatrix::structural_zeros_hold() const {
  for (int i = 1; i <= 4; ++i)
    for (int j = 1; j <= 4; ++j)
      if (!cell_allowed(i, j) && at(i, j) != 0) return false;
  return true;
}

TypeVector CountMatrix::row_totals() const {
  TypeVector t;
  auto row = [&](int i) { return at(i, 1) + at(i, 2) + at(i, 3) + at(i, 4); };
  t.never = row(1);
  t.defiers = row(2);
  t.compliers = row(3);
  t.always = row(4);
  return t;
}

GroupedData CountMatrix::column_totals() const {
  GroupedData g;
  auto col = [&](int j) { return at(1, j) + at(2, j) + at(3, j) + at(4, j); };
  g.g1 = col(1);
  g.g2 = col(2);
  g.g3 = col(3);
  g.g4 = col(4);
  return g;
}

LogProb LogProb::from_log(double lp) {
  if (std::isnan(lp) || lp > 1e-9)
    throw std::invalid_argument("LogProb: log value " + std::to_string(lp) +
                                " exceeds 0");
  LogProb r;
  r.log_ = std::min(lp, 0.0);
  return r;
}

bool LogProb::is_zero() const {
  return std::isinf(log_) && log_ < 0;
}

double LogProb::prob() const {
  return is_zero() ? 0.0 : std::exp(log_);
}

void require_nonnegative(const GroupedData& g) {
  if (g.g1 < 0 || g.g2 < 0 || g.g3 < 0 || g.g4 < 0)
    throw std::invalid_argument("grouped data contains a negative count");
}

void require_nonnegative(const TypeVector& t) {
  if (t.never < 0 || t.defiers < 0 || t.compliers < 0 || t.always < 0)
    throw std::invalid_argument("type vector contains a negative count");
}

void require_sample(const GroupedData& g) {
  require_nonnegative(g);
  if (g.total() == 0)
    throw std::invalid_argument("grouped data is empty (all four cells zero)");
}

void require_open_unit(double p, const char* where) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument(std::string(where) + ": p=" +
                                std::to_string(p) + " outside (0,1)");
}

}  // namespace strata
