#include "strata/least_squares.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "strata/baseline.hpp"
#include "strata/simulator.hpp"

namespace strata {

namespace {

// Shared accumulation for the subset-weighted objective; both the matrix
// route and the split route feed the same per-type errors and totals through
// here so their results are bit-identical.
double weighted_subset_sum(const std::array<double, 4>& e,
                           const std::array<double, 4>& t, double inv_pq) {
  double s = 0;
  for (unsigned mask = 1; mask < 16; ++mask) {
    double err = 0, total = 0;
    for (int i = 0; i < 4; ++i) {
      if ((mask >> i) & 1u) {
        err += e[i];
        total += t[i];
      }
    }
    if (total > 0) s += err * err / total;
  }
  return s * inv_pq;
}

// Objective as a function of the four column splits.
class SplitObjective {
 public:
  SplitObjective(const GroupedData& g, double p)
      : g1_(double(g.g1)),
        g2_(double(g.g2)),
        g3_(double(g.g3)),
        g4_(double(g.g4)),
        p_(p),
        inv_pq_(1.0 / (p * (1.0 - p))) {}

  double operator()(double a, double b, double c, double d) const {
    const std::array<double, 4> m{b, g2_ - b, a, g1_ - a};
    const std::array<double, 4> t{b + d, (g2_ - b) + c, a + (g4_ - d),
                                  (g1_ - a) + (g3_ - c)};
    const std::array<double, 4> e{m[0] - p_ * t[0], m[1] - p_ * t[1],
                                  m[2] - p_ * t[2], m[3] - p_ * t[3]};
    return weighted_subset_sum(e, t, inv_pq_);
  }

  double eval(const Splits& s) const {
    return (*this)(double(s.a), double(s.b), double(s.c), double(s.d));
  }

 private:
  double g1_, g2_, g3_, g4_;
  double p_;
  double inv_pq_;
};

template <typename F>
double golden_min(F&& f, double lo, double hi, double tol) {
  static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - (hi - lo) * inv_phi;
  double d = lo + (hi - lo) * inv_phi;
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > tol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - (hi - lo) * inv_phi;
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + (hi - lo) * inv_phi;
      fd = f(d);
    }
  }
  return 0.5 * (lo + hi);
}

// Cyclic golden-section coordinate descent over the continuous box.
std::array<double, 4> descend(const SplitObjective& obj,
                              std::array<double, 4> x,
                              const std::array<double, 4>& hi) {
  double cur = obj(x[0], x[1], x[2], x[3]);
  for (int sweep = 0; sweep < 40; ++sweep) {
    const double before = cur;
    for (int c = 0; c < 4; ++c) {
      if (hi[c] == 0) continue;
      auto line = [&](double v) {
        auto y = x;
        y[c] = v;
        return obj(y[0], y[1], y[2], y[3]);
      };
      const double v = golden_min(line, 0.0, hi[c], 0.25);
      if (line(v) < cur) {
        x[c] = v;
        cur = line(v);
      }
    }
    if (before - cur <= 1e-10 * (1.0 + std::fabs(before))) break;
  }
  return x;
}

std::vector<std::int64_t> delta_ladder(std::int64_t span) {
  std::vector<std::int64_t> deltas;
  for (std::int64_t d = 1; d <= std::max<std::int64_t>(span, 1); d *= 10)
    deltas.push_back(d);
  return deltas;
}

// Round a continuous point to its best neighboring lattice point.
Splits best_rounding(const SplitObjective& obj, const std::array<double, 4>& x,
                     const std::array<std::int64_t, 4>& box) {
  std::array<std::array<std::int64_t, 2>, 4> choice;
  for (int i = 0; i < 4; ++i) {
    const std::int64_t f = std::clamp<std::int64_t>(
        std::int64_t(std::floor(x[i])), 0, box[i]);
    choice[i] = {f, std::min(f + 1, box[i])};
  }
  bool have = false;
  Splits best;
  double best_val = 0;
  for (unsigned m = 0; m < 16; ++m) {
    const Splits s{choice[0][m & 1], choice[1][(m >> 1) & 1],
                   choice[2][(m >> 2) & 1], choice[3][(m >> 3) & 1]};
    const double v = obj.eval(s);
    if (!have || v < best_val || (v == best_val && s < best)) {
      have = true;
      best = s;
      best_val = v;
    }
  }
  return best;
}

// Best-improvement local search over single-coordinate +/-delta moves.
Splits polish(const SplitObjective& obj, Splits s,
              const std::array<std::int64_t, 4>& box,
              const std::vector<std::int64_t>& deltas,
              std::int64_t& moves) {
  double best = obj.eval(s);
  while (true) {
    double move_best = best;
    Splits move_s = s;
    for (int coord = 0; coord < 4; ++coord) {
      std::int64_t Splits::*field =
          coord == 0 ? &Splits::a
                     : coord == 1 ? &Splits::b
                                  : coord == 2 ? &Splits::c : &Splits::d;
      const std::int64_t cur = s.*field;
      for (int sign : {+1, -1}) {
        for (std::int64_t d : deltas) {
          const std::int64_t v = cur + sign * d;
          if (v < 0 || v > box[coord]) break;
          Splits cand = s;
          cand.*field = v;
          const double val = obj.eval(cand);
          if (val < move_best) {
            move_best = val;
            move_s = cand;
          }
        }
      }
    }
    if (move_best >= best) return s;
    best = move_best;
    s = move_s;
    ++moves;
  }
}

double radical_inverse(unsigned base, std::uint64_t i) {
  const double inv = 1.0 / double(base);
  double f = inv, x = 0;
  while (i) {
    x += double(i % base) * f;
    i /= base;
    f *= inv;
  }
  return x;
}

Splits baseline_splits(const GroupedData& g) {
  const TypeVector t = baseline_start(g);
  Splits s;
  s.c = std::min(t.defiers, g.g3);
  s.b = std::clamp<std::int64_t>(g.g2 - t.defiers + s.c, 0, g.g2);
  s.d = std::clamp<std::int64_t>(t.never - s.b, 0, g.g4);
  s.a = std::clamp<std::int64_t>(t.compliers - g.g4 + s.d, 0, g.g1);
  return s;
}

}  // namespace

SubsetId::SubsetId(unsigned mask) : mask_(mask) {
  if (mask == 0 || mask > 15)
    throw std::invalid_argument("SubsetId: mask must be in [1, 15]");
}

int SubsetId::size() const {
  int k = 0;
  for (int i = 1; i <= 4; ++i) k += contains(i);
  return k;
}

std::vector<int> SubsetId::members() const {
  std::vector<int> m;
  for (int i = 1; i <= 4; ++i)
    if (contains(i)) m.push_back(i);
  return m;
}

std::vector<SubsetId> enumerate_subsets() {
  std::vector<SubsetId> out;
  for (unsigned mask = 1; mask <= 15; ++mask) out.push_back(SubsetId(mask));
  std::sort(out.begin(), out.end(), [](const SubsetId& x, const SubsetId& y) {
    if (x.size() != y.size()) return x.size() < y.size();
    return x.members() < y.members();
  });
  return out;
}

double randomization_error(const CountMatrix& n, const SubsetId& I, double p) {
  double actual = 0, intended = 0;
  const auto t = n.row_totals().as_array();
  for (int i = 1; i <= 4; ++i) {
    if (!I.contains(i)) continue;
    actual += double(n.intervention_count(i));
    intended += double(t[i - 1]);
  }
  return actual - p * intended;
}

double objective_S(const CountMatrix& n, double p) {
  require_open_unit(p, "objective_S");
  if (!n.structural_zeros_hold())
    throw std::invalid_argument("objective_S: structural zeros violated");
  const auto tv = n.row_totals().as_array();
  std::array<double, 4> t, e;
  for (int i = 0; i < 4; ++i) {
    t[i] = double(tv[i]);
    e[i] = double(n.intervention_count(i + 1)) - p * t[i];
  }
  return weighted_subset_sum(e, t, 1.0 / (p * (1.0 - p)));
}

CountMatrix splits_to_matrix(const GroupedData& g, const Splits& s) {
  CountMatrix m;
  m.at(3, 1) = s.a;
  m.at(4, 1) = g.g1 - s.a;
  m.at(1, 2) = s.b;
  m.at(2, 2) = g.g2 - s.b;
  m.at(2, 3) = s.c;
  m.at(4, 3) = g.g3 - s.c;
  m.at(1, 4) = s.d;
  m.at(3, 4) = g.g4 - s.d;
  return m;
}

TypeVector splits_to_types(const GroupedData& g, const Splits& s) {
  return {s.b + s.d, (g.g2 - s.b) + s.c, s.a + (g.g4 - s.d),
          (g.g1 - s.a) + (g.g3 - s.c)};
}

LsSolution ls_estimate(const GroupedData& g, double p, std::uint64_t seed,
                       int restarts) {
  require_sample(g);
  require_open_unit(p, "ls_estimate");
  if (restarts < 1) throw std::invalid_argument("ls_estimate: restarts < 1");

  const SplitObjective obj(g, p);
  const std::array<std::int64_t, 4> box{g.g1, g.g2, g.g3, g.g4};
  const std::array<double, 4> box_hi{double(g.g1), double(g.g2), double(g.g3),
                                     double(g.g4)};
  const auto deltas =
      delta_ladder(std::max({g.g1, g.g2, g.g3, g.g4}));

  // Cranley-Patterson rotation of the Halton spread, so the seed matters but
  // the spread stays low-discrepancy.
  std::array<double, 4> rot{};
  {
    Rng rng(derive_seed(seed, 3, 0));
    for (auto& r : rot) r = rng.uniform();
  }
  static constexpr unsigned bases[4] = {2, 3, 5, 7};

  LsSolution out;
  out.p_used = p;
  bool have = false;
  Splits best_splits;
  std::vector<TypeVector> ties;

  for (int k = 0; k < restarts; ++k) {
    std::array<double, 4> x0{};
    if (k == 0) {
      const Splits s = baseline_splits(g);
      x0 = {double(s.a), double(s.b), double(s.c), double(s.d)};
    } else if (k <= 16) {
      for (int i = 0; i < 4; ++i)
        x0[i] = ((unsigned(k - 1) >> i) & 1u) ? box_hi[i] : 0.0;
    } else {
      for (int i = 0; i < 4; ++i) {
        double u = radical_inverse(bases[i], std::uint64_t(k - 16)) + rot[i];
        u -= std::floor(u);
        x0[i] = u * box_hi[i];
      }
    }

    const auto x = descend(obj, x0, box_hi);
    Splits s = best_rounding(obj, x, box);
    s = polish(obj, s, box, deltas, out.moves_taken);
    const double val = obj.eval(s);
    const TypeVector t = splits_to_types(g, s);
    ++out.starts_tried;

    if (!have || val < out.objective) {
      have = true;
      out.objective = val;
      best_splits = s;
      out.t_hat = t;
      ties.assign(1, t);
    } else if (val == out.objective) {
      ties.push_back(t);
      if (t < out.t_hat || (t == out.t_hat && s < best_splits)) {
        out.t_hat = t;
        best_splits = s;
      }
    }
  }

  std::sort(ties.begin(), ties.end());
  ties.erase(std::unique(ties.begin(), ties.end()), ties.end());
  out.ties = std::move(ties);
  out.n_hat = splits_to_matrix(g, best_splits);
  return out;
}

LsSolution ls_estimate_free_p(const GroupedData& g, std::uint64_t seed,
                              int restarts) {
  require_sample(g);
  if (g.g1 + g.g2 == 0 || g.g3 + g.g4 == 0)
    throw std::invalid_argument(
        "ls_estimate_free_p: both assignment arms must be observed");

  const double n = double(g.total());
  const double p_lo = 1.0 / n;
  const double p_hi = 1.0 - 1.0 / n;
  const double p_emp = double(g.g1 + g.g2) / n;

  bool have = false;
  LsSolution best;
  double best_dist = 0;
  auto probe = [&](double p) {
    LsSolution sol = ls_estimate(g, p, seed, restarts);
    const double val = sol.objective;
    const double dist = std::fabs(p - p_emp);
    const bool better =
        !have || val < best.objective ||
        (val == best.objective &&
         (dist < best_dist || (dist == best_dist && p < best.p_used)));
    if (better) {
      best = std::move(sol);
      best_dist = dist;
      have = true;
    }
    return val;
  };

  probe(p_emp);  // the tie-break anchor is always evaluated
  if (p_hi - p_lo > 1e-4) {
    golden_min(probe, p_lo, p_hi, 1e-4);
  }
  return best;
}

}  // namespace strata
