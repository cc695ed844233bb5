#include "strata/pipeline.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>

#include "strata/io.hpp"
#include "strata/least_squares.hpp"
#include "strata/mle.hpp"
#include "strata/simulator.hpp"
#include "strata/version.hpp"

namespace strata {

namespace {

using ordered_json = nlohmann::ordered_json;

double round4(double x) { return std::round(x * 1e4) / 1e4; }

std::array<double, 4> shares_of(const TypeVector& t, std::int64_t n) {
  const auto a = t.as_array();
  return {double(a[0]) / double(n), double(a[1]) / double(n),
          double(a[2]) / double(n), double(a[3]) / double(n)};
}

const char* mode_name(DesignParams::Mode m) {
  switch (m) {
    case DesignParams::Mode::Fixed: return "fixed";
    case DesignParams::Mode::EstimateEmpirical: return "empirical";
    case DesignParams::Mode::EstimateJoint: return "estimate";
  }
  return "?";
}

EstimatorBlock make_ls_block(const GroupedData& g, const RunConfig& cfg) {
  EstimatorBlock b;
  b.name = "ls";
  b.p_mode = mode_name(cfg.design.mode);

  LsSolution sol;
  if (cfg.design.mode == DesignParams::Mode::EstimateJoint) {
    sol = ls_estimate_free_p(g, cfg.seed, cfg.restarts);
    b.method = "golden-section over p, multi-start local search inside";
  } else {
    const double p = cfg.design.mode == DesignParams::Mode::Fixed
                         ? cfg.design.p
                         : double(g.g1 + g.g2) / double(g.total());
    sol = ls_estimate(g, p, cfg.seed, cfg.restarts);
    b.method = "multi-start local search";
  }
  b.t_hat = sol.t_hat;
  b.shares = shares_of(sol.t_hat, g.total());
  b.p_used = sol.p_used;
  b.criterion = sol.objective;
  b.ties = sol.ties;
  b.starts = sol.starts_tried;
  b.moves = sol.moves_taken;
  return b;
}

EstimatorBlock make_mle_block(const GroupedData& g, const RunConfig& cfg) {
  EstimatorBlock b;
  b.name = "mle";
  b.p_mode = mode_name(cfg.design.mode);

  MleResult r;
  if (cfg.design.mode == DesignParams::Mode::EstimateJoint) {
    r = mle_estimate_p(g, cfg.seed, cfg.mle_exact_cap, cfg.restarts);
    b.method = "profile over p grid";
  } else {
    const double p = cfg.design.mode == DesignParams::Mode::Fixed
                         ? cfg.design.p
                         : double(g.g1 + g.g2) / double(g.total());
    r = g.total() <= cfg.mle_exact_cap
            ? mle_exact(g, p, cfg.mle_exact_cap)
            : mle_heuristic(g, p, cfg.seed, cfg.restarts);
  }
  if (b.method.empty())
    b.method = r.method == MleMethod::ExactEnumeration ? "exact enumeration"
                                                       : "heuristic search";
  b.t_hat = r.t_hat;
  b.shares = shares_of(r.t_hat, g.total());
  b.p_used = r.p_used;
  b.criterion = r.log_likelihood;
  b.ties = r.ties;
  b.converged = r.converged;
  return b;
}

EstimatorConfig block_estimator_config(const RunConfig& cfg, bool ls) {
  EstimatorConfig e;
  e.kind = ls ? EstimatorKind::LeastSquares : EstimatorKind::MaximumLikelihood;
  e.design = cfg.design;
  e.restarts = cfg.restarts;
  e.mle_exact_cap = cfg.mle_exact_cap;
  return e;
}

ordered_json type_vector_json(const TypeVector& t) {
  return ordered_json{{"never", t.never},
                      {"defiers", t.defiers},
                      {"compliers", t.compliers},
                      {"always", t.always}};
}

ordered_json quad_json(const std::array<double, 4>& v, bool round) {
  auto f = [&](double x) { return round ? round4(x) : x; };
  return ordered_json{{"never", f(v[0])},
                      {"defiers", f(v[1])},
                      {"compliers", f(v[2])},
                      {"always", f(v[3])}};
}

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

}  // namespace

EstimateReport run_pipeline(const RunConfig& cfg) {
  if (cfg.design.mode == DesignParams::Mode::Fixed)
    require_open_unit(cfg.design.p, "run_pipeline");
  if (cfg.bootstrap_replications < 0)
    throw std::invalid_argument("run_pipeline: negative bootstrap replications");

  EstimateReport report;
  if (cfg.counts) {
    report.g = *cfg.counts;
    report.source = "inline";
  } else if (cfg.input_path) {
    report.g = load_grouped(*cfg.input_path);
    report.source = *cfg.input_path;
  } else {
    throw std::invalid_argument("run_pipeline: no input provided");
  }
  require_sample(report.g);
  report.seed = cfg.seed;

  try {
    report.baseline = monotonicity_shares(report.g);
  } catch (const std::exception& e) {
    report.baseline_error = e.what();
  }

  if (cfg.run_ls) report.estimators.push_back(make_ls_block(report.g, cfg));
  if (cfg.run_mle) report.estimators.push_back(make_mle_block(report.g, cfg));

  if (cfg.bootstrap_replications > 0) {
    for (std::size_t i = 0; i < report.estimators.size(); ++i) {
      auto& block = report.estimators[i];
      const EstimatorConfig est = block_estimator_config(cfg, block.name == "ls");
      block.bootstrap = bootstrap_se(
          report.g, est, cfg.bootstrap_replications, derive_seed(cfg.seed, 7, i),
          cfg.threads, /*keep_estimates=*/false, cfg.bootstrap_hold_p);
    }
  }
  return report;
}

std::string render_json(const EstimateReport& report) {
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["software"] = ordered_json{{"name", "strata"}, {"version", kVersion}};
  doc["seed"] = report.seed;
  doc["input"] = ordered_json{{"source", report.source},
                              {"g", report.g.as_array()},
                              {"n", report.g.total()}};

  if (report.baseline) {
    const auto& b = *report.baseline;
    doc["baseline"] =
        ordered_json{{"first_stage", round4(b.first_stage)},
                     {"never_share", round4(b.never_share)},
                     {"defier_share", round4(b.defier_share)},
                     {"complier_share", round4(b.complier_share)},
                     {"always_share", round4(b.always_share)},
                     {"p_empirical", b.p_empirical},
                     {"monotonicity_consistent", b.monotonicity_consistent}};
  } else {
    doc["baseline"] = ordered_json{{"error", report.baseline_error}};
  }

  doc["estimates"] = ordered_json::array();
  for (const auto& e : report.estimators) {
    ordered_json j;
    j["estimator"] = e.name;
    j["p_mode"] = e.p_mode;
    j["method"] = e.method;
    j["p_used"] = e.p_used;
    j["t_hat"] = type_vector_json(e.t_hat);
    j["shares"] = quad_json(e.shares, /*round=*/true);
    j[e.name == "ls" ? "objective" : "log_likelihood"] = e.criterion;
    auto ties = ordered_json::array();
    for (const auto& t : e.ties) ties.push_back(t.as_array());
    j["ties"] = std::move(ties);
    if (e.name == "ls")
      j["diagnostics"] =
          ordered_json{{"starts", e.starts}, {"moves", e.moves}};
    else
      j["diagnostics"] = ordered_json{{"converged", e.converged}};
    if (e.bootstrap) {
      const auto& bs = *e.bootstrap;
      j["bootstrap"] = ordered_json{{"replications", bs.replications},
                                    {"excluded", bs.excluded},
                                    {"se_t", quad_json(bs.se_t, false)},
                                    {"se_shares", quad_json(bs.se_shares, false)},
                                    {"se_p", bs.se_p}};
    }
    doc["estimates"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

std::string render_text(const EstimateReport& report) {
  std::string out;
  out += "strata ";
  out += kVersion;
  out += "\n";
  out += "input: " + report.source + "\n";
  const auto g = report.g.as_array();
  out += "g = [" + std::to_string(g[0]) + ", " + std::to_string(g[1]) + ", " +
         std::to_string(g[2]) + ", " + std::to_string(g[3]) +
         "], n = " + std::to_string(report.g.total()) + "\n";
  out += "seed = " + std::to_string(report.seed) + "\n\n";

  if (report.baseline) {
    const auto& b = *report.baseline;
    out += "baseline (no-defier accounting)\n";
    out += "  first stage      " + fmt("%.4f", b.first_stage) + "\n";
    out += "  never share      " + fmt("%.4f", b.never_share) + "\n";
    out += "  defier share     " + fmt("%.4f", b.defier_share) + "\n";
    out += "  complier share   " + fmt("%.4f", b.complier_share) + "\n";
    out += "  always share     " + fmt("%.4f", b.always_share) + "\n";
    out += "  p (empirical)    " + fmt("%.6f", b.p_empirical) + "\n";
    if (!b.monotonicity_consistent)
      out += "  warning: negative first stage; no-defier accounting untenable\n";
  } else {
    out += "baseline unavailable: " + report.baseline_error + "\n";
  }

  for (const auto& e : report.estimators) {
    out += "\n" + e.name + " (p mode " + e.p_mode + ", p = " +
           fmt("%.6f", e.p_used) + ")\n";
    out += "  method     " + e.method + "\n";
    const auto t = e.t_hat.as_array();
    out += "  counts     never=" + std::to_string(t[0]) +
           " defiers=" + std::to_string(t[1]) +
           " compliers=" + std::to_string(t[2]) +
           " always=" + std::to_string(t[3]) + "\n";
    out += "  shares     never=" + fmt("%.4f", e.shares[0]) +
           " defiers=" + fmt("%.4f", e.shares[1]) +
           " compliers=" + fmt("%.4f", e.shares[2]) +
           " always=" + fmt("%.4f", e.shares[3]) + "\n";
    out += std::string("  ") + (e.name == "ls" ? "objective  " : "loglik     ") +
           fmt("%.10g", e.criterion) + "\n";
    if (e.ties.size() > 1)
      out += "  ties       " + std::to_string(e.ties.size()) + " equally optimal\n";
    if (e.bootstrap) {
      const auto& bs = *e.bootstrap;
      out += "  bootstrap  " + std::to_string(bs.replications) +
             " replications, " + std::to_string(bs.excluded) + " excluded\n";
      out += "    se counts  never=" + fmt("%.2f", bs.se_t[0]) +
             " defiers=" + fmt("%.2f", bs.se_t[1]) +
             " compliers=" + fmt("%.2f", bs.se_t[2]) +
             " always=" + fmt("%.2f", bs.se_t[3]) + "\n";
      out += "    se shares  never=" + fmt("%.6f", bs.se_shares[0]) +
             " defiers=" + fmt("%.6f", bs.se_shares[1]) +
             " compliers=" + fmt("%.6f", bs.se_shares[2]) +
             " always=" + fmt("%.6f", bs.se_shares[3]) + "\n";
      out += "    se p       " + fmt("%.6f", bs.se_p) + "\n";
    }
  }
  return out;
}

}  // namespace strata
