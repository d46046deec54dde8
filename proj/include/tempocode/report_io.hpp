#pragma once

// Report rendering: aligned text tables, CSV, JSON (with config echo) and
// gnuplot-style two-column curve files.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "tempocode/config.hpp"
#include "tempocode/experiments.hpp"

namespace tempocode::report {

inline std::string fmt(const char* spec, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, x);
  return buf;
}

inline std::string pct(double frac) { return fmt("%.1f%%", 100.0 * frac); }

inline std::string ci_pct(const Interval& ci) {
  return "[" + fmt("%.1f", 100.0 * ci.low) + ", " + fmt("%.1f", 100.0 * ci.high) + "]";
}

inline std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

inline std::string display_label(const std::string& label, const std::string& pattern) {
  return pattern.empty() ? label : label + " (" + pattern + ")";
}

using CurveSet = std::map<std::string, std::string>;  // file name -> contents

// ---------------------------------------------------------------- discrimination

inline std::string to_text(const DiscriminationReport& r) {
  std::string s = "Traversal discrimination (sigma = " + fmt("%.2f", r.sigma) + ", " +
                  std::to_string(r.objects.empty() ? 0 : r.objects.front().dense.total) +
                  " test trials per object, seed " + std::to_string(r.seed) + ")\n\n";
  s += pad("Object", 24) + pad("Dense accuracy", 28) + "Temporal accuracy\n";
  auto row = [&](const std::string& name, const Tally& d, const Tally& t) {
    s += pad(name, 24) + pad(pct(d.accuracy()) + " " + ci_pct(d.ci95()), 28) + pct(t.accuracy()) + " " +
         ci_pct(t.ci95()) + "\n";
  };
  for (const auto& o : r.objects) row(display_label(o.label, o.pattern), o.dense, o.temporal);
  row("Overall", r.dense, r.temporal);
  s += "\nGap: " + fmt("%+.1f", r.gap_pp()) + " pp (95% Wilson intervals in brackets)\n";
  return s;
}

inline std::string csv_header() { return "experiment,param,dense_acc,temporal_acc,gap_pp,ci_low,ci_high\n"; }

// ci_low/ci_high bound the temporal accuracy; the JSON report carries both.
inline std::string csv_row(const std::string& experiment, const std::string& param, const Tally& d, const Tally& t) {
  const auto ci = t.ci95();
  return experiment + "," + param + "," + fmt("%.6f", d.accuracy()) + "," + fmt("%.6f", t.accuracy()) + "," +
         fmt("%.6f", 100.0 * (t.accuracy() - d.accuracy())) + "," + fmt("%.6f", ci.low) + "," +
         fmt("%.6f", ci.high) + "\n";
}

inline std::string to_csv(const DiscriminationReport& r) {
  std::string s = csv_header();
  for (const auto& o : r.objects) s += csv_row("discriminate", o.label, o.dense, o.temporal);
  s += csv_row("discriminate", "overall", r.dense, r.temporal);
  return s;
}

inline nlohmann::ordered_json tally_json(const Tally& t) {
  const auto ci = t.ci95();
  return {{"correct", t.correct}, {"total", t.total}, {"accuracy", t.accuracy()}, {"ci95", {ci.low, ci.high}}};
}

inline nlohmann::ordered_json results_json(const DiscriminationReport& r) {
  nlohmann::ordered_json objs = nlohmann::ordered_json::array();
  for (const auto& o : r.objects)
    objs.push_back({{"label", o.label}, {"pattern", o.pattern}, {"dense", tally_json(o.dense)},
                    {"temporal", tally_json(o.temporal)}});
  return {{"sigma", r.sigma},
          {"seed", r.seed},
          {"objects", objs},
          {"overall", {{"dense", tally_json(r.dense)}, {"temporal", tally_json(r.temporal)}, {"gap_pp", r.gap_pp()}}}};
}

inline nlohmann::ordered_json envelope(const char* experiment, const Config& cfg, std::uint64_t seed) {
  return {{"experiment", experiment}, {"seed", seed}, {"config", config_to_json(cfg)}};
}

inline std::string to_json(const DiscriminationReport& r, const Config& cfg) {
  auto j = envelope("discriminate", cfg, r.seed);
  j["results"] = results_json(r);
  return j.dump(2) + "\n";
}

inline CurveSet curves(const DiscriminationReport& r) {
  std::string dense = "# object_index dense_accuracy\n", temporal = "# object_index temporal_accuracy\n";
  for (std::size_t i = 0; i < r.objects.size(); ++i) {
    dense += std::to_string(i) + " " + fmt("%.6f", r.objects[i].dense.accuracy()) + "\n";
    temporal += std::to_string(i) + " " + fmt("%.6f", r.objects[i].temporal.accuracy()) + "\n";
  }
  return {{"dense.dat", dense}, {"temporal.dat", temporal}};
}

// ---------------------------------------------------------------- noise sweep

inline std::string to_text(const NoiseSweepReport& r) {
  std::string s = "Noise robustness (seed " + std::to_string(r.seed) + ")\n\n";
  s += pad("Noise (sigma)", 15) + pad("Dense accuracy", 16) + pad("Temporal accuracy", 19) + pad("Gap", 11) +
       "Temporal 95% CI\n";
  for (const auto& row : r.rows) {
    s += pad(fmt("%.2f", row.sigma), 15) + pad(pct(row.dense.accuracy()), 16) +
         pad(pct(row.temporal.accuracy()), 19) + pad(fmt("%+.1f", row.gap_pp()) + " pp", 11) +
         ci_pct(row.temporal.ci95()) + "\n";
  }
  return s;
}

inline std::string to_csv(const NoiseSweepReport& r) {
  std::string s = csv_header();
  for (const auto& row : r.rows) s += csv_row("noise-sweep", fmt("%.2f", row.sigma), row.dense, row.temporal);
  return s;
}

inline std::string to_json(const NoiseSweepReport& r, const Config& cfg) {
  auto j = envelope("noise-sweep", cfg, r.seed);
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : r.rows) rows.push_back(results_json(row));
  j["results"] = {{"rows", rows}};
  return j.dump(2) + "\n";
}

inline CurveSet curves(const NoiseSweepReport& r) {
  std::string dense = "# sigma dense_accuracy\n", temporal = "# sigma temporal_accuracy\n";
  for (const auto& row : r.rows) {
    dense += fmt("%.2f", row.sigma) + " " + fmt("%.6f", row.dense.accuracy()) + "\n";
    temporal += fmt("%.2f", row.sigma) + " " + fmt("%.6f", row.temporal.accuracy()) + "\n";
  }
  return {{"dense.dat", dense}, {"temporal.dat", temporal}};
}

// ---------------------------------------------------------------- lambda

inline std::string to_text(const LambdaReport& r, const Config& cfg) {
  std::string s = "Lambda convergence (" + std::to_string(cfg.experiment.steps) + " steps, mean over final " +
                  std::to_string(cfg.experiment.final_window) + ", alpha = " +
                  fmt("%g", cfg.experiment.error_schedule.alpha) + ", seed " + std::to_string(r.seed) + ")\n\n";
  s += pad("Object type", 14) + pad("Contacts", 10) + pad("Base error", 12) + "Lambda (converged)\n";
  for (const auto& t : r.traces)
    s += pad(t.label, 14) + pad(t.pattern, 10) + pad(fmt("%.3f", t.base_error), 12) + fmt("%.2f", t.final_mean) + "\n";
  return s;
}

/// Trajectory export: step,object_type,lambda (steps numbered from 1).
inline std::string to_csv(const LambdaReport& r) {
  std::string s = "step,object_type,lambda\n";
  for (const auto& t : r.traces)
    for (std::size_t k = 0; k < t.lambdas.size(); ++k)
      s += std::to_string(k + 1) + "," + t.label + "," + fmt("%.9f", t.lambdas[k]) + "\n";
  return s;
}

inline std::string to_json(const LambdaReport& r, const Config& cfg) {
  auto j = envelope("lambda-converge", cfg, r.seed);
  nlohmann::ordered_json traces = nlohmann::ordered_json::array();
  for (const auto& t : r.traces)
    traces.push_back({{"label", t.label},
                      {"pattern", t.pattern},
                      {"base_error", t.base_error},
                      {"final_mean", t.final_mean},
                      {"trajectory", t.lambdas}});
  j["results"] = {{"objects", traces}};
  return j.dump(2) + "\n";
}

inline CurveSet curves(const LambdaReport& r) {
  CurveSet out;
  for (const auto& t : r.traces) {
    std::string name = t.label;
    for (auto& c : name) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    std::string body = "# step lambda\n";
    for (std::size_t k = 0; k < t.lambdas.size(); ++k)
      body += std::to_string(k + 1) + " " + fmt("%.9f", t.lambdas[k]) + "\n";
    out["lambda_" + name + ".dat"] = body;
  }
  return out;
}

}  // namespace tempocode::report
