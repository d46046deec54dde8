// tempocode command-line driver.
//
//   tempocode discriminate    [--config f] [--seed s] [--out dir] [--format text|csv|json] [--plot]
//   tempocode noise-sweep     (same flags)
//   tempocode lambda-converge (same flags)
//   tempocode encode --features a,b,c [--tau-base s] [--threshold t]
//   tempocode capacity --n N [--k K]
//   tempocode infer [--object label|index] (plus the experiment flags)
//
// Exit codes: 0 success, 2 usage/config error, 1 runtime failure.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tempocode/tempocode.hpp"

namespace fs = std::filesystem;
using namespace tempocode;

namespace {

constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct ExperimentFlags {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir;
  std::string format = "text";
  bool plot = false;
  std::string objects_path;
};

void add_experiment_flags(CLI::App* cmd, ExperimentFlags& f, bool with_objects) {
  cmd->add_option("--config", f.config_path, "JSON config file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", f.seed, "RNG seed (overrides TEMPOCODE_SEED and the config)");
  cmd->add_option("--out", f.out_dir, "write report files under <dir>/<experiment>/<timestamp>/");
  cmd->add_option("--format", f.format, "stdout format")->check(CLI::IsMember({"text", "csv", "json"}));
  cmd->add_flag("--plot", f.plot, "also write gnuplot two-column curve files");
  if (with_objects) cmd->add_option("--objects", f.objects_path, "JSON object definitions (default: built-ins)");
}

std::uint64_t parse_seed_env(const char* text) {
  try {
    std::size_t used = 0;
    const std::string s(text);
    const auto v = std::stoull(s, &used, 0);
    if (used != s.size() || s.front() == '-') throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("TEMPOCODE_SEED", std::string("not an unsigned 64-bit integer: '") + text + "'");
  }
}

/// Config with the effective seed written back into world.seed.
Config effective_config(const ExperimentFlags& f) {
  Config cfg = f.config_path.empty() ? Config{} : load_config(f.config_path);
  if (f.seed) {
    cfg.world.seed = *f.seed;
  } else if (const char* env = std::getenv("TEMPOCODE_SEED"); env && *env) {
    cfg.world.seed = parse_seed_env(env);
  }
  cfg.validate();
  return cfg;
}

std::vector<SyntheticObject> objects_for(const ExperimentFlags& f) {
  return f.objects_path.empty() ? discrimination_objects() : load_objects(f.objects_path);
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y%m%dT%H%M%SZ", &tm);
  return buf;
}

void write_file(const fs::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << body;
}

struct Rendered {
  std::string text, csv, json;
  report::CurveSet curves;
};

void emit(const char* experiment, const ExperimentFlags& f, const Rendered& r) {
  if (f.format == "text") std::cout << r.text;
  else if (f.format == "csv") std::cout << r.csv;
  else std::cout << r.json;

  if (f.out_dir.empty() && !f.plot) return;
  const fs::path root = f.out_dir.empty() ? fs::path("out") : fs::path(f.out_dir);
  fs::path dir = root / experiment / timestamp();
  for (int k = 1; fs::exists(dir); ++k) dir = root / experiment / (timestamp() + "-" + std::to_string(k));
  fs::create_directories(dir);
  write_file(dir / "report.txt", r.text);
  write_file(dir / "report.csv", r.csv);
  write_file(dir / "report.json", r.json);
  if (f.plot) {
    fs::create_directories(dir / "curves");
    for (const auto& [name, body] : r.curves) write_file(dir / "curves" / name, body);
  }
  std::cerr << "wrote " << dir.string() << "\n";
}

int run_discriminate(const ExperimentFlags& f) {
  const Config cfg = effective_config(f);
  const auto objects = objects_for(f);
  const auto t0 = std::chrono::steady_clock::now();
  const auto rep = run_discrimination(cfg, objects, cfg.experiment.sigma, cfg.world.seed);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit("discriminate", f, {report::to_text(rep), report::to_csv(rep), report::to_json(rep, cfg), report::curves(rep)});
  std::cerr << "elapsed " << report::fmt("%.3f", secs) << " s\n";
  return 0;
}

int run_sweep(const ExperimentFlags& f) {
  const Config cfg = effective_config(f);
  const auto objects = objects_for(f);
  const auto rep = run_noise_sweep(cfg, objects, cfg.world.seed);
  emit("noise-sweep", f, {report::to_text(rep), report::to_csv(rep), report::to_json(rep, cfg), report::curves(rep)});
  return 0;
}

int run_lambda(const ExperimentFlags& f) {
  const Config cfg = effective_config(f);
  const auto rep = run_lambda_convergence(cfg, cfg.world.seed);
  emit("lambda-converge", f,
       {report::to_text(rep, cfg), report::to_csv(rep), report::to_json(rep, cfg), report::curves(rep)});
  return 0;
}

std::string short_number(double x) {
  std::string s = report::fmt("%.6f", x);
  while (s.size() > 1 && s.back() == '0' && s[s.size() - 2] != '.') s.pop_back();
  return s;
}

int run_encode(const std::vector<double>& values, double tau_base, double threshold) {
  EncoderParams params{tau_base, threshold};
  try {
    params.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError("", e.what());
  }
  const auto packet = encode(FeatureVector(values), params);
  std::string out = "{";
  bool first = true;
  for (const auto& s : packet.firing_order()) {
    out += (first ? "" : ",") + std::string("\"") + std::to_string(s.neuron) + "\":" + short_number(s.offset);
    first = false;
  }
  std::cout << out << "}\n";
  return 0;
}

int run_capacity(std::size_t n, std::optional<std::size_t> k) {
  std::cout << "ordered: " << report::fmt("%.3f", code_capacity_bits(n, CapacityMode::Ordered)) << " bits\n";
  if (k)
    std::cout << "unordered: " << report::fmt("%.3f", code_capacity_bits(*k, CapacityMode::Unordered, n))
              << " bits\n";
  return 0;
}

/// Trains per-object matrices as the discrimination experiment does, then
/// streams one fresh test traversal through the frozen inference loop,
/// printing one JSON line per exploration step.
int run_infer(const ExperimentFlags& f, const std::string& which) {
  const Config cfg = effective_config(f);
  const auto objects = objects_for(f);
  std::size_t target = objects.size();
  for (std::size_t i = 0; i < objects.size(); ++i)
    if (objects[i].label == which || std::to_string(i) == which) target = i;
  if (target == objects.size()) throw ConfigError("--object", "no object named '" + which + "'");

  const auto trained = run_discrimination(cfg, objects, cfg.experiment.sigma, cfg.world.seed);
  std::vector<ObjectModel> models;
  for (std::size_t i = 0; i < objects.size(); ++i) models.push_back({objects[i].label, trained.matrices[i]});
  InferenceLoop loop(cfg.loop_params(), std::move(models));

  const WorldParams world{cfg.experiment.sigma, cfg.world.inter_contact_interval, cfg.world.velocity, cfg.world.seed};
  const auto tr = generate_traversal(objects[target], world, {kTestDomain, target, 0});
  for (const auto& c : tr.contacts()) {
    const auto d = loop.step(c, {cfg.world.velocity, tr.motor_direction()});
    std::cout << d.to_json_line() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank-order temporal coding for sensorimotor object inference"};
  app.require_subcommand(1);

  ExperimentFlags disc_flags, sweep_flags, lambda_flags, infer_flags;
  auto* disc = app.add_subcommand("discriminate", "A/B traversal discrimination: temporal vs dense");
  add_experiment_flags(disc, disc_flags, true);
  auto* sweep = app.add_subcommand("noise-sweep", "discrimination accuracy across sensor noise levels");
  add_experiment_flags(sweep, sweep_flags, true);
  auto* lambda = app.add_subcommand("lambda-converge", "adaptive lambda on objects of varying complexity");
  add_experiment_flags(lambda, lambda_flags, false);

  std::vector<double> features;
  double tau_base = EncoderParams{}.tau_base;
  double threshold = EncoderParams{}.threshold;
  auto* enc = app.add_subcommand("encode", "print the rank-order packet of a feature vector");
  enc->add_option("--features", features, "comma-separated activations")->required()->delimiter(',');
  enc->add_option("--tau-base", tau_base, "packet span in seconds");
  enc->add_option("--threshold", threshold, "sparsity threshold");

  std::size_t cap_n = 0;
  std::optional<std::size_t> cap_k;
  auto* cap = app.add_subcommand("capacity", "bits per volley of ordered / unordered codes");
  cap->add_option("--n", cap_n, "number of neurons")->required()->check(CLI::PositiveNumber);
  cap->add_option("--k", cap_k, "active neurons for the unordered code");

  std::string infer_object = "0";
  auto* infer = app.add_subcommand("infer", "stream per-step diagnostics as JSON lines");
  add_experiment_flags(infer, infer_flags, true);
  infer->add_option("--object", infer_object, "object label or index to traverse");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*disc) return run_discriminate(disc_flags);
    if (*sweep) return run_sweep(sweep_flags);
    if (*lambda) return run_lambda(lambda_flags);
    if (*enc) return run_encode(features, tau_base, threshold);
    if (*cap) return run_capacity(cap_n, cap_k);
    if (*infer) return run_infer(infer_flags, infer_object);
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}
