#pragma once

// Experiment configuration: JSON schema, defaults and validation.
//
// {
//   "encoder":     {"tau_base", "threshold"},
//   "stdp":        {"a_plus", "a_minus", "tau_plus", "tau_minus", "clip"},
//   "accumulator": {"initial_lambda", "alpha"},
//   "scoring":     {"rank_modulation", "temperature", "normalize"},
//   "world":       {"inter_contact_interval", "velocity", "seed"},
//   "experiment":  {"n_train", "n_test", "sigma", "sigmas", "steps",
//                   "final_window", "lambda_seeds", "threads",
//                   "error_schedule": {"alpha", "noise_std",
//                                      "uniform", "moderate", "complex"}}
// }
//
// Missing keys take defaults; unknown keys are errors.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tempocode/core_types.hpp"
#include "tempocode/inference.hpp"
#include "tempocode/spike_encoding.hpp"

namespace tempocode {

/// Invalid configuration; `key()` is the dotted path of the offending entry.
class ConfigError : public InvalidArgument {
 public:
  ConfigError(std::string key, const std::string& what)
      : InvalidArgument(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

struct AccumulatorConfig {
  double initial_lambda = 0.5;
  double alpha = 0.001;
  friend bool operator==(const AccumulatorConfig&, const AccumulatorConfig&) = default;
};

struct WorldConfig {
  double inter_contact_interval = 0.020;
  double velocity = 1.0;
  std::uint64_t seed = 42;
  friend bool operator==(const WorldConfig&, const WorldConfig&) = default;
};

/// Per-object base prediction error for the lambda experiment. The defaults
/// are the output of calibrate_error_schedule() against the target
/// converged lambdas 0.30 / 0.60 / 0.87 at seed 42.
struct ErrorSchedule {
  double alpha = 0.003;
  double noise_std = 0.05;
  double uniform = 0.74;
  double moderate = 0.375;
  double complex = 0.045;
  friend bool operator==(const ErrorSchedule&, const ErrorSchedule&) = default;
};

struct ExperimentConfig {
  std::size_t n_train = 50;
  std::size_t n_test = 200;
  double sigma = 0.05;
  std::vector<double> sigmas{0.00, 0.05, 0.10, 0.20, 0.35, 0.50};
  std::size_t steps = 300;
  std::size_t final_window = 50;
  std::size_t lambda_seeds = 10;
  std::size_t threads = 1;
  ErrorSchedule error_schedule;
  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

struct Config {
  EncoderParams encoder;
  StdpParams stdp;
  AccumulatorConfig accumulator;
  ScoringParams scoring;
  WorldConfig world;
  ExperimentConfig experiment;

  friend bool operator==(const Config&, const Config&) = default;

  /// Throws ConfigError naming the first invalid key.
  void validate() const {
    auto check = [](bool ok, const char* key, const char* what) {
      if (!ok) throw ConfigError(key, what);
    };
    auto pos = [](double x) { return std::isfinite(x) && x > 0.0; };
    auto unit = [](double x) { return std::isfinite(x) && x >= 0.0 && x <= 1.0; };
    check(pos(encoder.tau_base), "encoder.tau_base", "must be positive");
    check(std::isfinite(encoder.threshold), "encoder.threshold", "must be finite");
    check(pos(stdp.a_plus), "stdp.a_plus", "must be positive");
    check(pos(stdp.a_minus), "stdp.a_minus", "must be positive");
    check(pos(stdp.tau_plus), "stdp.tau_plus", "must be positive");
    check(pos(stdp.tau_minus), "stdp.tau_minus", "must be positive");
    check(!stdp.clip || pos(*stdp.clip), "stdp.clip", "must be positive or null");
    check(unit(accumulator.initial_lambda), "accumulator.initial_lambda", "must lie in [0, 1]");
    check(pos(accumulator.alpha), "accumulator.alpha", "must be positive");
    check(unit(scoring.rank_modulation), "scoring.rank_modulation", "must lie in [0, 1]");
    check(pos(scoring.temperature), "scoring.temperature", "must be positive");
    check(pos(world.inter_contact_interval), "world.inter_contact_interval", "must be positive");
    check(world.inter_contact_interval > encoder.tau_base, "world.inter_contact_interval",
          "must exceed encoder.tau_base so packets cannot overlap");
    check(pos(world.velocity), "world.velocity", "must be positive");
    check(experiment.n_train >= 1, "experiment.n_train", "must be >= 1 (untrained matrices score every object 0)");
    check(experiment.n_test >= 1, "experiment.n_test", "must be >= 1");
    check(std::isfinite(experiment.sigma) && experiment.sigma >= 0.0, "experiment.sigma", "must be >= 0");
    check(!experiment.sigmas.empty(), "experiment.sigmas", "must not be empty");
    for (double s : experiment.sigmas)
      check(std::isfinite(s) && s >= 0.0, "experiment.sigmas", "entries must be >= 0");
    check(experiment.steps >= 1, "experiment.steps", "must be >= 1");
    check(experiment.final_window >= 1 && experiment.final_window <= experiment.steps, "experiment.final_window",
          "must lie in [1, steps]");
    check(experiment.lambda_seeds >= 1, "experiment.lambda_seeds", "must be >= 1");
    check(experiment.threads >= 1, "experiment.threads", "must be >= 1");
    const auto& es = experiment.error_schedule;
    check(pos(es.alpha), "experiment.error_schedule.alpha", "must be positive");
    check(std::isfinite(es.noise_std) && es.noise_std >= 0.0, "experiment.error_schedule.noise_std", "must be >= 0");
    check(unit(es.uniform), "experiment.error_schedule.uniform", "must lie in [0, 1]");
    check(unit(es.moderate), "experiment.error_schedule.moderate", "must lie in [0, 1]");
    check(unit(es.complex), "experiment.error_schedule.complex", "must lie in [0, 1]");
  }

  LoopParams loop_params() const {
    return {encoder, stdp, scoring, accumulator.initial_lambda, accumulator.alpha};
  }
};

namespace detail {

// Reads the fields of one JSON object section into a struct. Every key must be
// claimed by a field reader; leftovers are reported as unknown.
class SectionReader {
 public:
  SectionReader(const nlohmann::json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, "expected a JSON object");
  }

  template <class T>
  void field(const char* name, T& out) {
    claimed_.push_back(name);
    if (!j_.contains(name)) return;
    const auto& v = j_.at(name);
    const std::string key = path_.empty() ? name : path_ + "." + name;
    try {
      if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) throw ConfigError(key, "expected true or false");
        out = v.get<bool>();
      } else if constexpr (std::is_same_v<T, double>) {
        if (!v.is_number()) throw ConfigError(key, "expected a number");
        out = v.get<double>();
      } else if constexpr (std::is_same_v<T, std::optional<double>>) {
        if (v.is_null()) {
          out.reset();
        } else {
          if (!v.is_number()) throw ConfigError(key, "expected a number or null");
          out = v.get<double>();
        }
      } else if constexpr (std::is_same_v<T, std::vector<double>>) {
        if (!v.is_array()) throw ConfigError(key, "expected an array of numbers");
        out.clear();
        for (const auto& x : v) {
          if (!x.is_number()) throw ConfigError(key, "expected an array of numbers");
          out.push_back(x.get<double>());
        }
      } else {
        static_assert(std::is_integral_v<T>);
        if (!v.is_number_integer() || (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0))
          throw ConfigError(key, "expected a non-negative integer");
        out = v.get<T>();
      }
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(key, e.what());
    }
  }

  void section(const char* name, const std::function<void(SectionReader&)>& read) {
    claimed_.push_back(name);
    if (!j_.contains(name)) return;
    SectionReader sub(j_.at(name), path_.empty() ? name : path_ + "." + name);
    read(sub);
    sub.finish();
  }

  void finish() const {
    for (const auto& [key, _] : j_.items()) {
      if (std::find(claimed_.begin(), claimed_.end(), key) == claimed_.end())
        throw ConfigError(path_.empty() ? key : path_ + "." + key, "unknown key");
    }
  }

 private:
  const nlohmann::json& j_;
  std::string path_;
  std::vector<std::string> claimed_;
};

}  // namespace detail

inline Config config_from_json(const nlohmann::json& j) {
  Config c;
  detail::SectionReader root(j, "");
  root.section("encoder", [&](auto& s) {
    s.field("tau_base", c.encoder.tau_base);
    s.field("threshold", c.encoder.threshold);
  });
  root.section("stdp", [&](auto& s) {
    s.field("a_plus", c.stdp.a_plus);
    s.field("a_minus", c.stdp.a_minus);
    s.field("tau_plus", c.stdp.tau_plus);
    s.field("tau_minus", c.stdp.tau_minus);
    s.field("clip", c.stdp.clip);
  });
  root.section("accumulator", [&](auto& s) {
    s.field("initial_lambda", c.accumulator.initial_lambda);
    s.field("alpha", c.accumulator.alpha);
  });
  root.section("scoring", [&](auto& s) {
    s.field("rank_modulation", c.scoring.rank_modulation);
    s.field("temperature", c.scoring.temperature);
    s.field("normalize", c.scoring.normalize);
  });
  root.section("world", [&](auto& s) {
    s.field("inter_contact_interval", c.world.inter_contact_interval);
    s.field("velocity", c.world.velocity);
    s.field("seed", c.world.seed);
  });
  root.section("experiment", [&](auto& s) {
    auto& e = c.experiment;
    s.field("n_train", e.n_train);
    s.field("n_test", e.n_test);
    s.field("sigma", e.sigma);
    s.field("sigmas", e.sigmas);
    s.field("steps", e.steps);
    s.field("final_window", e.final_window);
    s.field("lambda_seeds", e.lambda_seeds);
    s.field("threads", e.threads);
    s.section("error_schedule", [&](auto& es) {
      es.field("alpha", e.error_schedule.alpha);
      es.field("noise_std", e.error_schedule.noise_std);
      es.field("uniform", e.error_schedule.uniform);
      es.field("moderate", e.error_schedule.moderate);
      es.field("complex", e.error_schedule.complex);
    });
  });
  root.finish();
  c.validate();
  return c;
}

inline nlohmann::ordered_json config_to_json(const Config& c) {
  using oj = nlohmann::ordered_json;
  const auto& e = c.experiment;
  const auto& es = e.error_schedule;
  return oj{
      {"encoder", oj{{"tau_base", c.encoder.tau_base}, {"threshold", c.encoder.threshold}}},
      {"stdp", oj{{"a_plus", c.stdp.a_plus},
                  {"a_minus", c.stdp.a_minus},
                  {"tau_plus", c.stdp.tau_plus},
                  {"tau_minus", c.stdp.tau_minus},
                  {"clip", c.stdp.clip ? oj(*c.stdp.clip) : oj(nullptr)}}},
      {"accumulator", oj{{"initial_lambda", c.accumulator.initial_lambda}, {"alpha", c.accumulator.alpha}}},
      {"scoring", oj{{"rank_modulation", c.scoring.rank_modulation}, {"temperature", c.scoring.temperature},
                     {"normalize", c.scoring.normalize}}},
      {"world", oj{{"inter_contact_interval", c.world.inter_contact_interval},
                   {"velocity", c.world.velocity},
                   {"seed", c.world.seed}}},
      {"experiment", oj{{"n_train", e.n_train},
                        {"n_test", e.n_test},
                        {"sigma", e.sigma},
                        {"sigmas", e.sigmas},
                        {"steps", e.steps},
                        {"final_window", e.final_window},
                        {"lambda_seeds", e.lambda_seeds},
                        {"threads", e.threads},
                        {"error_schedule", oj{{"alpha", es.alpha},
                                              {"noise_std", es.noise_std},
                                              {"uniform", es.uniform},
                                              {"moderate", es.moderate},
                                              {"complex", es.complex}}}}},
  };
}

inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("", "config file '" + path + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

}  // namespace tempocode
