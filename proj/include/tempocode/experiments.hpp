#pragma once

// Synthetic validation experiments: traversal discrimination, noise sweep and
// lambda convergence.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "tempocode/config.hpp"
#include "tempocode/dense_baseline.hpp"
#include "tempocode/evidence.hpp"
#include "tempocode/inference.hpp"
#include "tempocode/rng.hpp"
#include "tempocode/spike_encoding.hpp"
#include "tempocode/stats.hpp"
#include "tempocode/stdp.hpp"
#include "tempocode/world.hpp"

namespace tempocode {

// Sub-stream domains. Train and test noise never share a stream.
inline constexpr std::uint64_t kTrainDomain = 1;
inline constexpr std::uint64_t kTestDomain = 2;
inline constexpr std::uint64_t kLambdaDomain = 3;
inline constexpr std::uint64_t kSweepDomain = 4;

/// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index must
/// write only its own output slot.
inline void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  threads = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
  if (threads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  for (std::size_t w = 0; w < threads; ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += threads) fn(i);
    });
}

inline std::vector<SpikePacket> encode_traversal(const Traversal& t, const EncoderParams& enc) {
  t.require_gaps_exceed(enc.tau_base);
  std::vector<SpikePacket> packets;
  packets.reserve(t.size());
  for (const auto& c : t.contacts()) packets.push_back(encode(c.features, enc, c.time));
  return packets;
}

/// Temporal classifier: argmax over objects of the summed causal alignment
/// across consecutive packet pairs. Lowest index wins ties.
/// `matrices` are used as given; see scoring_matrix() for normalisation.
inline std::size_t temporal_classify(std::span<const SpikePacket> packets, std::span<const WeightMatrix> matrices,
                                     double rank_modulation) {
  detail::require(!matrices.empty(), "temporal_classify: no matrices");
  std::size_t best = 0;
  double best_score = -INFINITY;
  for (std::size_t c = 0; c < matrices.size(); ++c) {
    const double s = traversal_alignment(packets, matrices[c], rank_modulation);
    if (s > best_score) {
      best_score = s;
      best = c;
    }
  }
  return best;
}

struct ObjectResult {
  std::string label;
  std::string pattern;
  Tally dense;
  Tally temporal;
};

struct DiscriminationReport {
  double sigma = 0.0;
  std::uint64_t seed = 0;
  std::vector<ObjectResult> objects;
  Tally dense;
  Tally temporal;
  std::vector<WeightMatrix> matrices;
  std::vector<Centroid> centroids;

  double gap_pp() const { return 100.0 * (temporal.accuracy() - dense.accuracy()); }
};

/// Trains one STDP matrix and one dense centroid per object on n_train noisy
/// traversals each, then classifies n_test fresh traversals per object with
/// both methods. Both classifiers see exactly the same noisy traversals.
inline DiscriminationReport run_discrimination(const Config& cfg, std::span<const SyntheticObject> objects,
                                               double sigma, std::uint64_t seed) {
  cfg.validate();
  detail::require(!objects.empty(), "run_discrimination: no objects");
  for (const auto& o : objects) {
    o.validate();
    detail::require(o.dimension() == objects.front().dimension(), "run_discrimination: objects differ in dimension");
  }
  if (!(std::isfinite(sigma) && sigma >= 0.0)) throw ConfigError("experiment.sigma", "must be >= 0");

  const auto& ex = cfg.experiment;
  const WorldParams world{sigma, cfg.world.inter_contact_interval, cfg.world.velocity, seed};
  world.validate(cfg.encoder.tau_base);
  const std::size_t n_obj = objects.size();
  const std::size_t dim = objects.front().dimension();

  DiscriminationReport rep;
  rep.sigma = sigma;
  rep.seed = seed;

  // Training. Traversals are generated in parallel; accumulation is serial in
  // trial order so the floating-point sums do not depend on thread count.
  std::vector<std::vector<Traversal>> train(n_obj, std::vector<Traversal>(ex.n_train));
  parallel_for(n_obj * ex.n_train, ex.threads, [&](std::size_t k) {
    const std::size_t o = k / ex.n_train, t = k % ex.n_train;
    train[o][t] = generate_traversal(objects[o], world, {kTrainDomain, o, t});
  });
  std::vector<std::string> labels;
  for (std::size_t o = 0; o < n_obj; ++o) {
    labels.push_back(objects[o].label);
    WeightMatrix w(dim);
    for (const auto& tr : train[o]) {
      const auto packets = encode_traversal(tr, cfg.encoder);
      w = train_on_traversal(std::move(w), packets, cfg.stdp);
    }
    rep.matrices.push_back(std::move(w));
  }
  rep.centroids = dense_train(train, labels);
  std::vector<WeightMatrix> scoring;
  for (const auto& w : rep.matrices) scoring.push_back(scoring_matrix(w, cfg.scoring.normalize));

  // Testing.
  struct Outcome {
    std::size_t dense = 0;
    std::size_t temporal = 0;
  };
  std::vector<Outcome> outcomes(n_obj * ex.n_test);
  parallel_for(outcomes.size(), ex.threads, [&](std::size_t k) {
    const std::size_t o = k / ex.n_test, t = k % ex.n_test;
    const Traversal tr = generate_traversal(objects[o], world, {kTestDomain, o, t});
    const auto packets = encode_traversal(tr, cfg.encoder);
    outcomes[k].dense = dense_classify_index(tr, rep.centroids);
    outcomes[k].temporal = temporal_classify(packets, scoring, cfg.scoring.rank_modulation);
  });

  for (std::size_t o = 0; o < n_obj; ++o) {
    ObjectResult r{objects[o].label, objects[o].pattern(), {}, {}};
    for (std::size_t t = 0; t < ex.n_test; ++t) {
      const auto& out = outcomes[o * ex.n_test + t];
      r.dense.correct += (out.dense == o);
      r.temporal.correct += (out.temporal == o);
    }
    r.dense.total = r.temporal.total = ex.n_test;
    rep.dense += r.dense;
    rep.temporal += r.temporal;
    rep.objects.push_back(std::move(r));
  }
  return rep;
}

struct NoiseSweepReport {
  std::uint64_t seed = 0;
  std::vector<DiscriminationReport> rows;
};

/// One discrimination run per noise level, each with its own derived seed.
inline NoiseSweepReport run_noise_sweep(const Config& cfg, std::span<const SyntheticObject> objects,
                                        std::uint64_t seed) {
  cfg.validate();
  NoiseSweepReport rep;
  rep.seed = seed;
  const auto& sigmas = cfg.experiment.sigmas;
  for (std::size_t k = 0; k < sigmas.size(); ++k)
    rep.rows.push_back(run_discrimination(cfg, objects, sigmas[k], rng::derive_seed(seed, {kSweepDomain, k})));
  return rep;
}

struct LambdaTrace {
  std::string label;
  std::string pattern;
  double base_error = 0.0;
  std::vector<double> lambdas;  // value after each step
  double final_mean = 0.0;
};

struct LambdaReport {
  std::uint64_t seed = 0;
  std::vector<LambdaTrace> traces;
};

inline double mean_of_last(std::span<const double> xs, std::size_t window) {
  window = std::min(window, xs.size());
  double s = 0.0;
  for (std::size_t i = xs.size() - window; i < xs.size(); ++i) s += xs[i];
  return window ? s / static_cast<double>(window) : 0.0;
}

/// Lambda trajectory for one object: per step, error = clamp(base +
/// noise_std * N(0,1), 0, 1) drives adapt_lambda on that object's class.
inline std::vector<double> lambda_trajectory(double initial_lambda, double alpha, double base_error,
                                             double noise_std, std::size_t steps, std::uint64_t seed,
                                             std::uint64_t object_idx) {
  EvidenceState acc(1, initial_lambda, alpha);
  std::vector<double> out;
  out.reserve(steps);
  for (std::size_t s = 0; s < steps; ++s) {
    double e = base_error;
    if (noise_std > 0.0) e += noise_std * rng::gaussian_at(seed, {kLambdaDomain, object_idx, s});
    acc.adapt_lambda(0, std::clamp(e, 0.0, 1.0));
    out.push_back(acc.lambdas()[0]);
  }
  return out;
}

/// Uniform (S-S-S), Moderate (S-C-S) and Complex (S-C-E), each with its base
/// prediction error from the configured schedule.
inline LambdaReport run_lambda_convergence(const Config& cfg, std::uint64_t seed) {
  cfg.validate();
  const auto& ex = cfg.experiment;
  const auto& es = ex.error_schedule;
  const auto objects = complexity_objects();
  const double bases[] = {es.uniform, es.moderate, es.complex};
  LambdaReport rep;
  rep.seed = seed;
  for (std::size_t o = 0; o < objects.size(); ++o) {
    LambdaTrace tr{objects[o].label, objects[o].pattern(), bases[o], {}, 0.0};
    tr.lambdas = lambda_trajectory(cfg.accumulator.initial_lambda, es.alpha, bases[o], es.noise_std, ex.steps, seed, o);
    tr.final_mean = mean_of_last(tr.lambdas, ex.final_window);
    rep.traces.push_back(std::move(tr));
  }
  return rep;
}

/// Grid used to produce the ErrorSchedule defaults.
inline constexpr double kCalibrationTargets[] = {0.30, 0.60, 0.87};
inline constexpr double kCalibrationAlphas[] = {0.001, 0.002, 0.003, 0.004, 0.005, 0.0075, 0.01};
inline constexpr double kCalibrationNoise[] = {0.05, 0.10};
inline constexpr double kCalibrationErrorStep = 0.005;

struct CalibrationResult {
  ErrorSchedule schedule;
  double max_abs_error = INFINITY;
};

/// Brute-force grid search for the lambda-experiment schedule: for every
/// (alpha, noise_std) pair, each object's base error is chosen independently
/// on a grid over [0, 1]; the pair with the smallest worst-case deviation from
/// `targets` (uniform, moderate, complex) wins. Earlier grid entries win ties.
inline CalibrationResult calibrate_error_schedule(const Config& cfg, std::span<const double> targets,
                                                  std::span<const double> alphas, std::span<const double> noise_stds,
                                                  double error_step, std::uint64_t seed) {
  detail::require(targets.size() == 3, "calibrate_error_schedule: need three targets");
  detail::require(error_step > 0.0 && error_step <= 1.0, "calibrate_error_schedule: bad error step");
  const auto& ex = cfg.experiment;
  const auto n_err = static_cast<std::size_t>(std::llround(1.0 / error_step));
  CalibrationResult best;
  for (double alpha : alphas) {
    for (double noise : noise_stds) {
      ErrorSchedule s{alpha, noise, 0.0, 0.0, 0.0};
      double* slots[] = {&s.uniform, &s.moderate, &s.complex};
      double worst = 0.0;
      for (std::size_t o = 0; o < 3; ++o) {
        double best_dev = INFINITY;
        for (std::size_t k = 0; k <= n_err; ++k) {
          const double e = static_cast<double>(k) * error_step;
          const auto tr = lambda_trajectory(cfg.accumulator.initial_lambda, alpha, e, noise, ex.steps, seed, o);
          const double dev = std::abs(mean_of_last(tr, ex.final_window) - targets[o]);
          if (dev < best_dev) {
            best_dev = dev;
            *slots[o] = e;
          }
        }
        worst = std::max(worst, best_dev);
      }
      if (worst < best.max_abs_error) best = {s, worst};
    }
  }
  return best;
}

}  // namespace tempocode
