#pragma once

// Scoring of spike packets against per-object STDP matrices and the full
// single-contact exploration step (encode, decode, learn, score, accumulate).

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "tempocode/core_types.hpp"
#include "tempocode/evidence.hpp"
#include "tempocode/latency_decoding.hpp"
#include "tempocode/spike_encoding.hpp"
#include "tempocode/stdp.hpp"

namespace tempocode {

struct ObjectModel {
  std::string label;
  WeightMatrix weights;
};

/// `rank_modulation` m scales each pair's weight by m^(rank_pre + rank_post),
/// where ranks are firing positions inside each packet. m = 1 gives the plain
/// weight sum; m < 1 emphasises the earliest spikes.
///
/// With `normalize`, each model's matrix is divided by its total weight before
/// scoring, so models trained with more (noise-driven) spikes do not win on
/// magnitude alone.
struct ScoringParams {
  double rank_modulation = 0.5;
  double temperature = 1.0;
  bool normalize = true;

  void validate() const {
    detail::require(std::isfinite(rank_modulation) && rank_modulation >= 0.0 && rank_modulation <= 1.0,
                    "ScoringParams: rank_modulation must lie in [0, 1]");
    detail::require(std::isfinite(temperature) && temperature > 0.0,
                    "ScoringParams: temperature must be positive and finite");
  }

  friend bool operator==(const ScoringParams&, const ScoringParams&) = default;
};

/// Causal alignment between two consecutive packets under one weight matrix:
/// sum of w(i, j) over pre spikes i in `prev` and post spikes j in `cur`
/// whose global times satisfy t_i < t_j, rank-modulated.
inline double alignment_score(const SpikePacket& prev, const SpikePacket& cur, const WeightMatrix& w,
                              double rank_modulation = 1.0) {
  if (prev.empty() || cur.empty()) return 0.0;
  const auto prev_rank = prev.ranks();
  const auto cur_rank = cur.ranks();
  const auto pre = prev.spikes();
  const auto post = cur.spikes();
  double s = 0.0;
  for (std::size_t a = 0; a < pre.size(); ++a) {
    detail::require(pre[a].neuron < w.size(), "alignment_score: neuron id out of range");
    const double t_pre = prev.arrival() + pre[a].offset;
    for (std::size_t b = 0; b < post.size(); ++b) {
      detail::require(post[b].neuron < w.size(), "alignment_score: neuron id out of range");
      if (!(t_pre < cur.arrival() + post[b].offset)) continue;
      double weight = w(pre[a].neuron, post[b].neuron);
      if (rank_modulation != 1.0)
        weight *= std::pow(rank_modulation, static_cast<double>(prev_rank[a] + cur_rank[b]));
      s += weight;
    }
  }
  return s;
}

inline double alignment_score(const SpikePacket& prev, const SpikePacket& cur, const ObjectModel& model,
                              double rank_modulation = 1.0) {
  return alignment_score(prev, cur, model.weights, rank_modulation);
}

/// The matrix a model is scored with: `w` itself, or `w / sum(w)` when
/// normalising (an all-zero or zero-sum matrix is returned unchanged).
inline WeightMatrix scoring_matrix(const WeightMatrix& w, bool normalize) {
  if (!normalize) return w;
  const double total = w.total();
  if (total == 0.0 || !std::isfinite(total)) return w;
  std::vector<double> d(w.data().begin(), w.data().end());
  for (double& x : d) x /= total;
  return WeightMatrix(w.size(), std::move(d));
}

/// Sum of alignment scores over every consecutive packet pair.
inline double traversal_alignment(std::span<const SpikePacket> packets, const WeightMatrix& w,
                                  double rank_modulation = 1.0) {
  double s = 0.0;
  for (std::size_t t = 1; t < packets.size(); ++t)
    s += alignment_score(packets[t - 1], packets[t], w, rank_modulation);
  return s;
}

/// Numerically stable log softmax of scores / temperature.
inline std::vector<double> log_softmax(std::span<const double> scores, double temperature) {
  detail::require(!scores.empty(), "log_softmax: need at least one score");
  detail::require(std::isfinite(temperature) && temperature > 0.0, "log_softmax: temperature must be positive");
  std::vector<double> z(scores.begin(), scores.end());
  for (double& x : z) x /= temperature;
  const double mx = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double x : z) sum += std::exp(x - mx);
  const double lse = mx + std::log(sum);
  for (double& x : z) x -= lse;
  return z;
}

/// Per-class log-likelihoods: log softmax of alignment scores / temperature.
inline std::vector<double> log_likelihoods(const SpikePacket& prev, const SpikePacket& cur,
                                           std::span<const ObjectModel> models, const ScoringParams& scoring) {
  scoring.validate();
  detail::require(!models.empty(), "log_likelihoods: need at least one object model");
  std::vector<double> s;
  s.reserve(models.size());
  for (const auto& m : models)
    s.push_back(alignment_score(prev, cur, scoring_matrix(m.weights, scoring.normalize), scoring.rank_modulation));
  return log_softmax(s, scoring.temperature);
}

struct MotorCommand {
  double velocity = 1.0;   // world units per second
  double direction = 0.0;  // radians
};

enum class StepPhase { Encode, IntervalComputed, DisplacementDecoded, StdpApplied, Scored, EvidenceUpdated, LambdaAdapted };

inline const char* to_string(StepPhase p) {
  switch (p) {
    case StepPhase::Encode: return "encode";
    case StepPhase::IntervalComputed: return "interval";
    case StepPhase::DisplacementDecoded: return "decode";
    case StepPhase::StdpApplied: return "stdp";
    case StepPhase::Scored: return "score";
    case StepPhase::EvidenceUpdated: return "update";
    case StepPhase::LambdaAdapted: return "adapt";
  }
  return "?";
}

struct StepDiagnostics {
  std::size_t step = 0;
  std::optional<double> dt;
  std::optional<Displacement> displacement;
  std::vector<double> scores;
  std::vector<double> log_likelihoods;
  std::size_t best = 0;
  double prediction_error = 0.0;
  std::size_t stdp_pairs = 0;
  std::vector<StepPhase> phases;  // order in which the step's stages ran

  /// {"step":k,"dt":...,"displacement":[x,y,z],"scores":[...],"best":c,"prediction_error":...}
  std::string to_json_line() const {
    nlohmann::ordered_json j;
    j["step"] = step;
    j["dt"] = dt ? nlohmann::ordered_json(*dt) : nlohmann::ordered_json(nullptr);
    j["displacement"] = displacement
                            ? nlohmann::ordered_json::array({displacement->dx, displacement->dy, displacement->dz})
                            : nlohmann::ordered_json(nullptr);
    j["scores"] = scores;
    j["best"] = best;
    j["prediction_error"] = prediction_error;
    return j.dump();
  }
};

struct LoopParams {
  EncoderParams encoder;
  StdpParams stdp;
  ScoringParams scoring;
  double initial_lambda = 0.5;
  double alpha = 0.001;
};

/// State of one agent exploring one object: encoder/STDP parameters, the
/// previous packet, per-object models and the evidence accumulator.
///
/// When a learning target is set, step 4 trains that model's matrix online;
/// otherwise the models are frozen and the step is a pure function of
/// (state, input).
class InferenceLoop {
 public:
  InferenceLoop(LoopParams params, std::vector<ObjectModel> models)
      : params_(std::move(params)),
        models_(std::move(models)),
        evidence_(std::max<std::size_t>(models_.size(), 1), params_.initial_lambda, params_.alpha) {
    params_.encoder.validate();
    params_.stdp.validate();
    params_.scoring.validate();
    detail::require(!models_.empty(), "InferenceLoop: need at least one object model");
    for (const auto& m : models_)
      detail::require(m.weights.size() == models_.front().weights.size(),
                      "InferenceLoop: all models must share one dimension");
  }

  void set_learning_target(std::optional<std::size_t> model_idx) {
    if (model_idx) detail::require(*model_idx < models_.size(), "InferenceLoop: learning target out of range");
    learning_target_ = model_idx;
  }
  std::optional<std::size_t> learning_target() const { return learning_target_; }

  const EvidenceState& evidence() const { return evidence_; }
  std::span<const ObjectModel> models() const { return models_; }
  const std::optional<SpikePacket>& previous_packet() const { return prev_; }
  std::size_t dimension() const { return models_.front().weights.size(); }

  StepDiagnostics step(const Contact& contact, const MotorCommand& motor) {
    detail::require(contact.features.size() == dimension(),
                    "InferenceLoop::step: feature dimension " + std::to_string(contact.features.size()) +
                        " does not match model dimension " + std::to_string(dimension()));
    StepDiagnostics d;
    d.step = step_count_++;

    // 1. encode
    SpikePacket cur = encode(contact.features, params_.encoder, contact.time);
    d.phases.push_back(StepPhase::Encode);

    // 2. inter-packet interval
    const bool have_pair = prev_ && !prev_->empty() && !cur.empty();
    if (have_pair) {
      d.dt = *arrival_time(cur) - *arrival_time(*prev_);
      d.phases.push_back(StepPhase::IntervalComputed);
      // 3. implicit displacement
      d.displacement = decode_displacement(*d.dt, motor.direction, LatencyParams{motor.velocity});
      d.phases.push_back(StepPhase::DisplacementDecoded);
      // 4. online STDP on the active matrix
      if (learning_target_) {
        apply_stdp_pair(models_[*learning_target_].weights, *prev_, cur, params_.stdp);
        d.stdp_pairs = prev_->size() * cur.size();
        d.phases.push_back(StepPhase::StdpApplied);
      }
    }

    // 5. score
    const SpikePacket empty_prev({}, contact.time);
    const SpikePacket& prev = (prev_ ? *prev_ : empty_prev);
    d.log_likelihoods = log_likelihoods(prev, cur, models_, params_.scoring);
    d.scores.reserve(models_.size());
    for (const auto& m : models_)
      d.scores.push_back(alignment_score(prev, cur, scoring_matrix(m.weights, params_.scoring.normalize),
                                         params_.scoring.rank_modulation));
    d.phases.push_back(StepPhase::Scored);

    // 6. accumulate
    evidence_.update(d.log_likelihoods);
    d.phases.push_back(StepPhase::EvidenceUpdated);

    // 7. adapt lambda of the leading hypothesis
    d.best = evidence_.best_hypothesis();
    d.prediction_error = std::clamp(1.0 - std::exp(d.log_likelihoods[d.best]), 0.0, 1.0);
    evidence_.adapt_lambda(d.best, d.prediction_error);
    d.phases.push_back(StepPhase::LambdaAdapted);

    prev_ = std::move(cur);
    // 8. best hypothesis (unchanged by the lambda adaptation)
    return d;
  }

 private:
  LoopParams params_;
  std::vector<ObjectModel> models_;
  EvidenceState evidence_;
  std::optional<SpikePacket> prev_;
  std::optional<std::size_t> learning_target_;
  std::size_t step_count_ = 0;
};

}  // namespace tempocode
