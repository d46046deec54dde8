#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "tempocode/core_types.hpp"

namespace tempocode {

/// Per-class evidence with a learnable memory coefficient lambda per class.
///
///   E(t+1)[c] = (1 - lambda[c]) * likelihood[c] + lambda[c] * E(t)[c]
///
/// followed by normalisation when the total is positive. Evidence starts
/// uniform. One accumulator belongs to one inference loop.
class EvidenceState {
 public:
  EvidenceState(std::size_t n_classes, double initial_lambda = 0.5, double alpha = 0.001)
      : evidence_(n_classes, n_classes ? 1.0 / static_cast<double>(n_classes) : 0.0),
        lambdas_(n_classes, initial_lambda),
        alpha_(alpha) {
    detail::require(n_classes >= 1, "EvidenceState: need at least one class");
    detail::require(std::isfinite(initial_lambda) && initial_lambda >= 0.0 && initial_lambda <= 1.0,
                    "EvidenceState: initial lambda must lie in [0, 1]");
    detail::require(std::isfinite(alpha) && alpha > 0.0, "EvidenceState: alpha must be positive");
  }

  EvidenceState(std::vector<double> evidence, std::vector<double> lambdas, double alpha)
      : evidence_(std::move(evidence)), lambdas_(std::move(lambdas)), alpha_(alpha) {
    detail::require(!evidence_.empty(), "EvidenceState: need at least one class");
    detail::require(evidence_.size() == lambdas_.size(), "EvidenceState: evidence/lambda size mismatch");
    detail::require(detail::all_finite(evidence_), "EvidenceState: evidence must be finite");
    for (double l : lambdas_)
      detail::require(std::isfinite(l) && l >= 0.0 && l <= 1.0, "EvidenceState: lambdas must lie in [0, 1]");
    detail::require(std::isfinite(alpha) && alpha > 0.0, "EvidenceState: alpha must be positive");
  }

  std::size_t classes() const { return evidence_.size(); }
  std::span<const double> evidence() const { return evidence_; }
  std::span<const double> lambdas() const { return lambdas_; }
  double alpha() const { return alpha_; }

  void update(std::span<const double> log_likelihoods) {
    if (log_likelihoods.size() != evidence_.size())
      throw InvalidArgument("EvidenceState::update: expected " + std::to_string(evidence_.size()) +
                            " log-likelihoods, got " + std::to_string(log_likelihoods.size()));
    detail::require(detail::all_finite(log_likelihoods), "EvidenceState::update: log-likelihoods must be finite");
    double total = 0.0;
    for (std::size_t c = 0; c < evidence_.size(); ++c) {
      const double lik = std::exp(log_likelihoods[c]);
      evidence_[c] = (1.0 - lambdas_[c]) * lik + lambdas_[c] * evidence_[c];
      total += evidence_[c];
    }
    if (total > 0.0)
      for (double& e : evidence_) e /= total;
  }

  /// lambda[c] += alpha * (0.5 - prediction_error), clipped to [0, 1].
  void adapt_lambda(std::size_t class_idx, double prediction_error) {
    detail::require(class_idx < lambdas_.size(), "EvidenceState::adapt_lambda: class index out of range");
    if (!(prediction_error >= 0.0 && prediction_error <= 1.0))
      throw InvalidArgument("EvidenceState::adapt_lambda: prediction error must lie in [0, 1], got " +
                            std::to_string(prediction_error));
    const double delta = alpha_ * (0.5 - prediction_error);
    lambdas_[class_idx] = std::clamp(lambdas_[class_idx] + delta, 0.0, 1.0);
  }

  /// argmax of the evidence; lowest index wins ties.
  std::size_t best_hypothesis() const {
    std::size_t best = 0;
    for (std::size_t c = 1; c < evidence_.size(); ++c)
      if (evidence_[c] > evidence_[best]) best = c;
    return best;
  }

  friend bool operator==(const EvidenceState&, const EvidenceState&) = default;

 private:
  std::vector<double> evidence_;
  std::vector<double> lambdas_;
  double alpha_;
};

}  // namespace tempocode
