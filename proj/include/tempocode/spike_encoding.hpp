#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "tempocode/core_types.hpp"

namespace tempocode {

struct EncoderParams {
  double tau_base = 0.010;   // packet span, seconds
  double threshold = 0.1;    // neurons fire only when activation > threshold

  void validate() const {
    detail::require(std::isfinite(tau_base) && tau_base > 0.0,
                    "EncoderParams: tau_base must be positive and finite");
    detail::require(std::isfinite(threshold), "EncoderParams: threshold must be finite");
  }

  friend bool operator==(const EncoderParams&, const EncoderParams&) = default;
};

/// Rank-order encoding of a dense activation vector.
///
/// Neurons with activation strictly above the threshold fire; the r-th ranked
/// of n active neurons fires at tau_base * r / n. Equal activations fire in
/// ascending neuron-id order. An all-silent input gives an empty packet.
inline SpikePacket encode(const FeatureVector& features, const EncoderParams& params,
                          double arrival = 0.0) {
  params.validate();
  std::vector<NeuronId> active;
  for (std::size_t i = 0; i < features.size(); ++i)
    if (features[i] > params.threshold) active.push_back(static_cast<NeuronId>(i));
  if (active.empty()) return SpikePacket({}, arrival);

  std::stable_sort(active.begin(), active.end(),
                   [&](NeuronId a, NeuronId b) { return features[a] > features[b]; });
  const double n = static_cast<double>(active.size());
  std::vector<Spike> spikes;
  spikes.reserve(active.size());
  for (std::size_t rank = 0; rank < active.size(); ++rank)
    spikes.push_back({active[rank], params.tau_base * (static_cast<double>(rank) / n)});
  return SpikePacket(std::move(spikes), arrival);
}

enum class CapacityMode { Ordered, Unordered };

/// Information carried by one volley, in bits.
///
/// Ordered: log2(n_active!). Unordered: log2(C(n_total, n_active)).
/// Both go through lgamma so large sizes stay finite.
inline double code_capacity_bits(std::size_t n_active, CapacityMode mode, std::size_t n_total = 0) {
  detail::require(n_active >= 1, "code_capacity_bits: n_active must be >= 1");
  const double ln2 = std::log(2.0);
  auto lfact = [](std::size_t k) { return std::lgamma(static_cast<double>(k) + 1.0); };
  if (mode == CapacityMode::Ordered) return lfact(n_active) / ln2;
  detail::require(n_active <= n_total, "code_capacity_bits: n_active must not exceed n_total");
  return (lfact(n_total) - lfact(n_active) - lfact(n_total - n_active)) / ln2;
}

}  // namespace tempocode
