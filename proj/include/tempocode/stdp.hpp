#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "tempocode/core_types.hpp"

namespace tempocode {

/// Exponential-window STDP on a single synapse.
///
/// dt = post - pre. dt > 0 potentiates by a_plus * exp(-dt / tau_plus),
/// dt < 0 depresses by a_minus * exp(dt / tau_minus), dt == 0 is a no-op.
inline double stdp_update(double w, double pre_time, double post_time, const StdpParams& p) {
  const double dt = post_time - pre_time;
  if (dt > 0.0) return w + p.a_plus * std::exp(-dt / p.tau_plus);
  if (dt < 0.0) return w - p.a_minus * std::exp(dt / p.tau_minus);
  return w;
}

/// Applies STDP between one pair of consecutive packets: every neuron in
/// `prev` is a pre-synaptic partner of every neuron in `cur`, using global
/// spike times (arrival + offset).
inline void apply_stdp_pair(WeightMatrix& w, const SpikePacket& prev, const SpikePacket& cur,
                            const StdpParams& params) {
  const std::size_t n = w.size();
  for (const auto& pre : prev.spikes()) {
    detail::require(pre.neuron < n, "STDP: neuron id " + std::to_string(pre.neuron) + " out of range");
    for (const auto& post : cur.spikes()) {
      detail::require(post.neuron < n,
                      "STDP: neuron id " + std::to_string(post.neuron) + " out of range");
      double& wij = w(pre.neuron, post.neuron);
      wij = stdp_update(wij, prev.arrival() + pre.offset, cur.arrival() + post.offset, params);
      if (params.clip) wij = std::clamp(wij, -*params.clip, *params.clip);
    }
  }
}

/// Trains `w` on one traversal's packet sequence.
///
/// Only (packet[t-1], packet[t]) pairs are updated; spikes within one packet
/// and non-adjacent packets never interact. Packets must be in temporal order
/// and must not overlap.
inline WeightMatrix train_on_traversal(WeightMatrix w, std::span<const SpikePacket> packets,
                                       const StdpParams& params) {
  params.validate();
  for (std::size_t t = 1; t < packets.size(); ++t) {
    const auto& prev = packets[t - 1];
    const auto& cur = packets[t];
    detail::require(cur.arrival() >= prev.arrival(), "train_on_traversal: packets out of temporal order");
    if (!prev.empty() && !cur.empty())
      detail::require(prev.arrival() + prev.duration() < cur.arrival(),
                      "train_on_traversal: consecutive packets overlap in time");
    apply_stdp_pair(w, prev, cur, params);
  }
  return w;
}

}  // namespace tempocode
