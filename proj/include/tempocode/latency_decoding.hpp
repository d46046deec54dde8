#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "tempocode/core_types.hpp"

namespace tempocode {

/// Global time of the packet's earliest spike; empty packets have none.
inline std::optional<double> arrival_time(const SpikePacket& packet) {
  if (packet.empty()) return std::nullopt;
  double first = packet.spikes().front().offset;
  for (const auto& s : packet.spikes()) first = std::min(first, s.offset);
  return packet.arrival() + first;
}

/// Displacement implied by an inter-packet interval under uniform planar
/// motion: v * dt * (cos theta, sin theta, 0).
inline Displacement decode_displacement(double delta_t, double motor_direction,
                                        const LatencyParams& params) {
  params.validate();
  if (!std::isfinite(delta_t) || delta_t < 0.0)
    throw InvalidArgument("decode_displacement: delta_t must be finite and >= 0, got " +
                          std::to_string(delta_t));
  detail::require(std::isfinite(motor_direction), "decode_displacement: direction must be finite");
  const double r = params.assumed_velocity * delta_t;
  return {r * std::cos(motor_direction), r * std::sin(motor_direction), 0.0};
}

}  // namespace tempocode
