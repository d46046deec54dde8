#pragma once

// Value types shared by every tempocode module.
//
// Times are seconds (double). Neuron ids are dense integers 0..N-1.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace tempocode {

using NeuronId = std::uint32_t;

/// Thrown when a constructor or operation receives input violating a
/// documented precondition.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

inline bool all_finite(std::span<const double> xs) {
  return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace detail

/// Dense activation vector produced by one sensor contact.
class FeatureVector {
 public:
  FeatureVector() = default;
  FeatureVector(std::vector<double> values) : values_(std::move(values)) {
    detail::require(!values_.empty(), "FeatureVector: dimension must be >= 1");
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!std::isfinite(values_[i]))
        throw InvalidArgument("FeatureVector: non-finite activation at index " +
                              std::to_string(i));
    }
  }
  FeatureVector(std::initializer_list<double> values)
      : FeatureVector(std::vector<double>(values)) {}

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;

 private:
  std::vector<double> values_;
};

struct Spike {
  NeuronId neuron;
  double offset;  // seconds after the packet's first spike

  friend bool operator==(const Spike&, const Spike&) = default;
};

/// One contact's rank-order burst: neuron -> spike offset, plus the global
/// arrival time of the first spike.
///
/// Spikes are stored in ascending neuron-id order so iteration (and every
/// sum built on it) is reproducible. Non-empty packets have a minimum offset
/// of exactly 0 and pairwise-distinct offsets.
class SpikePacket {
 public:
  SpikePacket() = default;
  SpikePacket(std::vector<Spike> spikes, double arrival) : spikes_(std::move(spikes)), arrival_(arrival) {
    detail::require(std::isfinite(arrival_), "SpikePacket: arrival must be finite");
    std::sort(spikes_.begin(), spikes_.end(),
              [](const Spike& a, const Spike& b) { return a.neuron < b.neuron; });
    for (std::size_t i = 0; i < spikes_.size(); ++i) {
      const auto& s = spikes_[i];
      detail::require(std::isfinite(s.offset) && s.offset >= 0.0,
                      "SpikePacket: spike offsets must be finite and >= 0");
      if (i > 0)
        detail::require(spikes_[i - 1].neuron != s.neuron,
                        "SpikePacket: duplicate neuron id " + std::to_string(s.neuron));
    }
    if (!spikes_.empty()) {
      auto times = offsets_sorted();
      detail::require(times.front() == 0.0, "SpikePacket: first spike offset must be exactly 0");
      detail::require(std::adjacent_find(times.begin(), times.end()) == times.end(),
                      "SpikePacket: spike offsets must be pairwise distinct");
    }
  }

  bool empty() const { return spikes_.empty(); }
  std::size_t size() const { return spikes_.size(); }
  double arrival() const { return arrival_; }

  /// Spikes in ascending neuron-id order.
  std::span<const Spike> spikes() const { return spikes_; }

  std::optional<double> offset_of(NeuronId n) const {
    auto it = std::lower_bound(spikes_.begin(), spikes_.end(), n,
                               [](const Spike& s, NeuronId id) { return s.neuron < id; });
    if (it == spikes_.end() || it->neuron != n) return std::nullopt;
    return it->offset;
  }

  /// Spikes in firing order (earliest first).
  std::vector<Spike> firing_order() const {
    std::vector<Spike> out = spikes_;
    std::sort(out.begin(), out.end(),
              [](const Spike& a, const Spike& b) { return a.offset < b.offset; });
    return out;
  }

  /// Firing rank of each spike, aligned with spikes(). Rank 0 fires first.
  std::vector<std::size_t> ranks() const {
    std::vector<std::size_t> r(spikes_.size(), 0);
    for (std::size_t i = 0; i < spikes_.size(); ++i)
      for (std::size_t j = 0; j < spikes_.size(); ++j)
        if (spikes_[j].offset < spikes_[i].offset) ++r[i];
    return r;
  }

  std::optional<NeuronId> first_neuron() const {
    if (spikes_.empty()) return std::nullopt;
    return firing_order().front().neuron;
  }

  /// Largest offset, i.e. the time from first to last spike.
  double duration() const {
    double d = 0.0;
    for (const auto& s : spikes_) d = std::max(d, s.offset);
    return d;
  }

  SpikePacket at_arrival(double arrival) const {
    SpikePacket p = *this;
    detail::require(std::isfinite(arrival), "SpikePacket: arrival must be finite");
    p.arrival_ = arrival;
    return p;
  }

  friend bool operator==(const SpikePacket&, const SpikePacket&) = default;

 private:
  std::vector<double> offsets_sorted() const {
    std::vector<double> t;
    t.reserve(spikes_.size());
    for (const auto& s : spikes_) t.push_back(s.offset);
    std::sort(t.begin(), t.end());
    return t;
  }

  std::vector<Spike> spikes_;
  double arrival_ = 0.0;
};

/// N x N synaptic weights, w(pre, post), row-major.
class WeightMatrix {
 public:
  WeightMatrix() = default;
  explicit WeightMatrix(std::size_t n) : n_(n), w_(n * n, 0.0) {
    detail::require(n >= 1, "WeightMatrix: dimension must be >= 1");
  }
  WeightMatrix(std::size_t n, std::vector<double> row_major) : n_(n), w_(std::move(row_major)) {
    detail::require(n >= 1, "WeightMatrix: dimension must be >= 1");
    detail::require(w_.size() == n * n, "WeightMatrix: expected n*n entries");
    detail::require(detail::all_finite(w_), "WeightMatrix: entries must be finite");
  }

  std::size_t size() const { return n_; }
  double operator()(std::size_t pre, std::size_t post) const { return w_[pre * n_ + post]; }
  double& operator()(std::size_t pre, std::size_t post) { return w_[pre * n_ + post]; }
  std::span<const double> data() const { return w_; }

  double total() const {
    double s = 0.0;
    for (double x : w_) s += x;
    return s;
  }

  friend bool operator==(const WeightMatrix&, const WeightMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> w_;
};

// {"n": N, "w": [[...], ...]} with row-major nested arrays.
inline void to_json(nlohmann::json& j, const WeightMatrix& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t k = 0; k < m.size(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  j = nlohmann::json{{"n", m.size()}, {"w", std::move(rows)}};
}

inline void from_json(const nlohmann::json& j, WeightMatrix& m) {
  detail::require(j.is_object() && j.contains("n") && j.contains("w"),
                  "WeightMatrix JSON: expected object with keys \"n\" and \"w\"");
  const auto n = j.at("n").get<std::size_t>();
  const auto& rows = j.at("w");
  detail::require(rows.is_array() && rows.size() == n, "WeightMatrix JSON: \"w\" must have n rows");
  std::vector<double> flat;
  flat.reserve(n * n);
  for (const auto& row : rows) {
    detail::require(row.is_array() && row.size() == n, "WeightMatrix JSON: each row must have n entries");
    for (const auto& x : row) flat.push_back(x.get<double>());
  }
  m = WeightMatrix(n, std::move(flat));
}

/// Exponential-window STDP amplitudes and time constants. `clip`, when set,
/// bounds weights to [-clip, clip] after every update.
struct StdpParams {
  double a_plus = 0.01;
  double a_minus = 0.01;
  double tau_plus = 0.020;
  double tau_minus = 0.020;
  std::optional<double> clip;

  void validate() const {
    auto pos = [](double x) { return std::isfinite(x) && x > 0.0; };
    detail::require(pos(a_plus), "StdpParams: a_plus must be positive and finite");
    detail::require(pos(a_minus), "StdpParams: a_minus must be positive and finite");
    detail::require(pos(tau_plus), "StdpParams: tau_plus must be positive and finite");
    detail::require(pos(tau_minus), "StdpParams: tau_minus must be positive and finite");
    if (clip) detail::require(pos(*clip), "StdpParams: clip must be positive and finite");
  }

  friend bool operator==(const StdpParams&, const StdpParams&) = default;
};

struct Contact {
  FeatureVector features;
  double time = 0.0;  // global contact time, seconds
};

/// Ordered sequence of timed contacts over an object surface.
class Traversal {
 public:
  Traversal() = default;
  Traversal(std::vector<Contact> contacts, double motor_direction, std::string label)
      : contacts_(std::move(contacts)), motor_direction_(motor_direction), label_(std::move(label)) {
    detail::require(std::isfinite(motor_direction_), "Traversal: motor direction must be finite");
    for (std::size_t i = 0; i < contacts_.size(); ++i) {
      detail::require(std::isfinite(contacts_[i].time), "Traversal: contact times must be finite");
      if (i > 0) {
        detail::require(contacts_[i].time > contacts_[i - 1].time,
                        "Traversal: contact times must be strictly increasing");
        detail::require(contacts_[i].features.size() == contacts_[0].features.size(),
                        "Traversal: all contacts must share one dimension");
      }
    }
  }

  /// Rejects traversals whose contact gaps would let packets of span
  /// `tau_base` overlap.
  void require_gaps_exceed(double tau_base) const {
    for (std::size_t i = 1; i < contacts_.size(); ++i)
      detail::require(contacts_[i].time - contacts_[i - 1].time > tau_base,
                      "Traversal: contact gap must exceed the encoder's tau_base");
  }

  std::span<const Contact> contacts() const { return contacts_; }
  std::size_t size() const { return contacts_.size(); }
  double motor_direction() const { return motor_direction_; }
  const std::string& label() const { return label_; }
  std::size_t dimension() const { return contacts_.empty() ? 0 : contacts_.front().features.size(); }

 private:
  std::vector<Contact> contacts_;
  double motor_direction_ = 0.0;
  std::string label_;
};

struct Displacement {
  double dx = 0.0;
  double dy = 0.0;
  double dz = 0.0;

  double norm() const { return std::sqrt(dx * dx + dy * dy + dz * dz); }
  friend bool operator==(const Displacement&, const Displacement&) = default;
};

struct LatencyParams {
  double assumed_velocity = 1.0;  // world units per second

  void validate() const {
    detail::require(std::isfinite(assumed_velocity) && assumed_velocity > 0.0,
                    "LatencyParams: assumed_velocity must be positive and finite");
  }
};

}  // namespace tempocode
