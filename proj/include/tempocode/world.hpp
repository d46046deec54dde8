#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tempocode/core_types.hpp"
#include "tempocode/rng.hpp"

namespace tempocode {

/// An object as seen by a left-to-right sweep: its canonical contact vectors.
struct SyntheticObject {
  std::string label;
  std::vector<FeatureVector> contacts;
  std::vector<std::string> contact_names;  // optional, e.g. {"S", "C", "E"}

  void validate() const {
    detail::require(!contacts.empty(), "SyntheticObject '" + label + "': needs at least one contact");
    for (const auto& c : contacts)
      detail::require(c.size() == contacts.front().size(),
                      "SyntheticObject '" + label + "': contacts must share one dimension");
    detail::require(contact_names.empty() || contact_names.size() == contacts.size(),
                    "SyntheticObject '" + label + "': contact_names must match contacts");
  }

  std::size_t dimension() const { return contacts.front().size(); }

  /// "S-C-E" style description, or empty if contacts are unnamed.
  std::string pattern() const {
    std::string s;
    for (std::size_t i = 0; i < contact_names.size(); ++i) s += (i ? "-" : "") + contact_names[i];
    return s;
  }
};

namespace features {
inline const FeatureVector smooth{0.9, 0.2, 0.1};
inline const FeatureVector curved{0.2, 0.8, 0.2};
inline const FeatureVector edge{0.1, 0.2, 0.9};
}  // namespace features

/// Objects A (S-C-E) and B (E-C-S), then Uniform (S-S-S), Moderate (S-C-S)
/// and Complex (S-C-E).
inline std::vector<SyntheticObject> builtin_objects() {
  using namespace features;
  return {
      {"Object A", {smooth, curved, edge}, {"S", "C", "E"}},
      {"Object B", {edge, curved, smooth}, {"E", "C", "S"}},
      {"Uniform", {smooth, smooth, smooth}, {"S", "S", "S"}},
      {"Moderate", {smooth, curved, smooth}, {"S", "C", "S"}},
      {"Complex", {smooth, curved, edge}, {"S", "C", "E"}},
  };
}

inline std::vector<SyntheticObject> discrimination_objects() {
  auto all = builtin_objects();
  return {all[0], all[1]};
}

inline std::vector<SyntheticObject> complexity_objects() {
  auto all = builtin_objects();
  return {all[2], all[3], all[4]};
}

struct WorldParams {
  double noise_sigma = 0.0;
  double inter_contact_interval = 0.020;  // seconds
  double velocity = 1.0;                  // world units per second
  std::uint64_t seed = 42;

  void validate(double tau_base) const {
    detail::require(std::isfinite(noise_sigma) && noise_sigma >= 0.0, "WorldParams: noise_sigma must be >= 0");
    detail::require(std::isfinite(inter_contact_interval) && inter_contact_interval > tau_base,
                    "WorldParams: inter_contact_interval must exceed tau_base");
    detail::require(std::isfinite(velocity) && velocity > 0.0, "WorldParams: velocity must be positive");
  }
};

/// Names the noise sub-stream of one traversal. Draws for contact k,
/// component i come from seed XOR hash(domain, object, trial, k, i).
struct TrialStream {
  std::uint64_t domain = 0;  // e.g. train vs test
  std::uint64_t object = 0;
  std::uint64_t trial = 0;

  double gaussian(std::uint64_t seed, std::uint64_t contact, std::uint64_t component) const {
    return rng::gaussian_at(seed, {domain, object, trial, contact, component});
  }
};

/// One noisy sweep: i.i.d. N(0, sigma^2) per activation (unclipped), contact k
/// at time k * inter_contact_interval, motor direction 0.
inline Traversal generate_traversal(const SyntheticObject& obj, const WorldParams& params,
                                    const TrialStream& stream) {
  obj.validate();
  std::vector<Contact> contacts;
  contacts.reserve(obj.contacts.size());
  for (std::size_t k = 0; k < obj.contacts.size(); ++k) {
    std::vector<double> v(obj.contacts[k].values().begin(), obj.contacts[k].values().end());
    if (params.noise_sigma > 0.0)
      for (std::size_t i = 0; i < v.size(); ++i) v[i] += params.noise_sigma * stream.gaussian(params.seed, k, i);
    contacts.push_back({FeatureVector(std::move(v)), static_cast<double>(k) * params.inter_contact_interval});
  }
  return Traversal(std::move(contacts), 0.0, obj.label);
}

/// Reads `{ "label": str, "contacts": [[...], ...] }` or an array of such
/// objects. An optional "names" array labels the contacts.
inline std::vector<SyntheticObject> objects_from_json(const nlohmann::json& j) {
  auto one = [](const nlohmann::json& o) {
    detail::require(o.is_object(), "object JSON: expected an object");
    for (const auto& [key, _] : o.items())
      detail::require(key == "label" || key == "contacts" || key == "names", "object JSON: unknown key '" + key + "'");
    detail::require(o.contains("label") && o.contains("contacts"), "object JSON: needs \"label\" and \"contacts\"");
    SyntheticObject obj;
    obj.label = o.at("label").get<std::string>();
    for (const auto& c : o.at("contacts")) obj.contacts.emplace_back(c.get<std::vector<double>>());
    if (o.contains("names")) obj.contact_names = o.at("names").get<std::vector<std::string>>();
    obj.validate();
    return obj;
  };
  std::vector<SyntheticObject> out;
  if (j.is_array())
    for (const auto& o : j) out.push_back(one(o));
  else
    out.push_back(one(j));
  detail::require(!out.empty(), "object JSON: no objects");
  for (const auto& o : out)
    detail::require(o.dimension() == out.front().dimension(), "object JSON: objects must share one dimension");
  return out;
}

inline std::vector<SyntheticObject> load_objects(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open object file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw InvalidArgument("object file '" + path + "': " + e.what());
  }
  return objects_from_json(j);
}

}  // namespace tempocode
