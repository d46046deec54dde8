#pragma once

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "tempocode/core_types.hpp"

namespace tempocode {

struct Centroid {
  std::string label;
  std::vector<double> mean_sum;
};

/// Componentwise sum of a traversal's contact vectors.
inline std::vector<double> dense_sum(const Traversal& t) {
  detail::require(t.size() > 0, "dense_sum: empty traversal");
  std::vector<double> s(t.dimension(), 0.0);
  for (const auto& c : t.contacts())
    for (std::size_t i = 0; i < s.size(); ++i) s[i] += c.features[i];
  return s;
}

/// One centroid per class: the mean of the class's traversal sums.
/// `per_class[c]` holds the training traversals of class c.
inline std::vector<Centroid> dense_train(std::span<const std::vector<Traversal>> per_class,
                                         std::span<const std::string> labels) {
  detail::require(!per_class.empty(), "dense_train: no classes");
  detail::require(labels.size() == per_class.size(), "dense_train: one label per class required");
  std::vector<Centroid> out;
  for (std::size_t c = 0; c < per_class.size(); ++c) {
    detail::require(!per_class[c].empty(), "dense_train: class '" + labels[c] + "' has no training traversals");
    std::vector<double> acc;
    for (const auto& t : per_class[c]) {
      auto s = dense_sum(t);
      if (acc.empty()) acc.assign(s.size(), 0.0);
      detail::require(s.size() == acc.size(), "dense_train: dimension mismatch");
      for (std::size_t i = 0; i < s.size(); ++i) acc[i] += s[i];
    }
    for (double& x : acc) x /= static_cast<double>(per_class[c].size());
    out.push_back({labels[c], std::move(acc)});
  }
  return out;
}

/// Index of the Euclidean-nearest centroid to the traversal's sum; lowest
/// index wins ties.
inline std::size_t dense_classify_index(const Traversal& t, std::span<const Centroid> centroids) {
  detail::require(!centroids.empty(), "dense_classify: no centroids");
  const auto s = dense_sum(t);
  std::size_t best = 0;
  double best_d = INFINITY;
  for (std::size_t c = 0; c < centroids.size(); ++c) {
    detail::require(centroids[c].mean_sum.size() == s.size(), "dense_classify: dimension mismatch");
    double d = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) d += (s[i] - centroids[c].mean_sum[i]) * (s[i] - centroids[c].mean_sum[i]);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

inline const std::string& dense_classify(const Traversal& t, std::span<const Centroid> centroids) {
  return centroids[dense_classify_index(t, centroids)].label;
}

}  // namespace tempocode
