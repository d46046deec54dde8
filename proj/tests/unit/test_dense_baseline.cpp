#include <catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "tempocode/dense_baseline.hpp"
#include "tempocode/world.hpp"

using namespace tempocode;
using Catch::Matchers::WithinAbs;

namespace {

Traversal make(const std::vector<FeatureVector>& fs, const std::string& label = "") {
  std::vector<Contact> cs;
  for (std::size_t k = 0; k < fs.size(); ++k) cs.push_back({fs[k], 0.020 * static_cast<double>(k)});
  return Traversal(cs, 0.0, label);
}

}  // namespace

TEST_CASE("dense_sum: A and B collapse to the same vector", "[dense-baseline]") {
  using namespace features;
  const auto a = dense_sum(make({smooth, curved, edge}));
  const auto b = dense_sum(make({edge, curved, smooth}));
  const std::vector<double> expected{0.9 + 0.2 + 0.1, 0.2 + 0.8 + 0.2, 0.1 + 0.2 + 0.9};
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK_THAT(a[i], WithinAbs(expected[i], 1e-15));
    CHECK(a[i] == b[i]);
  }
}

TEST_CASE("dense_train and classify", "[dense-baseline]") {
  const std::vector<std::vector<Traversal>> data{
      {make({FeatureVector{1.0, 0.0}}), make({FeatureVector{3.0, 0.0}})},
      {make({FeatureVector{0.0, 4.0}})},
  };
  const std::vector<std::string> labels{"left", "up"};
  const auto c = dense_train(data, labels);
  REQUIRE(c.size() == 2);
  CHECK(c[0].mean_sum == std::vector<double>{2.0, 0.0});
  CHECK(c[1].mean_sum == std::vector<double>{0.0, 4.0});
  CHECK(dense_classify(make({FeatureVector{1.9, 0.5}}), c) == "left");
  CHECK(dense_classify(make({FeatureVector{0.2, 3.0}}), c) == "up");
  // equidistant: lowest index wins
  const std::vector<Centroid> tie{{"a", {1.0, 0.0}}, {"b", {0.0, 1.0}}};
  CHECK(dense_classify_index(make({FeatureVector{0.0, 0.0}}), tie) == 0);
}

TEST_CASE("dense baseline cannot separate noiseless A from B", "[dense-baseline]") {
  using namespace features;
  const std::vector<std::vector<Traversal>> data{{make({smooth, curved, edge})}, {make({edge, curved, smooth})}};
  const std::vector<std::string> labels{"A", "B"};
  const auto c = dense_train(data, labels);
  CHECK(c[0].mean_sum == c[1].mean_sum);
  CHECK(dense_classify_index(make({edge, curved, smooth}), c) == 0);
}

TEST_CASE("dense baseline errors", "[dense-baseline]") {
  const std::vector<std::string> one{"x"};
  const std::vector<std::vector<Traversal>> empty_class{{}};
  CHECK_THROWS_AS(dense_train(empty_class, one), InvalidArgument);
  const std::vector<std::vector<Traversal>> data{{make({FeatureVector{1.0}})}};
  const std::vector<std::string> two{"x", "y"};
  CHECK_THROWS_AS(dense_train(data, two), InvalidArgument);
  CHECK_THROWS_AS(dense_classify_index(make({FeatureVector{1.0}}), std::vector<Centroid>{}), InvalidArgument);
  const std::vector<Centroid> c{{"x", {1.0, 2.0}}};
  CHECK_THROWS_AS(dense_classify_index(make({FeatureVector{1.0}}), c), InvalidArgument);
}
