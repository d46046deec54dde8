#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "tempocode/rng.hpp"
#include "tempocode/world.hpp"

using namespace tempocode;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Pcg32 reproduces the reference sequence", "[world]") {
  // Published output of the minimal C implementation, seed 42, sequence 54.
  rng::Pcg32 g(42, 54);
  const std::uint32_t expected[] = {0xa15c02b7, 0x7b47f409, 0xba1d3330, 0x83d2f293, 0xbfa4784b, 0xcbed606e};
  for (auto e : expected) CHECK(g() == e);
}

TEST_CASE("hash_coords is order sensitive and deterministic", "[world]") {
  CHECK(rng::hash_coords({1, 2, 3}) == rng::hash_coords({1, 2, 3}));
  CHECK(rng::hash_coords({1, 2, 3}) != rng::hash_coords({3, 2, 1}));
  CHECK(rng::hash_coords({1, 2}) != rng::hash_coords({1, 2, 0}));
  CHECK(rng::derive_seed(42, {4, 0}) != rng::derive_seed(42, {4, 1}));
}

TEST_CASE("gaussian_at has unit moments", "[world]") {
  const std::size_t n = 200000;
  double s = 0, s2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = rng::gaussian_at(7, {99, i});
    s += x;
    s2 += x * x;
  }
  const double mean = s / n, var = s2 / n - mean * mean;
  CHECK(std::abs(mean) < 0.01);
  CHECK_THAT(var, WithinAbs(1.0, 0.015));
}

TEST_CASE("builtin objects", "[world]") {
  const auto objs = builtin_objects();
  REQUIRE(objs.size() == 5);
  CHECK(objs[0].pattern() == "S-C-E");
  CHECK(objs[1].pattern() == "E-C-S");
  CHECK(objs[2].pattern() == "S-S-S");
  CHECK(objs[3].pattern() == "S-C-S");
  CHECK(objs[4].pattern() == "S-C-E");
  CHECK(discrimination_objects().size() == 2);
  CHECK(complexity_objects().front().label == "Uniform");

  // A and B have identical dense sums.
  for (std::size_t i = 0; i < 3; ++i) {
    double a = 0, b = 0;
    for (const auto& c : objs[0].contacts) a += c[i];
    for (const auto& c : objs[1].contacts) b += c[i];
    CHECK(a == b);
  }
  CHECK(features::smooth == FeatureVector{0.9, 0.2, 0.1});
  CHECK(features::curved == FeatureVector{0.2, 0.8, 0.2});
  CHECK(features::edge == FeatureVector{0.1, 0.2, 0.9});
}

TEST_CASE("generate_traversal: noiseless contacts and timing", "[world]") {
  const auto a = builtin_objects()[0];
  const auto tr = generate_traversal(a, WorldParams{0.0, 0.020, 1.0, 42}, {1, 0, 0});
  REQUIRE(tr.size() == 3);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(tr.contacts()[k].features == a.contacts[k]);
    CHECK(tr.contacts()[k].time == 0.020 * static_cast<double>(k));
  }
  CHECK(tr.motor_direction() == 0.0);
  CHECK(tr.label() == "Object A");
}

TEST_CASE("generate_traversal: deterministic per stream, distinct across streams", "[world]") {
  const auto a = builtin_objects()[0];
  const WorldParams p{0.1, 0.020, 1.0, 42};
  const auto t1 = generate_traversal(a, p, {1, 0, 3});
  const auto t2 = generate_traversal(a, p, {1, 0, 3});
  const auto t3 = generate_traversal(a, p, {2, 0, 3});
  const auto t4 = generate_traversal(a, WorldParams{0.1, 0.020, 1.0, 43}, {1, 0, 3});
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(t1.contacts()[k].features == t2.contacts()[k].features);
    CHECK_FALSE(t1.contacts()[k].features == t3.contacts()[k].features);
    CHECK_FALSE(t1.contacts()[k].features == t4.contacts()[k].features);
  }
}

TEST_CASE("generate_traversal: noise statistics", "[world]") {
  const auto a = builtin_objects()[0];
  const double sigma = 0.05;
  const WorldParams p{sigma, 0.020, 1.0, 11};
  const std::size_t trials = 4000;
  double s = 0, s2 = 0, cross = 0;
  std::size_t n = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto tr = generate_traversal(a, p, {1, 0, t});
    std::vector<double> e;
    for (std::size_t k = 0; k < 3; ++k)
      for (std::size_t i = 0; i < 3; ++i) e.push_back(tr.contacts()[k].features[i] - a.contacts[k][i]);
    for (double x : e) {
      s += x;
      s2 += x * x;
      ++n;
    }
    for (std::size_t q = 1; q < e.size(); ++q) cross += e[q - 1] * e[q];
  }
  const double mean = s / n, sd = std::sqrt(s2 / n - mean * mean);
  CHECK(std::abs(mean) < 0.003);
  CHECK_THAT(sd, WithinRel(sigma, 0.05));
  const double corr = cross / (trials * 8.0) / (sigma * sigma);
  CHECK(std::abs(corr) < 0.05);
}

TEST_CASE("WorldParams validation", "[world]") {
  CHECK_THROWS_AS(WorldParams({-0.1, 0.020, 1.0, 1}).validate(0.010), InvalidArgument);
  CHECK_THROWS_AS(WorldParams({0.1, 0.010, 1.0, 1}).validate(0.010), InvalidArgument);
  CHECK_THROWS_AS(WorldParams({0.1, 0.020, 0.0, 1}).validate(0.010), InvalidArgument);
  CHECK_NOTHROW(WorldParams({0.1, 0.020, 1.0, 1}).validate(0.010));
}

TEST_CASE("objects_from_json", "[world]") {
  const auto one = objects_from_json(nlohmann::json::parse(R"({"label":"X","contacts":[[1,0],[0,1]]})"));
  REQUIRE(one.size() == 1);
  CHECK(one[0].label == "X");
  CHECK(one[0].pattern().empty());
  CHECK(one[0].contacts[1] == FeatureVector{0.0, 1.0});

  const auto two = objects_from_json(nlohmann::json::parse(
      R"([{"label":"P","contacts":[[1,0,0]],"names":["a"]},{"label":"Q","contacts":[[0,0,1]]}])"));
  REQUIRE(two.size() == 2);
  CHECK(two[0].pattern() == "a");

  CHECK_THROWS_AS(objects_from_json(nlohmann::json::parse(R"({"label":"X","contacts":[[1]],"colour":1})")),
                  InvalidArgument);
  CHECK_THROWS_AS(objects_from_json(nlohmann::json::parse(R"({"label":"X"})")), InvalidArgument);
  CHECK_THROWS_AS(objects_from_json(nlohmann::json::parse(R"({"label":"X","contacts":[[1,0],[1]]})")),
                  InvalidArgument);
  CHECK_THROWS_AS(objects_from_json(nlohmann::json::parse(
                      R"([{"label":"P","contacts":[[1,0]]},{"label":"Q","contacts":[[1,0,0]]}])")),
                  InvalidArgument);
  CHECK_THROWS_AS(objects_from_json(nlohmann::json::array()), InvalidArgument);
  CHECK_THROWS_AS(load_objects("/nonexistent/objects.json"), InvalidArgument);
}
