#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

#include "tempocode/spike_encoding.hpp"
#include "tempocode/stdp.hpp"
#include "tempocode/world.hpp"

using namespace tempocode;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

std::vector<SpikePacket> packets_for(const std::vector<FeatureVector>& contacts, double interval = 0.020) {
  std::vector<SpikePacket> out;
  for (std::size_t k = 0; k < contacts.size(); ++k)
    out.push_back(encode(contacts[k], EncoderParams{}, static_cast<double>(k) * interval));
  return out;
}

}  // namespace

TEST_CASE("stdp_update examples", "[stdp]") {
  const StdpParams p;
  CHECK_THAT(stdp_update(0.0, 0.0, 0.020, p), WithinAbs(0.01 * std::exp(-1.0), 1e-15));
  CHECK_THAT(stdp_update(0.0, 0.0, 0.020, p), WithinAbs(0.0036788, 1e-7));
  CHECK(stdp_update(0.5, 0.3, 0.3, p) == 0.5);
  CHECK_THAT(stdp_update(0.0, 0.020, 0.0, p), WithinAbs(-0.01 * std::exp(-1.0), 1e-15));
}

TEST_CASE("stdp_update: antisymmetry and window decay", "[stdp]") {
  const StdpParams p;
  const double tau = p.tau_plus;
  double prev_mag = INFINITY;
  for (int k = 1; k <= 50; ++k) {
    const double dt = 0.1 * k * tau;
    const double up = stdp_update(0.2, 0.0, dt, p) - 0.2;
    const double down = stdp_update(0.2, dt, 0.0, p) - 0.2;
    CHECK_THAT(up, WithinAbs(-down, 1e-15));
    CHECK(up > 0.0);
    CHECK(up < prev_mag);
    prev_mag = up;
  }
  CHECK(stdp_update(0.0, 0.0, 100.0, p) < 1e-200);
}

TEST_CASE("train_on_traversal: hand-traced Traversal A", "[stdp]") {
  const StdpParams p;
  const auto w = train_on_traversal(WeightMatrix(3), packets_for({features::smooth, features::curved, features::edge}), p);

  // Global spike times, traced by hand from the encoder rule:
  //   S @ 0.00: n0 0, n1 5 ms          (n2 = 0.1 stays silent)
  //   C @ 0.02: n1 0, n0 3.33, n2 6.67 (tie 0.2/0.2 -> lower id first)
  //   E @ 0.04: n2 0, n1 5 ms
  const double tau = 0.010;
  const std::vector<std::map<int, double>> spikes = {
      {{0, 0.0}, {1, 0.005}},
      {{1, 0.020}, {0, 0.020 + tau / 3}, {2, 0.020 + 2 * tau / 3}},
      {{2, 0.040}, {1, 0.045}},
  };
  double expected[3][3] = {};
  for (std::size_t t = 1; t < spikes.size(); ++t)
    for (const auto& [i, ti] : spikes[t - 1])
      for (const auto& [j, tj] : spikes[t]) expected[i][j] += 0.01 * std::exp(-(tj - ti) / 0.020);

  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) CHECK_THAT(w(i, j), WithinAbs(expected[i][j], 1e-15));

  CHECK(w(0, 1) > 0.0);  // smooth -> curved
  CHECK(w(1, 2) > 0.0);  // curved -> edge
  // Cross-packet pairs always have dt > 0, so every co-active pair potentiates,
  // including edge -> curved and curved -> smooth.
  CHECK(w(2, 1) > 0.0);
  CHECK(w(1, 0) > 0.0);
  CHECK(w(2, 0) == 0.0);  // edge never precedes smooth in consecutive packets
  // The forward chain still dominates.
  CHECK(w(0, 1) + w(1, 2) > w(2, 1) + w(1, 0));
}

TEST_CASE("train_on_traversal: fewer than two packets is a no-op", "[stdp]") {
  WeightMatrix w(3);
  w(1, 2) = 0.7;
  CHECK(train_on_traversal(w, std::vector<SpikePacket>{}, StdpParams{}) == w);
  CHECK(train_on_traversal(w, packets_for({features::smooth}), StdpParams{}) == w);
}

TEST_CASE("train_on_traversal: direction encoding", "[stdp]") {
  using namespace features;
  WeightMatrix wa(3), wb(3);
  for (int rep = 0; rep < 50; ++rep) {
    wa = train_on_traversal(std::move(wa), packets_for({smooth, curved, edge}), StdpParams{});
    wb = train_on_traversal(std::move(wb), packets_for({edge, curved, smooth}), StdpParams{});
  }
  CHECK(wa(0, 1) + wa(1, 2) > wa(2, 1) + wa(1, 0));
  CHECK(wb(2, 1) + wb(1, 0) > wb(0, 1) + wb(1, 2));
}

TEST_CASE("train_on_traversal: mirror symmetry with an untied middle contact", "[stdp]") {
  using namespace features;
  // With a middle contact whose packet is mirror-invariant, A and B train
  // mirror-image pathways.
  const FeatureVector middle{0.05, 0.8, 0.05};
  WeightMatrix w(3);
  w = train_on_traversal(std::move(w), packets_for({smooth, middle, edge}), StdpParams{});
  w = train_on_traversal(std::move(w), packets_for({edge, middle, smooth}), StdpParams{});
  CHECK(w(0, 1) == w(2, 1));
  CHECK(w(1, 2) == w(1, 0));

  // The canonical curved contact ties neurons 0 and 2; ascending-id
  // tie-breaking fires n0 before n2 in both sweeps and breaks the mirror.
  WeightMatrix canon(3);
  canon = train_on_traversal(std::move(canon), packets_for({smooth, curved, edge}), StdpParams{});
  canon = train_on_traversal(std::move(canon), packets_for({edge, curved, smooth}), StdpParams{});
  CHECK(canon(0, 1) != canon(2, 1));
}

TEST_CASE("train_on_traversal: order of training traversals does not matter", "[stdp]") {
  const auto objs = builtin_objects();
  std::vector<std::vector<SpikePacket>> set;
  for (std::size_t k = 0; k < 12; ++k) {
    const auto tr = generate_traversal(objs[k % 2], WorldParams{0.2, 0.020, 1.0, 99}, {1, k % 2, k});
    std::vector<SpikePacket> ps;
    for (const auto& c : tr.contacts()) ps.push_back(encode(c.features, EncoderParams{}, c.time));
    set.push_back(ps);
  }
  WeightMatrix fwd(3), rev(3);
  for (const auto& ps : set) fwd = train_on_traversal(std::move(fwd), ps, StdpParams{});
  for (auto it = set.rbegin(); it != set.rend(); ++it) rev = train_on_traversal(std::move(rev), *it, StdpParams{});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK_THAT(fwd(i, j), WithinRel(rev(i, j), 1e-12));
}

TEST_CASE("train_on_traversal: self-connections on repeated features", "[stdp]") {
  using namespace features;
  const auto w = train_on_traversal(WeightMatrix(3), packets_for({smooth, smooth, smooth}), StdpParams{});
  CHECK(w(0, 0) > 0.0);
  CHECK(w(1, 1) > 0.0);
}

TEST_CASE("train_on_traversal: rejects bad packets", "[stdp]") {
  const std::vector<SpikePacket> out_of_range = {SpikePacket({{0, 0.0}}, 0.0), SpikePacket({{5, 0.0}}, 0.02)};
  CHECK_THROWS_AS(train_on_traversal(WeightMatrix(3), out_of_range, StdpParams{}), InvalidArgument);

  const std::vector<SpikePacket> overlapping = {SpikePacket({{0, 0.0}, {1, 0.008}}, 0.0),
                                                SpikePacket({{1, 0.0}}, 0.005)};
  CHECK_THROWS_AS(train_on_traversal(WeightMatrix(3), overlapping, StdpParams{}), InvalidArgument);

  const std::vector<SpikePacket> reversed = {SpikePacket({{0, 0.0}}, 0.04), SpikePacket({{1, 0.0}}, 0.0)};
  CHECK_THROWS_AS(train_on_traversal(WeightMatrix(3), reversed, StdpParams{}), InvalidArgument);
}

TEST_CASE("train_on_traversal: optional clip bounds weights", "[stdp]") {
  StdpParams p;
  p.clip = 0.004;
  WeightMatrix w(3);
  for (int rep = 0; rep < 20; ++rep)
    w = train_on_traversal(std::move(w), packets_for({features::smooth, features::curved, features::edge}), p);
  for (double x : w.data()) CHECK(std::abs(x) <= 0.004);
}
