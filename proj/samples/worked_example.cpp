// Walks through the smooth / curved / edge example: dense sums coincide for
// both sweep directions, spike packets do not, and STDP separates them.

#include <cstdio>
#include <vector>

#include "tempocode/tempocode.hpp"

using namespace tempocode;

namespace {

void print_packet(const char* name, const SpikePacket& p) {
  std::printf("  %-10s", name);
  for (const auto& s : p.firing_order()) std::printf("  n%u @ %.1f ms", s.neuron, 1e3 * s.offset);
  std::printf("\n");
}

}  // namespace

int main() {
  const auto objects = discrimination_objects();
  const EncoderParams enc;
  const StdpParams stdp;
  const WorldParams world;  // noiseless

  std::vector<WeightMatrix> trained;
  for (const auto& obj : objects) {
    const auto tr = generate_traversal(obj, world, {});
    const auto sum = dense_sum(tr);
    std::printf("%s (%s): dense sum [%.1f, %.1f, %.1f]\n", obj.label.c_str(), obj.pattern().c_str(), sum[0], sum[1],
                sum[2]);
    const auto packets = encode_traversal(tr, enc);
    for (std::size_t k = 0; k < packets.size(); ++k) print_packet(obj.contact_names[k].c_str(), packets[k]);
    trained.push_back(train_on_traversal(WeightMatrix(3), packets, stdp));
  }

  std::printf("\nalignment (rows: traversal, cols: model)\n");
  for (const auto& obj : objects) {
    const auto packets = encode_traversal(generate_traversal(obj, world, {}), enc);
    std::printf("  %-9s", obj.label.c_str());
    for (const auto& w : trained) std::printf("  %.5f", traversal_alignment(packets, scoring_matrix(w, true), 0.5));
    std::printf("\n");
  }
  return 0;
}
