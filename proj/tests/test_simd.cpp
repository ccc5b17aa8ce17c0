#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstring>
#include <vector>

#include "specfor/image.hpp"
#include "specfor/simd/kernels.hpp"
#include "specfor/simd/sort_network.hpp"
#include "support/synth.hpp"

using namespace specfor;
namespace simd = specfor::simd;

namespace {

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("selection network picks the requested order statistic") {
  synth::Rng rng(1);
  std::uniform_int_distribution<int> small(0, 5);  // many ties
  for (std::size_t n = 1; n <= 49; ++n) {
    for (std::size_t select : {std::size_t{0}, n / 2, n - 1}) {
      const auto net = simd::selection_network(n, select);
      for (int trial = 0; trial < 30; ++trial) {
        std::vector<double> v(n);
        for (double& x : v) x = trial % 2 ? small(rng) : std::uniform_real_distribution<double>(-1, 1)(rng);
        auto sorted = v;
        std::sort(sorted.begin(), sorted.end());
        for (const auto c : net) {
          const double a = v[c.lo], b = v[c.hi];
          v[c.lo] = std::min(a, b);
          v[c.hi] = std::max(a, b);
        }
        CHECK(v[select] == sorted[select]);
      }
    }
  }
}

TEST_CASE("median network for 3x3 is pruned") {
  // A full Batcher sort of 16 inputs needs 63 comparators.
  const auto mid = simd::selection_network(9, 4);
  CHECK(mid.size() < 30);
}

TEST_CASE("every available ISA matches the scalar kernels bit-for-bit") {
  const auto* scalar = simd::table_for(simd::Isa::Scalar);
  REQUIRE(scalar != nullptr);
  CHECK(simd::isa_name(simd::active().isa).size() > 0);

  for (auto isa : {simd::Isa::Avx2}) {
    const auto* table = simd::table_for(isa);
    if (!table) {
      MESSAGE("ISA " << simd::isa_name(isa) << " unavailable on this machine; skipping");
      continue;
    }
    synth::Rng rng(2);
    for (std::size_t k : {1u, 3u, 5u, 7u}) {
      for (std::size_t width : {1u, 3u, 4u, 7u, 13u, 32u, 37u}) {
        const std::size_t height = 9;
        const auto padded = synth::random_plane(rng, width + k - 1, height + k - 1, -500, 500);
        std::vector<double> taps(k * k);
        for (double& t : taps) t = std::uniform_real_distribution<double>(-3, 3)(rng);

        std::vector<double> ref(width * height), got(width * height);
        scalar->correlate(padded.values().data(), padded.width(), width, height, taps.data(), k, ref.data());
        table->correlate(padded.values().data(), padded.width(), width, height, taps.data(), k, got.data());
        CHECK(bitwise_equal(ref, got));

        scalar->median(padded.values().data(), padded.width(), width, height, k, ref.data());
        table->median(padded.values().data(), padded.width(), width, height, k, got.data());
        CHECK(ref == got);
      }
    }
  }
}
