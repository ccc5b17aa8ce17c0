#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace specfor::simd {

struct Comparator {
  std::uint16_t lo;
  std::uint16_t hi;
};

/// Batcher odd-even merge sort for n inputs, pruned down to the comparators
/// that can influence output position `select`. After applying them in order
/// (lo <- min, hi <- max), position `select` holds the select-th order
/// statistic.
std::vector<Comparator> selection_network(std::size_t n, std::size_t select);

}  // namespace specfor::simd
