#include <algorithm>
#include <cstdlib>
#include <string>

#include "specfor/simd/kernels.hpp"
#include "specfor/simd/sort_network.hpp"

namespace specfor::simd {

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "unknown";
}

namespace {

constexpr KernelTable kScalarTable{Isa::Scalar, &scalar::correlate, &scalar::median};

#if defined(SPECFOR_HAVE_AVX2)
constexpr KernelTable kAvx2Table{Isa::Avx2, &avx2::correlate, &avx2::median};

bool cpu_has_avx2() {
#if defined(__GNUC__) || defined(__clang__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}
#endif

const KernelTable& pick() {
  if (const char* forced = std::getenv("SPECFOR_SIMD"); forced && std::string(forced) == "scalar") {
    return kScalarTable;
  }
#if defined(SPECFOR_HAVE_AVX2)
  if (cpu_has_avx2()) return kAvx2Table;
#endif
  return kScalarTable;
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = pick();
  return table;
}

const KernelTable* table_for(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return &kScalarTable;
    case Isa::Avx2:
#if defined(SPECFOR_HAVE_AVX2)
      return cpu_has_avx2() ? &kAvx2Table : nullptr;
#else
      return nullptr;
#endif
  }
  return nullptr;
}

std::vector<Comparator> selection_network(std::size_t n, std::size_t select) {
  std::size_t padded = 1;
  while (padded < n) padded <<= 1;

  std::vector<Comparator> full;
  for (std::size_t p = 1; p < padded; p <<= 1) {
    for (std::size_t k = p; k >= 1; k >>= 1) {
      for (std::size_t j = k % p; j + k < padded; j += 2 * k) {
        const std::size_t span = std::min(k, padded - j - k);
        for (std::size_t i = 0; i < span; ++i) {
          const std::size_t lo = i + j;
          const std::size_t hi = i + j + k;
          if (lo / (2 * p) != hi / (2 * p)) continue;
          // Slots past n act as +inf and never move, so their comparators are no-ops.
          if (hi >= n) continue;
          full.push_back({static_cast<std::uint16_t>(lo), static_cast<std::uint16_t>(hi)});
        }
      }
      if (k == 1) break;
    }
  }

  std::vector<bool> needed(n, false);
  needed[select] = true;
  std::vector<Comparator> kept;
  for (auto it = full.rbegin(); it != full.rend(); ++it) {
    if (needed[it->lo] || needed[it->hi]) {
      needed[it->lo] = needed[it->hi] = true;
      kept.push_back(*it);
    }
  }
  std::reverse(kept.begin(), kept.end());
  return kept;
}

}  // namespace specfor::simd
