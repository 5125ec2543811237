// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include <bit>

#include "oma/kernels.hpp"

namespace oma::kernels::avx2 {

std::uint64_t equal_mask_u64(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::uint64_t mask = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    const __m256i eq = _mm256_cmpeq_epi64(va, vb);
    const auto lanes = static_cast<unsigned>(_mm256_movemask_pd(_mm256_castsi256_pd(eq)));
    mask |= std::uint64_t{lanes} << i;
  }
  for (; i < n; ++i) {
    if (a[i] == b[i]) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

std::uint64_t equal_mask_u32(const std::uint32_t* a, const std::uint32_t* b, std::size_t n) {
  std::uint64_t mask = 0;
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    const __m256i eq = _mm256_cmpeq_epi32(va, vb);
    const auto lanes = static_cast<unsigned>(_mm256_movemask_ps(_mm256_castsi256_ps(eq)));
    mask |= std::uint64_t{lanes} << i;
  }
  for (; i < n; ++i) {
    if (a[i] == b[i]) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

std::size_t first_subset(const std::uint64_t* sets, std::size_t count, std::uint64_t super) {
  const __m256i vsuper = _mm256_set1_epi64x(static_cast<long long>(super));
  const __m256i zero = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= count; i += 4) {
    const __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(sets + i));
    // andnot(x, y) = ~x & y
    const __m256i outside = _mm256_andnot_si256(vsuper, v);
    const __m256i hit = _mm256_cmpeq_epi64(outside, zero);
    const auto lanes = static_cast<unsigned>(_mm256_movemask_pd(_mm256_castsi256_pd(hit)));
    if (lanes != 0) return i + static_cast<std::size_t>(std::countr_zero(lanes));
  }
  for (; i < count; ++i) {
    if ((sets[i] & ~super) == 0) return i;
  }
  return npos;
}

}  // namespace oma::kernels::avx2
