// aarch64 only; NEON is part of the base ISA there.

#include <arm_neon.h>

#include "oma/kernels.hpp"

namespace oma::kernels::neon {

std::uint64_t equal_mask_u64(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::uint64_t mask = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const uint64x2_t eq = vceqq_u64(vld1q_u64(a + i), vld1q_u64(b + i));
    mask |= (vgetq_lane_u64(eq, 0) & 1U) << i;
    mask |= (vgetq_lane_u64(eq, 1) & 1U) << (i + 1);
  }
  for (; i < n; ++i) {
    if (a[i] == b[i]) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

std::uint64_t equal_mask_u32(const std::uint32_t* a, const std::uint32_t* b, std::size_t n) {
  static const uint32_t kWeights[4] = {1, 2, 4, 8};
  const uint32x4_t weights = vld1q_u32(kWeights);
  std::uint64_t mask = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const uint32x4_t eq = vceqq_u32(vld1q_u32(a + i), vld1q_u32(b + i));
    const std::uint64_t lanes = vaddvq_u32(vandq_u32(eq, weights));
    mask |= lanes << i;
  }
  for (; i < n; ++i) {
    if (a[i] == b[i]) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

std::size_t first_subset(const std::uint64_t* sets, std::size_t count, std::uint64_t super) {
  const uint64x2_t vsuper = vdupq_n_u64(super);
  std::size_t i = 0;
  for (; i + 2 <= count; i += 2) {
    // vbicq(x, y) = x & ~y
    const uint64x2_t outside = vbicq_u64(vld1q_u64(sets + i), vsuper);
    const uint64x2_t hit = vceqzq_u64(outside);
    if (vgetq_lane_u64(hit, 0) != 0) return i;
    if (vgetq_lane_u64(hit, 1) != 0) return i + 1;
  }
  for (; i < count; ++i) {
    if ((sets[i] & ~super) == 0) return i;
  }
  return npos;
}

}  // namespace oma::kernels::neon
