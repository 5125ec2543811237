#pragma once

// Data-parallel inner loops of the analyses.
//
// Every kernel has a scalar reference implementation and, where the target
// supports it, a vectorized variant. The variant is selected once at runtime
// from CPU features; tests pin each available variant and compare it with the
// scalar reference.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace oma::kernels {

enum class Isa { scalar, avx2, neon };

std::string_view isa_name(Isa isa);

// Variants compiled in and supported by the running CPU; scalar is always first.
std::vector<Isa> available_isas();

Isa active_isa();

// Pins the dispatch table to one variant. Throws InvalidArgument if the
// variant is not available. Not thread-safe with concurrent kernel calls.
void force_isa(Isa isa);

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

// Bit i of the result is set iff a[i] == b[i]. Requires a.size() == b.size() <= 64.
std::uint64_t equal_mask(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b);
std::uint64_t equal_mask(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

// Index of the first element s of `sets` with s a subset of `super`
// (s & ~super == 0), or npos.
std::size_t first_subset(std::span<const std::uint64_t> sets, std::uint64_t super);

namespace scalar {
std::uint64_t equal_mask_u64(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
std::uint64_t equal_mask_u32(const std::uint32_t* a, const std::uint32_t* b, std::size_t n);
std::size_t first_subset(const std::uint64_t* sets, std::size_t count, std::uint64_t super);
}  // namespace scalar

#if defined(OMA_HAVE_AVX2)
namespace avx2 {
std::uint64_t equal_mask_u64(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
std::uint64_t equal_mask_u32(const std::uint32_t* a, const std::uint32_t* b, std::size_t n);
std::size_t first_subset(const std::uint64_t* sets, std::size_t count, std::uint64_t super);
}  // namespace avx2
#endif

#if defined(OMA_HAVE_NEON)
namespace neon {
std::uint64_t equal_mask_u64(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);
std::uint64_t equal_mask_u32(const std::uint32_t* a, const std::uint32_t* b, std::size_t n);
std::size_t first_subset(const std::uint64_t* sets, std::size_t count, std::uint64_t super);
}  // namespace neon
#endif

}  // namespace oma::kernels
