#include "oma/kernels.hpp"

#include <atomic>
#include <cassert>

#include "oma/error.hpp"

namespace oma::kernels {

namespace scalar {

std::uint64_t equal_mask_u64(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == b[i]) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

std::uint64_t equal_mask_u32(const std::uint32_t* a, const std::uint32_t* b, std::size_t n) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == b[i]) mask |= std::uint64_t{1} << i;
  }
  return mask;
}

std::size_t first_subset(const std::uint64_t* sets, std::size_t count, std::uint64_t super) {
  for (std::size_t i = 0; i < count; ++i) {
    if ((sets[i] & ~super) == 0) return i;
  }
  return npos;
}

}  // namespace scalar

namespace {

struct Table {
  Isa isa;
  std::uint64_t (*eq64)(const std::uint64_t*, const std::uint64_t*, std::size_t);
  std::uint64_t (*eq32)(const std::uint32_t*, const std::uint32_t*, std::size_t);
  std::size_t (*subset)(const std::uint64_t*, std::size_t, std::uint64_t);
};

constexpr Table kScalar{Isa::scalar, scalar::equal_mask_u64, scalar::equal_mask_u32,
                        scalar::first_subset};
#if defined(OMA_HAVE_AVX2)
constexpr Table kAvx2{Isa::avx2, avx2::equal_mask_u64, avx2::equal_mask_u32, avx2::first_subset};
#endif
#if defined(OMA_HAVE_NEON)
constexpr Table kNeon{Isa::neon, neon::equal_mask_u64, neon::equal_mask_u32, neon::first_subset};
#endif

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(OMA_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(OMA_HAVE_NEON)
      return true;  // mandatory on aarch64
#else
      return false;
#endif
  }
  return false;
}

const Table* table_for(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return &kScalar;
#if defined(OMA_HAVE_AVX2)
    case Isa::avx2:
      return &kAvx2;
#endif
#if defined(OMA_HAVE_NEON)
    case Isa::neon:
      return &kNeon;
#endif
    default:
      return nullptr;
  }
}

const Table* best_table() {
  const auto isas = available_isas();
  return table_for(isas.back());
}

std::atomic<const Table*>& active() {
  static std::atomic<const Table*> table{best_table()};
  return table;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "unknown";
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out{Isa::scalar};
  for (Isa isa : {Isa::avx2, Isa::neon}) {
    if (table_for(isa) != nullptr && cpu_supports(isa)) out.push_back(isa);
  }
  return out;
}

Isa active_isa() { return active().load(std::memory_order_relaxed)->isa; }

void force_isa(Isa isa) {
  const Table* t = table_for(isa);
  if (t == nullptr || !cpu_supports(isa)) {
    throw InvalidArgument("kernel variant '" + std::string(isa_name(isa)) + "' not available");
  }
  active().store(t, std::memory_order_relaxed);
}

std::uint64_t equal_mask(std::span<const std::uint64_t> a, std::span<const std::uint64_t> b) {
  assert(a.size() == b.size() && a.size() <= 64);
  return active().load(std::memory_order_relaxed)->eq64(a.data(), b.data(), a.size());
}

std::uint64_t equal_mask(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  assert(a.size() == b.size() && a.size() <= 64);
  return active().load(std::memory_order_relaxed)->eq32(a.data(), b.data(), a.size());
}

std::size_t first_subset(std::span<const std::uint64_t> sets, std::uint64_t super) {
  return active().load(std::memory_order_relaxed)->subset(sets.data(), sets.size(), super);
}

}  // namespace oma::kernels
