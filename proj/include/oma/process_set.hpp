#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

namespace oma {

// Processes are 0-based internally and printed 1-based (p1..pn).
using Process = int;

inline constexpr int kMaxProcesses = 64;

// A subset of {0, ..., n-1} packed into one machine word.
class ProcessSet {
 public:
  constexpr ProcessSet() = default;
  constexpr explicit ProcessSet(std::uint64_t bits) : bits_(bits) {}

  static constexpr ProcessSet all(int n) {
    return ProcessSet(n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1);
  }
  static constexpr ProcessSet single(Process p) {
    return ProcessSet(std::uint64_t{1} << p);
  }
  static ProcessSet of(const std::vector<Process>& members) {
    ProcessSet s;
    for (Process p : members) s.insert(p);
    return s;
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool contains(Process p) const { return (bits_ >> p) & 1U; }
  constexpr void insert(Process p) { bits_ |= std::uint64_t{1} << p; }
  constexpr void erase(Process p) { bits_ &= ~(std::uint64_t{1} << p); }

  constexpr bool is_subset_of(ProcessSet other) const {
    return (bits_ & ~other.bits_) == 0;
  }
  constexpr bool intersects(ProcessSet other) const {
    return (bits_ & other.bits_) != 0;
  }
  // Smallest member; undefined on the empty set.
  constexpr Process min() const { return std::countr_zero(bits_); }

  constexpr ProcessSet operator|(ProcessSet o) const { return ProcessSet(bits_ | o.bits_); }
  constexpr ProcessSet operator&(ProcessSet o) const { return ProcessSet(bits_ & o.bits_); }
  constexpr ProcessSet operator-(ProcessSet o) const { return ProcessSet(bits_ & ~o.bits_); }
  constexpr ProcessSet& operator|=(ProcessSet o) { bits_ |= o.bits_; return *this; }
  constexpr ProcessSet& operator&=(ProcessSet o) { bits_ &= o.bits_; return *this; }

  constexpr auto operator<=>(const ProcessSet&) const = default;

  std::vector<Process> members() const {
    std::vector<Process> out;
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  // "{p1,p3}" using 1-based names.
  std::string to_string() const;

 private:
  std::uint64_t bits_ = 0;
};

}  // namespace oma
