#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oma/adversary.hpp"
#include "oma/indist.hpp"

namespace oma {

inline constexpr std::uint64_t kDefaultPatternBudget = 200'000;

// A finite communication pattern: the graph index (into an Adversary) played
// in each round. Round numbers are 1-based; the empty pattern is valid.
class Pattern {
 public:
  Pattern() = default;
  explicit Pattern(std::vector<std::uint32_t> rounds) : rounds_(std::move(rounds)) {}

  // G repeated r times.
  static Pattern repeat(std::uint32_t graph, std::size_t r) {
    return Pattern(std::vector<std::uint32_t>(r, graph));
  }

  std::size_t length() const { return rounds_.size(); }
  bool empty() const { return rounds_.empty(); }
  std::span<const std::uint32_t> rounds() const { return rounds_; }
  // sigma(r), 1 <= r <= length().
  std::uint32_t at(std::size_t r) const { return rounds_.at(r - 1); }

  Pattern prefix(std::size_t r) const;
  Pattern extended(std::uint32_t graph) const;

  auto operator<=>(const Pattern&) const = default;

 private:
  std::vector<std::uint32_t> rounds_;
};

// sigma - r': sigma with round r' omitted. Requires 1 <= r' <= length.
Pattern remove_round(const Pattern& sigma, std::size_t r_prime);

// "Ga.Gc.Ga"; the empty pattern prints as "()".
std::string pattern_name(const Adversary& d, const Pattern& sigma);
// Inverse of pattern_name. Throws InvalidArgument on unknown graph names.
Pattern parse_pattern(const Adversary& d, std::string_view text);

// Position of sigma among all patterns of its length in lexicographic order.
std::uint64_t pattern_index(const Pattern& sigma, std::size_t graph_count);
Pattern pattern_at(std::uint64_t index, std::size_t graph_count, std::size_t length);

using ViewId = std::uint32_t;

// Hash-consing store for full-information views.
//
// The round-0 view of process p has id p. A round-r view of p is interned from
// (p, r, sorted ids of the round-(r-1) views it received), so two views share
// an id iff they are structurally equal. Ids are canonical for the lifetime of
// the store, across every pattern evaluated against it. Not thread-safe.
class ViewStore {
 public:
  explicit ViewStore(int n);

  int n() const { return n_; }
  std::size_t size() const { return offsets_.size(); }

  ViewId intern(Process p, std::uint32_t round, std::span<const ViewId> children);

  // Round r+1 views from round r views under graph g.
  void advance(std::span<const ViewId> current, const CommunicationGraph& g,
               std::uint32_t next_round, std::span<ViewId> next);

  Process owner(ViewId id) const;
  std::uint32_t round(ViewId id) const;
  std::span<const ViewId> children(ViewId id) const;

 private:
  std::uint64_t hash(Process p, std::uint32_t round, std::span<const ViewId> children) const;
  bool matches(ViewId id, Process p, std::uint32_t round, std::span<const ViewId> children) const;
  void grow();

  int n_;
  std::vector<std::uint32_t> arena_;   // per id: p, round, k, children...
  std::vector<std::size_t> offsets_;   // id -> arena offset
  std::vector<ViewId> slots_;          // open addressing, kEmpty when free
  std::size_t used_ = 0;
  std::vector<ViewId> scratch_;
};

// view ids of every process at every time 0..length.
class ViewTable {
 public:
  ViewTable(int n, std::size_t length) : n_(n), ids_((length + 1) * static_cast<std::size_t>(n)) {}

  std::size_t length() const { return ids_.size() / static_cast<std::size_t>(n_) - 1; }
  ViewId at(Process p, std::size_t r) const { return ids_[r * n_ + p]; }
  std::span<const ViewId> row(std::size_t r) const {
    return {ids_.data() + r * n_, static_cast<std::size_t>(n_)};
  }
  std::span<ViewId> row(std::size_t r) { return {ids_.data() + r * n_, static_cast<std::size_t>(n_)}; }

 private:
  int n_;
  std::vector<ViewId> ids_;
};

ViewTable views(const Adversary& d, const Pattern& sigma, ViewStore& store);

// sigma ~_p sigma'. Throws InvalidArgument when lengths differ.
bool indistinguishable(const Adversary& d, const Pattern& sigma, const Pattern& sigma_prime,
                       Process p, ViewStore& store);
bool indistinguishable(const Adversary& d, const Pattern& sigma, const Pattern& sigma_prime,
                       Process p);

// {p : sigma ~_p sigma'} for equal-length patterns.
ProcessSet indistinguishability_label(const Adversary& d, const Pattern& sigma,
                                      const Pattern& sigma_prime, ViewStore& store);

// (p, r_from) ~> (q, r_to) in sigma. Requires 0 <= r_from < r_to <= length.
bool heard_of(const Adversary& d, const Pattern& sigma, Process p, std::size_t r_from, Process q,
              std::size_t r_to);

// Processes whose round-0 state reaches every process by the end of sigma.
ProcessSet broadcasters(const Adversary& d, const Pattern& sigma);

// All |D|^r patterns of length r in lexicographic order, with their final
// view rows and broadcaster sets.
class PatternSpace {
 public:
  std::size_t size() const { return broadcasters_.size(); }
  std::size_t rounds() const { return rounds_; }
  std::size_t graph_count() const { return graph_count_; }
  int n() const { return n_; }

  Pattern pattern(std::size_t index) const { return pattern_at(index, graph_count_, rounds_); }
  std::span<const ViewId> final_views(std::size_t index) const {
    return {views_.data() + index * n_, static_cast<std::size_t>(n_)};
  }
  ProcessSet broadcasters(std::size_t index) const { return broadcasters_[index]; }

 private:
  friend PatternSpace enumerate_patterns(const Adversary&, std::size_t, ViewStore&, std::uint64_t);

  std::size_t rounds_ = 0;
  std::size_t graph_count_ = 0;
  int n_ = 0;
  std::vector<ViewId> views_;
  std::vector<ProcessSet> broadcasters_;
};

// Throws BudgetExceeded when |D|^r > budget.
PatternSpace enumerate_patterns(const Adversary& d, std::size_t r, ViewStore& store,
                                std::uint64_t budget = kDefaultPatternBudget);

// Components of I(D^r) straight from shared view ids, without materializing edges.
Components pattern_components(const PatternSpace& space);

// I(D^r) with labels, nodes in the space's lexicographic order.
IndistGraph pattern_indist_graph(const PatternSpace& space);
IndistGraph pattern_indist_graph(const Adversary& d, std::size_t r,
                                 std::uint64_t budget = kDefaultPatternBudget);

}  // namespace oma
