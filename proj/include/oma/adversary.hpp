#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oma/graph.hpp"

namespace oma {

// An oblivious message adversary: the finite set D of graphs it may play in
// any round. Graph order is significant (it fixes node indices everywhere).
//
// Construction rejects: an empty list, mixed process counts, duplicate names,
// and duplicate adjacency. Graphs with an empty name are named G1, G2, ...
// Non-rooted graphs are accepted; the decision procedure reports them.
class Adversary {
 public:
  explicit Adversary(std::vector<CommunicationGraph> graphs);

  int n() const { return n_; }
  std::size_t size() const { return graphs_.size(); }
  const CommunicationGraph& operator[](std::size_t i) const { return graphs_[i]; }
  std::span<const CommunicationGraph> graphs() const { return graphs_; }

  bool all_rooted() const;
  // Index of the first graph that is not rooted.
  std::optional<std::size_t> first_unrooted() const;

  // Root bitmask per graph (0 when not rooted), contiguous for the subset kernel.
  std::span<const std::uint64_t> root_masks() const { return root_masks_; }
  // In-neighborhood bitmask per process of graph i, contiguous for the equality kernel.
  std::span<const std::uint64_t> in_rows(std::size_t i) const {
    return {in_rows_.data() + i * static_cast<std::size_t>(n_), static_cast<std::size_t>(n_)};
  }

  std::optional<std::size_t> index_of(std::string_view name) const;

  // Same n and the same graphs (adjacency and name) in the same order.
  bool operator==(const Adversary& other) const;

 private:
  int n_;
  std::vector<CommunicationGraph> graphs_;
  std::vector<std::uint64_t> root_masks_;
  std::vector<std::uint64_t> in_rows_;
};

}  // namespace oma
