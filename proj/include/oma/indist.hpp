#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oma/adversary.hpp"
#include "oma/process_set.hpp"

namespace oma {

using NodeId = std::uint32_t;

// Undirected edge with its label: the processes that cannot tell the two
// endpoints apart. Stored with u < v.
struct LabeledEdge {
  NodeId u;
  NodeId v;
  ProcessSet label;

  auto operator<=>(const LabeledEdge&) const = default;
};

// Undirected graph over nodes 0..node_count-1 whose edges carry nonempty
// process-set labels. Edges are kept sorted by (u, v) and are unique.
class IndistGraph {
 public:
  IndistGraph() = default;
  IndistGraph(std::size_t node_count, std::vector<LabeledEdge> edges);

  std::size_t node_count() const { return node_count_; }
  std::span<const LabeledEdge> edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }

  std::optional<ProcessSet> label(NodeId a, NodeId b) const;
  bool has_edge(NodeId a, NodeId b) const { return label(a, b).has_value(); }

  // Sub-graph on the same nodes keeping edges where keep[i] is true.
  IndistGraph filtered(const std::vector<bool>& keep) const;

  bool operator==(const IndistGraph&) const = default;

 private:
  std::size_t node_count_ = 0;
  std::vector<LabeledEdge> edges_;
};

// Connected components, numbered in order of their smallest node.
struct Components {
  std::vector<std::uint32_t> component_of;       // node -> component id
  std::vector<std::vector<NodeId>> members;       // sorted node lists

  std::size_t count() const { return members.size(); }
};

Components connected_components(const IndistGraph& graph);
Components connected_components(std::size_t node_count, std::span<const LabeledEdge> edges);

// I(D): one node per graph of d; edge (G,H) labeled {p : In_G(p) = In_H(p)}
// whenever that set is nonempty.
IndistGraph single_round_indist(const Adversary& d);

// Protection of an edge set by a family of guard graphs: each edge needs a
// guard whose root is contained in the edge's label.
struct Protection {
  bool all_protected = true;
  // Per edge, the smallest guard index protecting it, if any.
  std::vector<std::optional<std::size_t>> witness;
};

// Throws NotRooted if a guard is not rooted.
Protection is_protected(std::span<const LabeledEdge> edges,
                        std::span<const CommunicationGraph* const> guards);

// Guards given as indices into d.
Protection is_protected(std::span<const LabeledEdge> edges, const Adversary& d,
                        std::span<const std::size_t> guards);

}  // namespace oma
