#include "oma/indist.hpp"

#include <algorithm>
#include <numeric>

#include "oma/error.hpp"
#include "oma/kernels.hpp"

namespace oma {

IndistGraph::IndistGraph(std::size_t node_count, std::vector<LabeledEdge> edges)
    : node_count_(node_count), edges_(std::move(edges)) {
  for (auto& e : edges_) {
    if (e.u == e.v) throw InvalidArgument("indistinguishability graph: self edge");
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.v >= node_count_) throw InvalidArgument("indistinguishability graph: node out of range");
    if (e.label.empty()) throw InvalidArgument("indistinguishability graph: empty label");
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end(), [](const auto& a, const auto& b) {
    return a.u == b.u && a.v == b.v;
  });
  if (dup != edges_.end()) throw InvalidArgument("indistinguishability graph: duplicate edge");
}

std::optional<ProcessSet> IndistGraph::label(NodeId a, NodeId b) const {
  if (a > b) std::swap(a, b);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), LabeledEdge{a, b, ProcessSet{}},
                             [](const LabeledEdge& x, const LabeledEdge& y) {
                               return std::tie(x.u, x.v) < std::tie(y.u, y.v);
                             });
  if (it != edges_.end() && it->u == a && it->v == b) return it->label;
  return std::nullopt;
}

IndistGraph IndistGraph::filtered(const std::vector<bool>& keep) const {
  IndistGraph out;
  out.node_count_ = node_count_;
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    if (keep[i]) out.edges_.push_back(edges_[i]);
  }
  return out;
}

namespace {

// Union-find with union by smaller-root index so that every root is its
// component's smallest node.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), NodeId{0});
  }
  NodeId find(NodeId x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(NodeId a, NodeId b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) parent_[b] = a;
    else parent_[a] = b;
  }

 private:
  std::vector<NodeId> parent_;
};

}  // namespace

Components connected_components(std::size_t node_count, std::span<const LabeledEdge> edges) {
  DisjointSets sets(node_count);
  for (const auto& e : edges) sets.unite(e.u, e.v);

  Components out;
  out.component_of.assign(node_count, 0);
  std::vector<std::uint32_t> id_of_root(node_count, UINT32_MAX);
  for (NodeId v = 0; v < node_count; ++v) {
    const NodeId root = sets.find(v);
    if (id_of_root[root] == UINT32_MAX) {
      id_of_root[root] = static_cast<std::uint32_t>(out.members.size());
      out.members.emplace_back();
    }
    out.component_of[v] = id_of_root[root];
    out.members[id_of_root[root]].push_back(v);
  }
  return out;
}

Components connected_components(const IndistGraph& graph) {
  return connected_components(graph.node_count(), graph.edges());
}

IndistGraph single_round_indist(const Adversary& d) {
  std::vector<LabeledEdge> edges;
  for (NodeId i = 0; i < d.size(); ++i) {
    for (NodeId j = i + 1; j < d.size(); ++j) {
      const std::uint64_t label = kernels::equal_mask(d.in_rows(i), d.in_rows(j));
      if (label != 0) edges.push_back({i, j, ProcessSet(label)});
    }
  }
  return IndistGraph(d.size(), std::move(edges));
}

Protection is_protected(std::span<const LabeledEdge> edges,
                        std::span<const CommunicationGraph* const> guards) {
  std::vector<std::uint64_t> roots;
  roots.reserve(guards.size());
  for (const auto* g : guards) {
    if (!g->rooted()) throw NotRooted("guard '" + g->name() + "' is not rooted");
    roots.push_back(g->root()->bits());
  }
  Protection out;
  out.witness.reserve(edges.size());
  for (const auto& e : edges) {
    const std::size_t hit = kernels::first_subset(roots, e.label.bits());
    if (hit == kernels::npos) {
      out.all_protected = false;
      out.witness.emplace_back();
    } else {
      out.witness.emplace_back(hit);
    }
  }
  return out;
}

Protection is_protected(std::span<const LabeledEdge> edges, const Adversary& d,
                        std::span<const std::size_t> guards) {
  std::vector<const CommunicationGraph*> ptrs;
  ptrs.reserve(guards.size());
  for (std::size_t g : guards) ptrs.push_back(&d[g]);
  return is_protected(edges, ptrs);
}

}  // namespace oma
