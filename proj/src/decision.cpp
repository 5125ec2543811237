#include "oma/decision.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "oma/error.hpp"
#include "oma/kernels.hpp"

namespace oma {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::solvable:
      return "SOLVABLE";
    case Verdict::impossible:
      return "IMPOSSIBLE";
    case Verdict::not_rooted_input:
      return "IMPOSSIBLE-NOT-ROOTED";
  }
  return "?";
}

const IndistGraph& RefinementTrace::level(int i) const {
  if (i < 1 || levels.empty()) throw InvalidArgument("refinement level must be >= 1");
  if (static_cast<std::size_t>(i) <= levels.size()) return levels[static_cast<std::size_t>(i) - 1];
  if (!fixpoint) {
    throw InvalidArgument("level " + std::to_string(i) +
                          " lies beyond an early exit; rerun with no_early_exit");
  }
  return levels.back();
}

namespace {

// Root masks of each component's members, laid out contiguously per component.
struct ComponentRoots {
  std::vector<std::uint64_t> masks;
  std::vector<std::size_t> offset;  // component k occupies [offset[k], offset[k+1])

  ComponentRoots(const Adversary& d, const Components& comps) {
    offset.reserve(comps.count() + 1);
    for (const auto& members : comps.members) {
      offset.push_back(masks.size());
      for (NodeId g : members) masks.push_back(d.root_masks()[g]);
    }
    offset.push_back(masks.size());
  }

  std::span<const std::uint64_t> of(std::uint32_t component) const {
    return {masks.data() + offset[component], offset[component + 1] - offset[component]};
  }
};

bool all_root_compatible(const Adversary& d, const Components& comps) {
  for (const auto& members : comps.members) {
    std::uint64_t common = ~std::uint64_t{0};
    for (NodeId g : members) common &= d.root_masks()[g];
    if (common == 0) return false;
  }
  return true;
}

}  // namespace

RefinementTrace decide(const Adversary& d, DecideOptions options) {
  RefinementTrace trace;
  trace.no_early_exit = options.no_early_exit;
  if (auto bad = d.first_unrooted()) {
    trace.verdict = Verdict::not_rooted_input;
    trace.unrooted_graph = bad;
    return trace;
  }

  trace.levels.push_back(single_round_indist(d));
  trace.removed.emplace_back();
  trace.td = 1;
  Components comps = connected_components(trace.levels.back());
  bool compatible = all_root_compatible(d, comps);

  while (options.no_early_exit || !compatible) {
    const IndistGraph& prev = trace.levels.back();
    const ComponentRoots roots(d, comps);

    std::vector<bool> keep(prev.edge_count());
    std::vector<RemovedEdge> removed;
    const auto edges = prev.edges();
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const auto& e = edges[k];
      const auto guard = kernels::first_subset(roots.of(comps.component_of[e.u]), e.label.bits());
      keep[k] = guard != kernels::npos;
      if (!keep[k]) {
        const auto outside = kernels::first_subset(d.root_masks(), e.label.bits());
        removed.push_back({e, outside == kernels::npos ? std::nullopt
                                                       : std::optional<std::size_t>(outside)});
      }
    }

    ++trace.td;
    if (removed.empty()) {
      // N_i == N_{i-1}: record the repeated level and stop.
      trace.levels.push_back(prev);
      trace.removed.emplace_back();
      trace.fixpoint = true;
      break;
    }
    ++trace.removal_iterations;
    IndistGraph next = prev.filtered(keep);
    trace.levels.push_back(std::move(next));
    trace.removed.push_back(std::move(removed));
    comps = connected_components(trace.levels.back());
    compatible = all_root_compatible(d, comps);
  }

  trace.components_final = std::move(comps);
  trace.verdict = all_root_compatible(d, trace.components_final) ? Verdict::solvable
                                                                  : Verdict::impossible;
  return trace;
}

std::uint64_t consensus_round_bound(const RefinementTrace& trace, int n) {
  if (trace.verdict != Verdict::solvable) {
    throw InvalidArgument("round bound requires a solvable verdict");
  }
  return static_cast<std::uint64_t>(trace.component_count()) *
         static_cast<std::uint64_t>(n - 1) * static_cast<std::uint64_t>(trace.td + 1);
}

std::vector<std::string> trace_violations(const Adversary& d, const RefinementTrace& trace) {
  std::vector<std::string> out;
  if (trace.verdict == Verdict::not_rooted_input) return out;

  if (trace.td < 1 || static_cast<std::size_t>(trace.td) != trace.levels.size()) {
    out.push_back("td does not match the number of levels");
  }
  if (d.n() < 63 && static_cast<std::uint64_t>(trace.td) > (std::uint64_t{1} << d.n())) {
    out.push_back("td exceeds 2^n");
  }
  if (trace.levels.empty() || !(trace.levels.front() == single_round_indist(d))) {
    out.push_back("N_1 differs from I(D)");
    return out;
  }

  for (std::size_t k = 1; k < trace.levels.size(); ++k) {
    const IndistGraph& prev = trace.levels[k - 1];
    const IndistGraph& cur = trace.levels[k];
    const std::string at = "level " + std::to_string(k + 1) + ": ";
    const Components comps = connected_components(prev);

    // Keep/drop decision per (component, label) of the previous level.
    std::map<std::pair<std::uint32_t, std::uint64_t>, std::set<bool>> fate;
    for (const auto& e : prev.edges()) {
      fate[{comps.component_of[e.u], e.label.bits()}].insert(cur.has_edge(e.u, e.v));
    }
    for (const auto& [key, kept] : fate) {
      if (kept.size() > 1) {
        out.push_back(at + "edges with label " + ProcessSet(key.second).to_string() +
                      " in one component were split");
      }
    }

    for (const auto& e : cur.edges()) {
      const auto old = prev.label(e.u, e.v);
      if (!old) {
        out.push_back(at + "edge not present in the previous level");
        continue;
      }
      if (*old != e.label) out.push_back(at + "edge label changed");
      bool guarded = false;
      for (NodeId g : comps.members[comps.component_of[e.u]]) {
        if (d[g].root()->is_subset_of(e.label)) {
          guarded = true;
          break;
        }
      }
      if (!guarded) out.push_back(at + "surviving edge has no guard in its previous component");
    }
  }
  return out;
}

namespace {

std::vector<LabeledEdge> induced_edges(const IndistGraph& g, const std::vector<NodeId>& nodes) {
  std::set<NodeId> in(nodes.begin(), nodes.end());
  std::vector<LabeledEdge> out;
  for (const auto& e : g.edges()) {
    if (in.count(e.u) && in.count(e.v)) out.push_back(e);
  }
  return out;
}

bool induces_connected(const IndistGraph& g, const std::vector<NodeId>& nodes) {
  if (nodes.empty()) return false;
  std::vector<NodeId> sorted(nodes);
  std::sort(sorted.begin(), sorted.end());
  const auto edges = induced_edges(g, sorted);
  // Relabel to 0..k-1 for the component routine.
  std::vector<LabeledEdge> local;
  for (const auto& e : edges) {
    const auto u = std::lower_bound(sorted.begin(), sorted.end(), e.u) - sorted.begin();
    const auto v = std::lower_bound(sorted.begin(), sorted.end(), e.v) - sorted.begin();
    local.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), e.label});
  }
  return connected_components(sorted.size(), local).count() == 1;
}

}  // namespace

bool check_protected_chain(const Adversary& d, std::span<const std::vector<NodeId>> subgraphs,
                           const RefinementTrace& trace) {
  if (trace.verdict == Verdict::not_rooted_input) {
    throw InvalidArgument("protected chain: adversary is not rooted");
  }
  const int i = static_cast<int>(subgraphs.size());
  if (i < 1) throw InvalidArgument("protected chain: need at least one subgraph");
  const IndistGraph& base = trace.level(1);

  for (int j = 0; j < i; ++j) {
    for (NodeId v : subgraphs[j]) {
      if (v >= d.size()) throw InvalidArgument("protected chain: node out of range");
    }
    if (!induces_connected(base, subgraphs[j])) {
      throw InvalidArgument("protected chain: S_" + std::to_string(j + 1) +
                            " is not connected in I(D)");
    }
  }

  for (int j = 1; j < i; ++j) {
    // Edges inside S_1..S_j must be guarded by graphs of S_1..S_{j+1}.
    std::vector<LabeledEdge> edges;
    std::vector<std::size_t> guards;
    for (int k = 0; k < j; ++k) {
      const auto inner = induced_edges(base, subgraphs[k]);
      edges.insert(edges.end(), inner.begin(), inner.end());
    }
    for (int k = 0; k <= j; ++k) guards.insert(guards.end(), subgraphs[k].begin(), subgraphs[k].end());
    if (!is_protected(edges, d, guards).all_protected) {
      throw InvalidArgument("protected chain: edges of S_1..S_" + std::to_string(j) +
                            " are not protected by S_1..S_" + std::to_string(j + 1));
    }

    const Components comps = connected_components(trace.level(i - j));
    std::set<std::uint32_t> left;
    for (NodeId v : subgraphs[j - 1]) left.insert(comps.component_of[v]);
    const bool linked = std::any_of(subgraphs[j].begin(), subgraphs[j].end(),
                                    [&](NodeId v) { return left.count(comps.component_of[v]) > 0; });
    if (!linked) {
      throw InvalidArgument("protected chain: S_" + std::to_string(j) + " and S_" +
                            std::to_string(j + 1) + " are not connected in N_" +
                            std::to_string(i - j));
    }
  }

  const IndistGraph& target = trace.level(i);
  for (const auto& e : induced_edges(base, subgraphs[0])) {
    if (!target.has_edge(e.u, e.v)) return false;
  }
  return true;
}

}  // namespace oma
