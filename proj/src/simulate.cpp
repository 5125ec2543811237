#include "oma/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace oma {

NonBroadcastableComponent::NonBroadcastableComponent(std::size_t horizon,
                                                     std::vector<Pattern> component)
    : Error([&] {
        std::ostringstream os;
        os << "a component of I(D^" << horizon << ") with " << component.size()
           << " patterns has no common broadcaster";
        return os.str();
      }()),
      horizon_(horizon),
      component_(std::move(component)) {}

std::optional<std::uint32_t> ConsensusRule::component_of_view(ViewId view) const {
  if (view >= view_component_.size() || view_component_[view] == UINT32_MAX) return std::nullopt;
  return view_component_[view];
}

ConsensusRule build_rule(const Adversary& d, std::size_t t, std::uint64_t budget) {
  ConsensusRule rule(d, t);
  const PatternSpace space = enumerate_patterns(d, t, rule.store_, budget);
  const Components comps = pattern_components(space);

  for (std::uint32_t c = 0; c < comps.count(); ++c) {
    ProcessSet common = ProcessSet::all(d.n());
    for (NodeId i : comps.members[c]) common &= space.broadcasters(i);
    if (common.empty()) {
      std::vector<Pattern> witness;
      witness.reserve(comps.members[c].size());
      for (NodeId i : comps.members[c]) witness.push_back(space.pattern(i));
      throw NonBroadcastableComponent(t, std::move(witness));
    }
    rule.broadcaster_.push_back(common.min());
  }

  rule.component_of_ = comps.component_of;
  rule.view_component_.assign(rule.store_.size(), UINT32_MAX);
  for (NodeId i = 0; i < space.size(); ++i) {
    for (ViewId v : space.final_views(i)) {
      auto& slot = rule.view_component_[v];
      if (slot != UINT32_MAX && slot != comps.component_of[i]) {
        throw Error("view shared across components of I(D^t)");
      }
      slot = comps.component_of[i];
    }
  }
  return rule;
}

RunReport run(const ConsensusRule& rule, const Pattern& sigma, const std::vector<Value>& inputs) {
  const Adversary& d = rule.adversary();
  if (sigma.length() != rule.horizon()) {
    throw InvalidArgument("run: pattern length " + std::to_string(sigma.length()) +
                          " differs from the rule horizon " + std::to_string(rule.horizon()));
  }
  if (inputs.size() != static_cast<std::size_t>(d.n())) {
    throw InvalidArgument("run: expected " + std::to_string(d.n()) + " inputs");
  }

  RunReport report;
  report.pattern = sigma;
  const ViewTable table = views(d, sigma, rule.store());
  const ProcessSet bcast = broadcasters(d, sigma);

  for (Process p = 0; p < d.n(); ++p) {
    const auto comp = rule.component_of_view(table.at(p, sigma.length()));
    if (!comp) {
      report.adopted.emplace_back();
      report.decided.emplace_back();
      report.termination = false;
      continue;
    }
    const Process b = rule.broadcaster(*comp);
    report.adopted.emplace_back(b);
    report.decided.emplace_back(inputs[b]);
    if (!bcast.contains(b)) report.validity = false;
  }

  std::optional<Value> first;
  for (const auto& v : report.decided) {
    if (!v) continue;
    if (!first) first = v;
    else if (*v != *first) report.agreement = false;
  }
  return report;
}

VerifyReport& VerifyReport::operator+=(const VerifyReport& other) {
  runs += other.runs;
  agreement_violations += other.agreement_violations;
  validity_violations += other.validity_violations;
  termination_violations += other.termination_violations;
  indist_pair_violations += other.indist_pair_violations;
  return *this;
}

VerifyReport verify_all_runs(const ConsensusRule& rule, const std::vector<Value>& inputs,
                             std::uint64_t budget) {
  const Adversary& d = rule.adversary();
  const std::size_t t = rule.horizon();
  const long double total = std::pow(static_cast<long double>(d.size()), static_cast<long double>(t));
  if (total > static_cast<long double>(budget)) throw BudgetExceeded(t, total, budget);
  const auto count = static_cast<std::uint64_t>(total);

  VerifyReport report;
  report.horizon = t;
  std::vector<std::optional<Value>> decision(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const RunReport r = run(rule, pattern_at(i, d.size(), t), inputs);
    ++report.runs;
    if (!r.agreement) ++report.agreement_violations;
    if (!r.validity) ++report.validity_violations;
    if (!r.termination) ++report.termination_violations;
    if (r.termination && r.agreement) decision[i] = r.decided.front();
  }

  // Adjacency from a separate store, so it does not lean on the rule's bookkeeping.
  const IndistGraph graph = pattern_indist_graph(d, t, budget);
  for (const auto& e : graph.edges()) {
    if (!decision[e.u] || !decision[e.v] || *decision[e.u] != *decision[e.v]) {
      ++report.indist_pair_violations;
    }
  }
  return report;
}

VerifyReport verify_canonical(const ConsensusRule& rule, std::uint64_t budget) {
  const int n = rule.adversary().n();
  std::vector<Value> distinct(n);
  for (int p = 0; p < n; ++p) distinct[p] = p;
  VerifyReport report = verify_all_runs(rule, distinct, budget);
  report += verify_all_runs(rule, std::vector<Value>(n, 1), budget);
  return report;
}

OracleResult oracle_min_horizon(const Adversary& d, std::size_t r_max, std::uint64_t budget) {
  ViewStore store(d.n());
  for (std::size_t r = 0; r <= r_max; ++r) {
    const PatternSpace space = enumerate_patterns(d, r, store, budget);
    const Components comps = pattern_components(space);
    bool all = true;
    for (const auto& members : comps.members) {
      ProcessSet common = ProcessSet::all(d.n());
      for (NodeId i : members) common &= space.broadcasters(i);
      if (common.empty()) {
        all = false;
        break;
      }
    }
    if (all) return {true, r};
  }
  return {false, r_max};
}

namespace {

std::vector<std::size_t> incompatible_subset(const Adversary& d, const std::vector<NodeId>& members) {
  for (std::size_t a = 0; a < members.size(); ++a) {
    for (std::size_t b = a + 1; b < members.size(); ++b) {
      if ((d.root_masks()[members[a]] & d.root_masks()[members[b]]) == 0) {
        return {members[a], members[b]};
      }
    }
  }
  // Drop members greedily while the intersection stays empty.
  std::vector<std::size_t> set(members.begin(), members.end());
  for (std::size_t k = 0; k < set.size();) {
    std::uint64_t common = ~std::uint64_t{0};
    for (std::size_t j = 0; j < set.size(); ++j) {
      if (j != k) common &= d.root_masks()[set[j]];
    }
    if (common == 0) set.erase(set.begin() + static_cast<std::ptrdiff_t>(k));
    else ++k;
  }
  return set;
}

std::vector<NodeId> bfs_path(const IndistGraph& g, NodeId from, NodeId to) {
  std::vector<std::vector<NodeId>> adj(g.node_count());
  for (const auto& e : g.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<NodeId> parent(g.node_count(), UINT32_MAX);
  std::deque<NodeId> queue{from};
  parent[from] = from;
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    if (u == to) break;
    for (NodeId v : adj[u]) {
      if (parent[v] == UINT32_MAX) {
        parent[v] = u;
        queue.push_back(v);
      }
    }
  }
  if (parent[to] == UINT32_MAX) return {};
  std::vector<NodeId> path{to};
  while (path.back() != from) path.push_back(parent[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

std::optional<ImpossWitness> imposs_witness(const Adversary& d, std::size_t i,
                                            const RefinementTrace& trace, std::uint64_t budget) {
  if (i < 1) throw InvalidArgument("imposs_witness: level must be >= 1");
  if (trace.verdict == Verdict::not_rooted_input) {
    throw InvalidArgument("imposs_witness: adversary is not rooted");
  }
  const Components comps = connected_components(trace.level(static_cast<int>(i)));

  const std::vector<NodeId>* bad = nullptr;
  for (const auto& members : comps.members) {
    std::uint64_t common = ~std::uint64_t{0};
    for (NodeId g : members) common &= d.root_masks()[g];
    if (common == 0) {
      bad = &members;
      break;
    }
  }
  if (bad == nullptr) return std::nullopt;

  ImpossWitness w;
  w.level = i;
  w.graphs = incompatible_subset(d, *bad);

  const IndistGraph graph = pattern_indist_graph(d, i, budget);
  auto node = [&](std::size_t g) {
    return static_cast<NodeId>(pattern_index(Pattern::repeat(static_cast<std::uint32_t>(g), i), d.size()));
  };
  w.verified = true;
  ViewStore fresh(d.n());
  for (std::size_t k = 1; k < w.graphs.size(); ++k) {
    const auto path = bfs_path(graph, node(w.graphs[0]), node(w.graphs[k]));
    std::vector<Pattern> patterns;
    for (NodeId v : path) patterns.push_back(pattern_at(v, d.size(), i));
    if (patterns.empty()) w.verified = false;
    for (std::size_t s = 1; s < patterns.size(); ++s) {
      if (indistinguishability_label(d, patterns[s - 1], patterns[s], fresh).empty()) {
        w.verified = false;
      }
    }
    w.paths.push_back(std::move(patterns));
  }
  return w;
}

}  // namespace oma
