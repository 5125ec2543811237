#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oma/adversary.hpp"
#include "oma/indist.hpp"

namespace oma {

enum class Verdict { solvable, impossible, not_rooted_input };

std::string_view verdict_name(Verdict v);  // SOLVABLE / IMPOSSIBLE / IMPOSSIBLE-NOT-ROOTED

struct DecideOptions {
  // Ignore the root-compatibility exit and refine until the edge set is stable.
  // The components of the stable level are the beta classes.
  bool no_early_exit = false;
};

// An edge dropped while refining N_{i-1} into N_i.
struct RemovedEdge {
  LabeledEdge edge;
  // Smallest graph of D whose root fits inside the label; it exists only
  // outside the edge's component (otherwise the edge would have been kept).
  std::optional<std::size_t> outside_guard;
};

struct RefinementTrace {
  // levels[k] is N_{k+1}. Empty for not_rooted_input.
  std::vector<IndistGraph> levels;
  // removed[k] holds the edges dropped to obtain levels[k]; removed[0] is empty.
  std::vector<std::vector<RemovedEdge>> removed;
  // Final loop counter, with N_1 counted as iteration 1.
  int td = 0;
  // Levels at which at least one edge was dropped.
  int removal_iterations = 0;
  Verdict verdict = Verdict::impossible;
  // True when the loop stopped because N_td == N_{td-1}; later levels then
  // repeat the last one.
  bool fixpoint = false;
  bool no_early_exit = false;
  Components components_final;
  std::optional<std::size_t> unrooted_graph;

  std::size_t component_count() const { return components_final.count(); }

  // N_i for i >= 1. For i > td this is only defined on fixpoint traces.
  const IndistGraph& level(int i) const;
};

// Iterative refinement of I(D). Keeps an edge of N_{i-1} iff its component in
// N_{i-1} contains a graph whose root is a subset of the edge label.
RefinementTrace decide(const Adversary& d, DecideOptions options = {});

// c * (n-1) * (td+1). Throws InvalidArgument unless the verdict is solvable.
std::uint64_t consensus_round_bound(const RefinementTrace& trace, int n);

// Checks the structural invariants of a trace against its adversary and
// returns one message per violation (empty when all hold):
// monotone edge sets with unchanged labels, a same-component guard for every
// surviving edge, td <= 2^n, and same-label edges of a component leaving together.
std::vector<std::string> trace_violations(const Adversary& d, const RefinementTrace& trace);

// Protected-chain lemma on node sets S_1..S_i of I(D): if every S_j is
// connected in I(D), the edges inside S_1..S_j are protected by graphs of
// S_1..S_{j+1}, and S_j meets the component of S_{j+1} in N_{i-j}, then every
// edge inside S_1 survives into N_i. Returns whether that conclusion holds.
// Throws InvalidArgument naming the first premise that fails.
bool check_protected_chain(const Adversary& d, std::span<const std::vector<NodeId>> subgraphs,
                           const RefinementTrace& trace);

}  // namespace oma
