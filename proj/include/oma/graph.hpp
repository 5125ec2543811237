#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "oma/process_set.hpp"

namespace oma {

using Edge = std::pair<Process, Process>;  // (from, to), 0-based

// One round's directed communication graph on n processes.
//
// Self-loops are always present: they are inserted at construction whether or
// not the caller lists them. Instances are immutable; the root component is
// computed once at construction.
class CommunicationGraph {
 public:
  CommunicationGraph(int n, std::span<const Edge> edges, std::string name = {});

  int n() const { return n_; }
  const std::string& name() const { return name_; }

  ProcessSet in(Process p) const { return in_[p]; }
  ProcessSet out(Process p) const { return out_[p]; }
  std::span<const ProcessSet> in_neighborhoods() const { return in_; }
  std::span<const ProcessSet> out_neighborhoods() const { return out_; }

  // Processes reachable from p (including p).
  ProcessSet reachable_from(Process p) const { return reach_[p]; }

  // Members of the unique root component, or nullopt if the graph has zero or
  // several source components in its condensation.
  const std::optional<ProcessSet>& root() const { return root_; }
  bool rooted() const { return root_.has_value(); }

  // Strongly connected components, each listed once, ordered by smallest member.
  std::vector<ProcessSet> strongly_connected_components() const;

  // Non-loop edges, sorted.
  std::vector<Edge> edges() const;

  // Same n and identical in-neighborhoods (names are ignored).
  bool same_adjacency(const CommunicationGraph& other) const {
    return n_ == other.n_ && in_ == other.in_;
  }

 private:
  int n_;
  std::string name_;
  std::vector<ProcessSet> in_;
  std::vector<ProcessSet> out_;
  std::vector<ProcessSet> reach_;
  std::optional<ProcessSet> root_;
};

// Root(G), or nullopt when G is not rooted.
std::optional<ProcessSet> root_component(const CommunicationGraph& g);

// True iff p has a directed path to every process.
bool reaches_all(const CommunicationGraph& g, Process p);

// True iff the root components of all graphs share a process. Throws NotRooted
// if any graph is not rooted. The empty family is vacuously compatible.
bool is_root_compatible(std::span<const CommunicationGraph> graphs);
bool is_root_compatible(std::span<const CommunicationGraph* const> graphs);

}  // namespace oma
