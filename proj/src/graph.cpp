#include "oma/graph.hpp"

#include <algorithm>
#include <sstream>

#include "oma/error.hpp"

namespace oma {

BudgetExceeded::BudgetExceeded(std::uint64_t round, long double size, std::uint64_t budget)
    : Error([&] {
        std::ostringstream os;
        os.precision(0);
        os << std::fixed << "pattern budget exceeded: |D|^" << round << " = " << size
           << " > " << budget;
        return os.str();
      }()),
      round_(round),
      size_(size),
      budget_(budget) {}

std::string ProcessSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (Process p : members()) {
    if (!first) out += ',';
    out += 'p';
    out += std::to_string(p + 1);
    first = false;
  }
  out += '}';
  return out;
}

CommunicationGraph::CommunicationGraph(int n, std::span<const Edge> edges, std::string name)
    : n_(n), name_(std::move(name)), in_(n), out_(n), reach_(n) {
  if (n < 2 || n > kMaxProcesses) {
    throw InvalidArgument("process count must be in [2, " + std::to_string(kMaxProcesses) +
                          "], got " + std::to_string(n));
  }
  for (Process p = 0; p < n; ++p) {
    in_[p].insert(p);
    out_[p].insert(p);
  }
  for (auto [from, to] : edges) {
    if (from < 0 || from >= n || to < 0 || to >= n) {
      throw InvalidArgument("edge (" + std::to_string(from + 1) + "," + std::to_string(to + 1) +
                            ") out of range for n=" + std::to_string(n));
    }
    in_[to].insert(from);
    out_[from].insert(to);
  }

  // Transitive closure by repeated frontier expansion; n <= 64 keeps this tiny.
  for (Process p = 0; p < n; ++p) {
    ProcessSet seen = ProcessSet::single(p);
    ProcessSet frontier = seen;
    while (!frontier.empty()) {
      ProcessSet next;
      for (Process q : frontier.members()) next |= out_[q];
      frontier = next - seen;
      seen |= next;
    }
    reach_[p] = seen;
  }

  // Source nodes of the condensation: SCCs without in-edges from outside.
  std::optional<ProcessSet> source;
  int sources = 0;
  for (ProcessSet scc : strongly_connected_components()) {
    bool closed = true;
    for (Process q : scc.members()) {
      if (!in_[q].is_subset_of(scc)) {
        closed = false;
        break;
      }
    }
    if (closed) {
      ++sources;
      source = scc;
    }
  }
  if (sources == 1) root_ = source;
}

std::vector<ProcessSet> CommunicationGraph::strongly_connected_components() const {
  std::vector<ProcessSet> out;
  ProcessSet assigned;
  for (Process p = 0; p < n_; ++p) {
    if (assigned.contains(p)) continue;
    ProcessSet scc;
    for (Process q : reach_[p].members()) {
      if (reach_[q].contains(p)) scc.insert(q);
    }
    assigned |= scc;
    out.push_back(scc);
  }
  return out;
}

std::vector<Edge> CommunicationGraph::edges() const {
  std::vector<Edge> out;
  for (Process from = 0; from < n_; ++from) {
    for (Process to : out_[from].members()) {
      if (to != from) out.emplace_back(from, to);
    }
  }
  return out;
}

std::optional<ProcessSet> root_component(const CommunicationGraph& g) { return g.root(); }

bool reaches_all(const CommunicationGraph& g, Process p) {
  return g.reachable_from(p) == ProcessSet::all(g.n());
}

namespace {

template <typename Get>
bool root_compatible_impl(std::size_t count, Get get) {
  if (count == 0) return true;
  ProcessSet common = ProcessSet(~std::uint64_t{0});
  for (std::size_t i = 0; i < count; ++i) {
    const CommunicationGraph& g = get(i);
    if (!g.rooted()) throw NotRooted("graph '" + g.name() + "' is not rooted");
    common &= *g.root();
  }
  return !common.empty();
}

}  // namespace

bool is_root_compatible(std::span<const CommunicationGraph> graphs) {
  return root_compatible_impl(graphs.size(),
                              [&](std::size_t i) -> const CommunicationGraph& { return graphs[i]; });
}

bool is_root_compatible(std::span<const CommunicationGraph* const> graphs) {
  return root_compatible_impl(graphs.size(),
                              [&](std::size_t i) -> const CommunicationGraph& { return *graphs[i]; });
}

}  // namespace oma
