#include "oma/adversary.hpp"

#include <set>

#include "oma/error.hpp"

namespace oma {

namespace {

std::vector<CommunicationGraph> with_default_names(std::vector<CommunicationGraph> graphs) {
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    if (graphs[i].name().empty()) {
      const auto edges = graphs[i].edges();
      graphs[i] = CommunicationGraph(graphs[i].n(), edges, "G" + std::to_string(i + 1));
    }
  }
  return graphs;
}

}  // namespace

Adversary::Adversary(std::vector<CommunicationGraph> graphs)
    : n_(0), graphs_(with_default_names(std::move(graphs))) {
  if (graphs_.empty()) throw InvalidArgument("adversary must contain at least one graph");
  n_ = graphs_.front().n();

  std::set<std::string> names;
  for (std::size_t i = 0; i < graphs_.size(); ++i) {
    const auto& g = graphs_[i];
    if (g.n() != n_) {
      throw InvalidArgument("graph '" + g.name() + "' has n=" + std::to_string(g.n()) +
                            ", expected " + std::to_string(n_));
    }
    if (!names.insert(g.name()).second) {
      throw InvalidArgument("duplicate graph name '" + g.name() + "'");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (graphs_[j].same_adjacency(g)) {
        throw InvalidArgument("graphs '" + graphs_[j].name() + "' and '" + g.name() +
                              "' are identical");
      }
    }
  }

  root_masks_.reserve(graphs_.size());
  in_rows_.reserve(graphs_.size() * static_cast<std::size_t>(n_));
  for (const auto& g : graphs_) {
    root_masks_.push_back(g.rooted() ? g.root()->bits() : 0);
    for (ProcessSet in : g.in_neighborhoods()) in_rows_.push_back(in.bits());
  }
}

bool Adversary::all_rooted() const { return !first_unrooted().has_value(); }

std::optional<std::size_t> Adversary::first_unrooted() const {
  for (std::size_t i = 0; i < graphs_.size(); ++i) {
    if (!graphs_[i].rooted()) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Adversary::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < graphs_.size(); ++i) {
    if (graphs_[i].name() == name) return i;
  }
  return std::nullopt;
}

bool Adversary::operator==(const Adversary& other) const {
  if (n_ != other.n_ || graphs_.size() != other.graphs_.size()) return false;
  for (std::size_t i = 0; i < graphs_.size(); ++i) {
    if (graphs_[i].name() != other.graphs_[i].name() ||
        !graphs_[i].same_adjacency(other.graphs_[i])) {
      return false;
    }
  }
  return true;
}

}  // namespace oma
