#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "oma/adversary.hpp"
#include "oma/decision.hpp"
#include "oma/error.hpp"
#include "oma/patterns.hpp"

namespace oma {

using Value = long long;

// Raised when some component of I(D^t) has no common broadcaster, so no
// decision rule of horizon t exists. Carries the offending component.
class NonBroadcastableComponent : public Error {
 public:
  NonBroadcastableComponent(std::size_t horizon, std::vector<Pattern> component);

  std::size_t horizon() const noexcept { return horizon_; }
  const std::vector<Pattern>& component() const noexcept { return component_; }

 private:
  std::size_t horizon_;
  std::vector<Pattern> component_;
};

// Decision rule of horizon t: every process maps its time-t view to the
// component of I(D^t) containing it and adopts the input of that component's
// chosen broadcaster (the smallest common one).
class ConsensusRule {
 public:
  const Adversary& adversary() const { return d_; }
  std::size_t horizon() const { return horizon_; }
  std::size_t component_count() const { return broadcaster_.size(); }

  // Component of a length-t pattern, by its lexicographic index.
  std::uint32_t component_of(std::uint64_t pattern_index) const { return component_of_[pattern_index]; }
  Process broadcaster(std::uint32_t component) const { return broadcaster_[component]; }

  // Component a process settles on from its time-t view, if that view occurs.
  std::optional<std::uint32_t> component_of_view(ViewId view) const;

  // Views are interned on demand, so evaluation mutates the store.
  ViewStore& store() const { return store_; }

 private:
  friend ConsensusRule build_rule(const Adversary&, std::size_t, std::uint64_t);
  ConsensusRule(const Adversary& d, std::size_t horizon) : d_(d), horizon_(horizon), store_(d.n()) {}

  Adversary d_;
  std::size_t horizon_;
  std::vector<std::uint32_t> component_of_;
  std::vector<Process> broadcaster_;
  std::vector<std::uint32_t> view_component_;  // ViewId -> component, UINT32_MAX if unseen
  mutable ViewStore store_;
};

// Throws NonBroadcastableComponent (first failing component in node order)
// or BudgetExceeded.
ConsensusRule build_rule(const Adversary& d, std::size_t t,
                         std::uint64_t budget = kDefaultPatternBudget);

struct RunReport {
  Pattern pattern;
  // Per process: whose input it adopted (nullopt = no decision), and the value.
  std::vector<std::optional<Process>> adopted;
  std::vector<std::optional<Value>> decided;
  bool agreement = true;
  bool validity = true;     // adopted owner is a broadcaster of the pattern
  bool termination = true;
};

// Throws InvalidArgument on a length or input-size mismatch.
RunReport run(const ConsensusRule& rule, const Pattern& sigma, const std::vector<Value>& inputs);

struct VerifyReport {
  std::size_t horizon = 0;
  std::size_t runs = 0;
  std::size_t agreement_violations = 0;
  std::size_t validity_violations = 0;
  std::size_t termination_violations = 0;
  // Pairs adjacent in I(D^t), recomputed from raw views, that decided differently.
  std::size_t indist_pair_violations = 0;

  std::size_t total() const {
    return agreement_violations + validity_violations + termination_violations +
           indist_pair_violations;
  }
  VerifyReport& operator+=(const VerifyReport& other);
};

VerifyReport verify_all_runs(const ConsensusRule& rule, const std::vector<Value>& inputs,
                             std::uint64_t budget = kDefaultPatternBudget);
// x_p = p, then all inputs equal; the reports are summed.
VerifyReport verify_canonical(const ConsensusRule& rule,
                              std::uint64_t budget = kDefaultPatternBudget);

struct OracleResult {
  bool found = false;
  // Smallest broadcastable horizon when found, otherwise the horizon searched up to.
  std::size_t horizon = 0;
};

// Smallest r <= r_max with every component of I(D^r) sharing a broadcaster.
// Throws BudgetExceeded for the first r whose |D|^r exceeds the budget.
OracleResult oracle_min_horizon(const Adversary& d, std::size_t r_max,
                                std::uint64_t budget = kDefaultPatternBudget);

struct ImpossWitness {
  std::size_t level = 0;
  // Root-incompatible graphs of one component of N_level; two when a pair
  // with disjoint roots exists, otherwise a minimal incompatible set.
  std::vector<std::size_t> graphs;
  // paths[k] runs through I(D^level) from graphs[0]^level to graphs[k+1]^level.
  std::vector<std::vector<Pattern>> paths;
  // Every step re-checked with freshly computed views.
  bool verified = false;
};

// nullopt when every component of N_i is root-compatible. The trace must
// reach level i (use no_early_exit). Requires i >= 1.
std::optional<ImpossWitness> imposs_witness(const Adversary& d, std::size_t i,
                                            const RefinementTrace& trace,
                                            std::uint64_t budget = kDefaultPatternBudget);

}  // namespace oma
