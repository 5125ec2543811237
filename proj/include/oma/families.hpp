#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "oma/adversary.hpp"
#include "oma/decision.hpp"
#include "oma/patterns.hpp"

namespace oma {

// Bit h of i selects the (h+1)-th smallest member of b.
ProcessSet encode_index(ProcessSet b, std::uint64_t i);

// --- indistinguishability chain ---------------------------------------------

// Root sets R_1..R_{N+1} and encoder set B. Graph G_i (1 <= i <= N) has root
// R_i; R_{N+1} only ever appears as a non-root set.
struct ChainSpec {
  int n = 0;
  std::vector<ProcessSet> roots;
  ProcessSet b;

  int length() const { return static_cast<int>(roots.size()) - 1; }  // N
};

// Empty when the spec is well formed, otherwise one message per broken condition.
std::vector<std::string> chain_spec_violations(const ChainSpec& spec);

// Singleton roots {1},..,{N+1} followed by the smallest admissible B.
ChainSpec smallest_chain_spec(int length);

// Alternating three-way partitions of [1,n/4] and [n/4+1,n/2] into n/12-sets,
// B = [n/2+1,n]. Partitions that would repeat an earlier root set are skipped.
// Requires n % 12 == 0; throws if fewer than max_length+1 sets are available.
ChainSpec gen_paper_chain(int n, int max_length);

// G_i: clique on R_i, R_i -> B u L_i, B[i] -> R_{i+1}, B[i+1] -> R_{i+2}.
// Validates the result and throws Error listing any violated property.
Adversary gen_chain(const ChainSpec& spec);

// Roots are R_i, B[i] nonempty and distinct, and I(D) is exactly the chain
// G_i -- G_{i+1} labeled R_{i+2}.
std::vector<std::string> chain_violations(const ChainSpec& spec, const Adversary& d);

// --- inflated chain -----------------------------------------------------------

// Replaces R_i -> B by R_i -> h -> ... -> last(path) -> B, with h = path[0].
struct InflateSpec {
  ChainSpec base;
  std::vector<Process> path;

  Process entry() const { return path.front(); }
};

std::vector<std::string> inflate_spec_violations(const InflateSpec& spec);

// Base chain spec enlarged by |path| processes placed after B.
InflateSpec smallest_inflate_spec(int length, int path_length);

// Validates and throws Error on failure.
Adversary gen_inflated(const InflateSpec& spec);

// Roots, B[i] goodness, G_i^r ~_p G_{i+1}^r for r <= |P| and p in R_{i+2},
// new edges labeled inside (B u P) \ {h}, and those edges gone from N_2.
std::vector<std::string> inflated_violations(const InflateSpec& spec, const Adversary& d);

// Every round's graph repeated k times; k must equal |P|.
Pattern inflate_pattern(const Pattern& sigma, std::size_t k, const InflateSpec& spec);

struct InflationCheck {
  std::size_t edges_checked = 0;
  std::vector<std::string> violations;
};

// For every edge (s, s') of the base I(D^len): the inflated patterns are
// indistinguishable to every process of l(s, s').
InflationCheck check_inflation(const InflateSpec& spec, const Adversary& base,
                               const Adversary& inflated, std::size_t len,
                               std::uint64_t budget = kDefaultPatternBudget);

// --- partitioned adversary --------------------------------------------------

struct PartitionSpec {
  int m = 0;       // root-set size
  int t = 0;       // number of blocks
  int b_size = 0;  // |B|; 0 picks the smallest admissible size
};

// Concrete sets, 1-based in the vectors' meaning: roots[j-1] = R_j,
// u[i-1] = U_i, u_prime[i-1] = U'_i.
struct PartitionLayout {
  int n = 0;
  int m = 0;
  int t = 0;
  std::vector<ProcessSet> roots;  // R_1..R_{2t+1}
  std::vector<ProcessSet> u;
  std::vector<ProcessSet> u_prime;
  ProcessSet b;
};

struct PartitionedAdversary {
  PartitionLayout layout;
  Adversary d;
  // blocks[i-1] holds the indices of G_{i,1}..G_{i,2i+1}.
  std::vector<std::vector<std::size_t>> blocks;
};

// Number of distinct extra-edge patterns on an m-cycle.
std::uint64_t interconnect_variants(int m);

// Empty when feasible; otherwise the violated feasibility conditions.
std::vector<std::string> partition_spec_violations(const PartitionSpec& spec);

// Validates (layout conditions, roots, partition properties (i)-(iii)) and
// throws Error on failure.
PartitionedAdversary gen_partitioned(const PartitionSpec& spec);

std::vector<std::string> partitioned_violations(const PartitionedAdversary& p);

// All patterns of S_1 o ... o S_t lie in one component of I(D^t).
// Throws BudgetExceeded when |D|^t is too large.
bool sigma_connected(const PartitionedAdversary& p, std::uint64_t budget = kDefaultPatternBudget);

// --- catalog -------------------------------------------------------------------

struct CatalogParams {
  int n = 0;
  int clique = 1;            // source-broadcast
  int f = 1;                 // lossy-link
  int count = 3;             // random
  std::uint64_t seed = 0;    // random
  std::size_t max_graphs = 4096;
};

// Families: rooted-trees, source-broadcast, lossy-link, random.
// Graphs are named Ga, Gb, ..., Gz, Gaa, ...
Adversary gen_catalog(std::string_view family, const CatalogParams& params);

std::vector<std::string> catalog_families();

// "a".."z", "aa", ... for 0, 1, ...
std::string letter_suffix(std::size_t index);

}  // namespace oma
