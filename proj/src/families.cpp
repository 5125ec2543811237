#include "oma/families.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "oma/error.hpp"

namespace oma {

namespace {

void connect(std::vector<Edge>& edges, ProcessSet from, ProcessSet to) {
  for (Process p : from.members()) {
    for (Process q : to.members()) {
      if (p != q) edges.emplace_back(p, q);
    }
  }
}

int ceil_log2(std::uint64_t x) { return x <= 1 ? 0 : std::bit_width(x - 1); }

std::string join(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += (out.empty() ? "" : "; ") + l;
  return out;
}

void throw_if(const std::vector<std::string>& violations, std::string_view what) {
  if (!violations.empty()) throw Error(std::string(what) + ": " + join(violations));
}

// k-subsets of pool in lexicographic order; stops early when fn returns true.
bool for_each_subset(const std::vector<Process>& pool, int k,
                     const std::function<bool(const std::vector<Process>&)>& fn) {
  std::vector<Process> chosen;
  std::function<bool(std::size_t)> rec = [&](std::size_t start) -> bool {
    if (static_cast<int>(chosen.size()) == k) return fn(chosen);
    const std::size_t need = static_cast<std::size_t>(k) - chosen.size();
    for (std::size_t i = start; i + need <= pool.size(); ++i) {
      chosen.push_back(pool[i]);
      if (rec(i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  return rec(0);
}

std::vector<Process> range(int lo, int hi) {
  std::vector<Process> out;
  for (int p = lo; p < hi; ++p) out.push_back(p);
  return out;
}

ProcessSet range_set(int lo, int hi) { return ProcessSet::of(range(lo, hi)); }

std::string p1(ProcessSet s) { return s.to_string(); }

}  // namespace

ProcessSet encode_index(ProcessSet b, std::uint64_t i) {
  ProcessSet out;
  const auto members = b.members();
  for (std::size_t h = 0; h < members.size() && h < 64; ++h) {
    if ((i >> h) & 1U) out.insert(members[h]);
  }
  return out;
}

// --- chain --------------------------------------------------------------------

std::vector<std::string> chain_spec_violations(const ChainSpec& spec) {
  std::vector<std::string> out;
  if (spec.n < 2 || spec.n > kMaxProcesses) {
    out.push_back("n must lie in 2.." + std::to_string(kMaxProcesses));
    return out;
  }
  const int big_n = spec.length();
  if (big_n < 1) {
    out.push_back("need at least two root sets");
    return out;
  }
  const ProcessSet all = ProcessSet::all(spec.n);
  for (std::size_t i = 0; i < spec.roots.size(); ++i) {
    const auto& r = spec.roots[i];
    const std::string name = "R_" + std::to_string(i + 1);
    if (r.empty()) out.push_back(name + " is empty");
    if (!r.is_subset_of(all)) out.push_back(name + " exceeds n");
    if (r.size() != spec.roots[0].size()) out.push_back(name + " differs in size from R_1");
    if (r.intersects(spec.b)) out.push_back(name + " meets B");
    for (std::size_t j = 0; j < i; ++j) {
      if (spec.roots[j] == r) out.push_back("R_" + std::to_string(j + 1) + " equals " + name);
    }
    for (std::size_t d = 1; d <= 2 && i + d < spec.roots.size(); ++d) {
      if (r.intersects(spec.roots[i + d])) {
        out.push_back(name + " meets R_" + std::to_string(i + d + 1));
      }
    }
  }
  if (!spec.b.is_subset_of(all)) out.push_back("B exceeds n");
  const int need = ceil_log2(static_cast<std::uint64_t>(big_n) + 3);
  if (static_cast<int>(spec.b.size()) < need) {
    out.push_back("|B| = " + std::to_string(spec.b.size()) + " < " + std::to_string(need));
  }
  return out;
}

ChainSpec smallest_chain_spec(int length) {
  if (length < 1) throw InvalidArgument("chain length must be >= 1");
  const int bits = ceil_log2(static_cast<std::uint64_t>(length) + 3);
  ChainSpec spec;
  spec.n = length + 1 + bits;
  if (spec.n > kMaxProcesses) throw InvalidArgument("chain too long for 64 processes");
  for (int i = 0; i <= length; ++i) spec.roots.push_back(ProcessSet::single(i));
  spec.b = range_set(length + 1, spec.n);
  return spec;
}

namespace {

// Three-way partitions of [lo, lo+3m) into m-sets, canonical order.
std::vector<std::array<ProcessSet, 3>> three_way_partitions(int lo, int m) {
  std::vector<std::array<ProcessSet, 3>> out;
  const auto pool = range(lo, lo + 3 * m);
  const ProcessSet all = ProcessSet::of(pool);
  const std::vector<Process> rest1(pool.begin() + 1, pool.end());
  for_each_subset(rest1, m - 1, [&](const std::vector<Process>& a) {
    ProcessSet first = ProcessSet::of(a);
    first.insert(pool[0]);
    const auto left = (all - first).members();
    const std::vector<Process> rest2(left.begin() + 1, left.end());
    for_each_subset(rest2, m - 1, [&](const std::vector<Process>& b) {
      ProcessSet second = ProcessSet::of(b);
      second.insert(left[0]);
      out.push_back({first, second, all - first - second});
      return false;
    });
    return false;
  });
  return out;
}

}  // namespace

ChainSpec gen_paper_chain(int n, int max_length) {
  if (n <= 0 || n % 12 != 0) throw InvalidArgument("paper chain needs n divisible by 12");
  if (n > kMaxProcesses) throw InvalidArgument("paper chain: n exceeds 64");
  if (max_length < 1) throw InvalidArgument("paper chain: length must be >= 1");
  const int m = n / 12;
  const auto low = three_way_partitions(0, m);
  const auto high = three_way_partitions(n / 4, m);

  ChainSpec spec;
  spec.n = n;
  spec.b = range_set(n / 2, n);
  std::set<std::uint64_t> used;
  std::size_t next_low = 0, next_high = 0;
  const std::size_t want = static_cast<std::size_t>(max_length) + 1;
  bool take_low = true;
  while (spec.roots.size() < want) {
    const auto& parts = take_low ? low : high;
    auto& next = take_low ? next_low : next_high;
    while (next < parts.size() && std::any_of(parts[next].begin(), parts[next].end(), [&](ProcessSet s) {
             return used.count(s.bits()) > 0;
           })) {
      ++next;
    }
    if (next == parts.size()) break;
    for (ProcessSet s : parts[next]) {
      used.insert(s.bits());
      spec.roots.push_back(s);
    }
    ++next;
    take_low = !take_low;
  }
  if (spec.roots.size() < want) {
    throw InvalidArgument("paper chain on n=" + std::to_string(n) + " supports at most " +
                          std::to_string(static_cast<int>(spec.roots.size()) - 1) + " graphs");
  }
  spec.roots.resize(want);
  throw_if(chain_spec_violations(spec), "paper chain");
  return spec;
}

namespace {

ProcessSet root_or_empty(const std::vector<ProcessSet>& roots, std::size_t one_based) {
  return one_based <= roots.size() ? roots[one_based - 1] : ProcessSet{};
}

Adversary build_chain(const ChainSpec& spec, const std::vector<Process>* path) {
  const ProcessSet all = ProcessSet::all(spec.n);
  const ProcessSet p_set = path ? ProcessSet::of(*path) : ProcessSet{};
  std::vector<CommunicationGraph> graphs;
  for (std::size_t i = 1; i <= static_cast<std::size_t>(spec.length()); ++i) {
    const ProcessSet r0 = root_or_empty(spec.roots, i);
    const ProcessSet r1 = root_or_empty(spec.roots, i + 1);
    const ProcessSet r2 = root_or_empty(spec.roots, i + 2);
    const ProcessSet l = all - spec.b - r0 - r1 - r2 - p_set;
    std::vector<Edge> edges;
    connect(edges, r0, r0);
    connect(edges, r0, l);
    if (path) {
      connect(edges, r0, ProcessSet::single(path->front()));
      for (std::size_t k = 1; k < path->size(); ++k) edges.emplace_back((*path)[k - 1], (*path)[k]);
      connect(edges, ProcessSet::single(path->back()), spec.b);
    } else {
      connect(edges, r0, spec.b);
    }
    connect(edges, encode_index(spec.b, i), r1);
    connect(edges, encode_index(spec.b, i + 1), r2);
    graphs.emplace_back(spec.n, edges, "G" + std::to_string(i));
  }
  return Adversary(std::move(graphs));
}

void check_roots(const ChainSpec& spec, const Adversary& d, std::vector<std::string>& out) {
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (d[i].root() != std::optional<ProcessSet>(spec.roots[i])) {
      out.push_back("Root(" + d[i].name() + ") != R_" + std::to_string(i + 1));
    }
  }
}

void check_codes(const ChainSpec& spec, std::vector<std::string>& out) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 1; i <= static_cast<std::uint64_t>(spec.length()) + 1; ++i) {
    const ProcessSet code = encode_index(spec.b, i);
    if (code.empty()) out.push_back("B[" + std::to_string(i) + "] is empty");
    if (!seen.insert(code.bits()).second) out.push_back("B[" + std::to_string(i) + "] repeats");
  }
}

}  // namespace

Adversary gen_chain(const ChainSpec& spec) {
  throw_if(chain_spec_violations(spec), "chain spec");
  Adversary d = build_chain(spec, nullptr);
  throw_if(chain_violations(spec, d), "chain construction");
  return d;
}

std::vector<std::string> chain_violations(const ChainSpec& spec, const Adversary& d) {
  std::vector<std::string> out;
  if (d.size() != static_cast<std::size_t>(spec.length())) {
    out.push_back("graph count differs from N");
    return out;
  }
  check_roots(spec, d, out);
  check_codes(spec, out);
  std::vector<LabeledEdge> expected;
  for (NodeId i = 0; i + 1 < d.size(); ++i) expected.push_back({i, i + 1, spec.roots[i + 2]});
  const IndistGraph actual = single_round_indist(d);
  if (!(actual == IndistGraph(d.size(), expected))) {
    out.push_back("I(D) is not exactly the chain G_i -- G_{i+1} labeled R_{i+2}");
  }
  return out;
}

// --- inflated -------------------------------------------------------------------

std::vector<std::string> inflate_spec_violations(const InflateSpec& spec) {
  auto out = chain_spec_violations(spec.base);
  if (spec.path.empty()) {
    out.push_back("path is empty");
    return out;
  }
  ProcessSet seen;
  for (Process p : spec.path) {
    if (p < 0 || p >= spec.base.n) out.push_back("path node outside 1..n");
    else if (seen.contains(p)) out.push_back("path repeats a node");
    else seen.insert(p);
  }
  if (seen.intersects(spec.base.b)) out.push_back("path meets B");
  for (const auto& r : spec.base.roots) {
    if (seen.intersects(r)) {
      out.push_back("path meets a root set");
      break;
    }
  }
  return out;
}

InflateSpec smallest_inflate_spec(int length, int path_length) {
  if (path_length < 1) throw InvalidArgument("path length must be >= 1");
  InflateSpec spec;
  spec.base = smallest_chain_spec(length);
  const int first = spec.base.n;
  spec.base.n += path_length;
  if (spec.base.n > kMaxProcesses) throw InvalidArgument("inflated chain exceeds 64 processes");
  spec.path = range(first, spec.base.n);
  return spec;
}

Adversary gen_inflated(const InflateSpec& spec) {
  throw_if(inflate_spec_violations(spec), "inflate spec");
  Adversary d = build_chain(spec.base, &spec.path);
  throw_if(inflated_violations(spec, d), "inflated construction");
  return d;
}

std::vector<std::string> inflated_violations(const InflateSpec& spec, const Adversary& d) {
  std::vector<std::string> out;
  const ChainSpec& base = spec.base;
  if (d.size() != static_cast<std::size_t>(base.length())) {
    out.push_back("graph count differs from N");
    return out;
  }
  check_roots(base, d, out);
  check_codes(base, out);

  ProcessSet extra = base.b | ProcessSet::of(spec.path);
  extra.erase(spec.entry());

  ViewStore store(d.n());
  for (std::uint32_t i = 0; i + 1 < d.size(); ++i) {
    for (std::size_t r = 1; r <= spec.path.size(); ++r) {
      const ProcessSet label =
          indistinguishability_label(d, Pattern::repeat(i, r), Pattern::repeat(i + 1, r), store);
      if (!base.roots[i + 2].is_subset_of(label)) {
        out.push_back("G_" + std::to_string(i + 1) + "^" + std::to_string(r) + " and G_" +
                      std::to_string(i + 2) + "^" + std::to_string(r) + " differ on R_" +
                      std::to_string(i + 3));
      }
    }
  }

  const IndistGraph first = single_round_indist(d);
  for (const auto& e : first.edges()) {
    const bool chain = e.v == e.u + 1;
    const ProcessSet rest = chain ? e.label - base.roots[e.u + 2] : e.label;
    if (chain && !base.roots[e.u + 2].is_subset_of(e.label)) {
      out.push_back("chain edge " + std::to_string(e.u + 1) + " lost R_" + std::to_string(e.u + 3));
    }
    if (!rest.is_subset_of(extra)) {
      out.push_back("edge " + d[e.u].name() + "--" + d[e.v].name() + " has label " + p1(e.label) +
                    " beyond (B u P) \\ {h}");
    }
  }

  const RefinementTrace trace = decide(d, {.no_early_exit = true});
  if (trace.levels.size() >= 2) {
    const ProcessSet bp = base.b | ProcessSet::of(spec.path);
    for (const auto& e : trace.levels[1].edges()) {
      if (e.label.is_subset_of(bp)) {
        out.push_back("edge labeled inside B u P survives the first refinement");
      }
    }
  }
  return out;
}

Pattern inflate_pattern(const Pattern& sigma, std::size_t k, const InflateSpec& spec) {
  if (k != spec.path.size()) {
    throw InvalidArgument("inflation factor " + std::to_string(k) + " differs from |P| = " +
                          std::to_string(spec.path.size()));
  }
  std::vector<std::uint32_t> rounds;
  rounds.reserve(sigma.length() * k);
  for (std::uint32_t g : sigma.rounds()) rounds.insert(rounds.end(), k, g);
  return Pattern(std::move(rounds));
}

InflationCheck check_inflation(const InflateSpec& spec, const Adversary& base,
                               const Adversary& inflated, std::size_t len, std::uint64_t budget) {
  InflationCheck out;
  const std::size_t k = spec.path.size();
  const IndistGraph graph = pattern_indist_graph(base, len, budget);
  ViewStore store(inflated.n());
  for (const auto& e : graph.edges()) {
    const Pattern s = pattern_at(e.u, base.size(), len);
    const Pattern t = pattern_at(e.v, base.size(), len);
    const ProcessSet label =
        indistinguishability_label(inflated, inflate_pattern(s, k, spec), inflate_pattern(t, k, spec), store);
    ++out.edges_checked;
    if (!e.label.is_subset_of(label)) {
      out.violations.push_back(pattern_name(base, s) + " -- " + pattern_name(base, t) +
                               ": inflated label " + p1(label) + " misses part of " + p1(e.label));
    }
  }
  return out;
}

// --- partitioned ------------------------------------------------------------------

std::uint64_t interconnect_variants(int m) {
  if (m <= 2) return 1;
  const int bits = m * (m - 2);
  return bits >= 64 ? UINT64_MAX : (std::uint64_t{1} << bits);
}

namespace {

std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

int b_bits(const PartitionSpec& spec) {
  const int need = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(spec.t))));
  return spec.b_size == 0 ? need : spec.b_size;
}

ProcessSet first_subset_avoiding(int lo, int hi, int m, const std::vector<ProcessSet>& forbidden) {
  ProcessSet found;
  const bool ok = for_each_subset(range(lo, hi), m, [&](const std::vector<Process>& s) {
    const ProcessSet c = ProcessSet::of(s);
    if (std::find(forbidden.begin(), forbidden.end(), c) != forbidden.end()) return false;
    found = c;
    return true;
  });
  if (!ok) throw Error("no fresh " + std::to_string(m) + "-subset left in range");
  return found;
}

PartitionLayout make_layout(const PartitionSpec& spec) {
  const int m = spec.m;
  PartitionLayout l;
  l.m = m;
  l.t = spec.t;
  l.n = 5 * m + b_bits(spec);
  l.b = range_set(5 * m, l.n);
  l.roots.push_back(range_set(4 * m, 5 * m));
  l.roots.push_back(first_subset_avoiding(0, 2 * m, m, {}));
  l.roots.push_back(first_subset_avoiding(2 * m, 4 * m, m, {}));
  l.u.push_back(first_subset_avoiding(2 * m, 4 * m, m, {l.roots[2]}));
  l.u_prime.push_back(first_subset_avoiding(0, 2 * m, m, {l.roots[1]}));
  for (int i = 1; i < spec.t; ++i) {
    l.roots.push_back(l.u_prime[i - 1]);  // R_{2i+2}
    l.roots.push_back(l.u[i - 1]);        // R_{2i+3}
    std::vector<ProcessSet> odd, even;
    for (std::size_t j = 1; j < l.roots.size(); ++j) ((j + 1) % 2 == 0 ? even : odd).push_back(l.roots[j]);
    l.u.push_back(first_subset_avoiding(2 * m, 4 * m, m, odd));
    l.u_prime.push_back(first_subset_avoiding(0, 2 * m, m, even));
  }
  return l;
}

// Cycle through R in increasing order plus the extra in-edges of variant v.
void add_interconnect(std::vector<Edge>& edges, ProcessSet r, std::uint64_t variant) {
  const auto mem = r.members();
  const std::size_t m = mem.size();
  if (m >= 2) {
    for (std::size_t k = 0; k < m; ++k) edges.emplace_back(mem[k], mem[(k + 1) % m]);
  }
  std::vector<Edge> candidates;
  for (std::size_t k = 0; k < m && m > 2; ++k) {
    const std::size_t pred = (k + m - 1) % m;
    for (std::size_t from = 0; from < m; ++from) {
      if (from != k && from != pred) candidates.emplace_back(mem[from], mem[k]);
    }
  }
  const std::size_t count = candidates.size();
  for (std::size_t q = 0; q < count; ++q) {
    if ((variant >> (count - 1 - q)) & 1U) edges.push_back(candidates[q]);
  }
}

std::vector<std::string> layout_violations(const PartitionLayout& l) {
  std::vector<std::string> out;
  const int m = l.m;
  const ProcessSet low = range_set(0, 2 * m), mid = range_set(2 * m, 4 * m);
  auto r = [&](std::size_t j) { return l.roots[j - 1]; };
  if (r(1) != range_set(4 * m, 5 * m)) out.push_back("(b1) R_1 != [4m+1,5m]");
  for (std::size_t j = 2; j <= l.roots.size(); ++j) {
    const ProcessSet& range_j = j % 2 == 0 ? low : mid;
    if (!r(j).is_subset_of(range_j) || static_cast<int>(r(j).size()) != m) {
      out.push_back("R_" + std::to_string(j) + " outside its range or of wrong size");
    }
  }
  if (l.u[0] == r(3) || !l.u[0].is_subset_of(mid)) out.push_back("(b4) U_1");
  if (l.u_prime[0] == r(2) || !l.u_prime[0].is_subset_of(low)) out.push_back("(b5) U'_1");
  for (int i = 1; i < l.t; ++i) {
    const auto si = std::to_string(i);
    if (r(2 * i + 2) != l.u_prime[i - 1]) out.push_back("(s1) R_" + std::to_string(2 * i + 2) + " != U'_" + si);
    if (r(2 * i + 3) != l.u[i - 1]) out.push_back("(s2) R_" + std::to_string(2 * i + 3) + " != U_" + si);
    for (int j = 3; j <= 2 * i + 3; j += 2) {
      if (l.u[i] == r(j)) out.push_back("(s3) U_" + std::to_string(i + 1) + " repeats R_" + std::to_string(j));
    }
    for (int j = 2; j <= 2 * i + 2; j += 2) {
      if (l.u_prime[i] == r(j)) out.push_back("(s4) U'_" + std::to_string(i + 1) + " repeats R_" + std::to_string(j));
    }
    if (!l.u[i].is_subset_of(mid) || !l.u_prime[i].is_subset_of(low)) out.push_back("U/U' outside range");
  }
  return out;
}

bool induced_connected(const IndistGraph& g, const std::vector<std::size_t>& nodes) {
  std::map<NodeId, NodeId> local;
  for (std::size_t v : nodes) local.emplace(static_cast<NodeId>(v), static_cast<NodeId>(local.size()));
  std::vector<LabeledEdge> edges;
  for (const auto& e : g.edges()) {
    auto a = local.find(e.u), b = local.find(e.v);
    if (a != local.end() && b != local.end()) edges.push_back({a->second, b->second, e.label});
  }
  return connected_components(nodes.size(), edges).count() == 1;
}

}  // namespace

std::vector<std::string> partition_spec_violations(const PartitionSpec& spec) {
  std::vector<std::string> out;
  if (spec.m < 1) out.push_back("m must be >= 1");
  if (spec.t < 1) out.push_back("t must be >= 1");
  if (!out.empty()) return out;
  if (interconnect_variants(spec.m) < static_cast<std::uint64_t>(spec.t)) {
    out.push_back("only " + std::to_string(interconnect_variants(spec.m)) +
                  " interconnect variants for t = " + std::to_string(spec.t));
  }
  if (spec.m <= 12 && binomial(2 * spec.m, spec.m) < static_cast<std::uint64_t>(spec.t) + 1) {
    out.push_back("C(2m,m) < t+1: not enough fresh root sets");
  }
  const int need = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(spec.t))));
  if (spec.b_size != 0 && spec.b_size < need) out.push_back("|B| too small to encode t");
  if (5 * spec.m + b_bits(spec) > kMaxProcesses) out.push_back("n = 5m + |B| exceeds 64");
  return out;
}

PartitionedAdversary gen_partitioned(const PartitionSpec& spec) {
  throw_if(partition_spec_violations(spec), "partition spec");
  PartitionLayout l = make_layout(spec);
  const ProcessSet all = ProcessSet::all(l.n);

  std::vector<CommunicationGraph> graphs;
  std::vector<std::vector<std::size_t>> blocks;
  for (int i = 1; i <= l.t; ++i) {
    blocks.emplace_back();
    const ProcessSet code = encode_index(l.b, static_cast<std::uint64_t>(i));
    const ProcessSet u = l.u[i - 1], up = l.u_prime[i - 1];
    for (int j = 1; j <= 2 * i + 1; ++j) {
      const ProcessSet r = l.roots[j - 1];
      const ProcessSet fed = j == 1 ? (u | up) : (j % 2 == 0 ? u : up);
      const ProcessSet rest = all - l.b - r - fed;
      std::vector<Edge> edges;
      add_interconnect(edges, r, static_cast<std::uint64_t>(i - 1));
      connect(edges, r, l.b | rest);
      connect(edges, code, fed | rest);
      blocks.back().push_back(graphs.size());
      graphs.emplace_back(l.n, edges, "G" + std::to_string(i) + "_" + std::to_string(j));
    }
  }
  PartitionedAdversary out{std::move(l), Adversary(std::move(graphs)), std::move(blocks)};
  throw_if(partitioned_violations(out), "partitioned construction");
  return out;
}

std::vector<std::string> partitioned_violations(const PartitionedAdversary& p) {
  std::vector<std::string> out = layout_violations(p.layout);
  const Adversary& d = p.d;
  for (int i = 1; i <= p.layout.t; ++i) {
    for (int j = 1; j <= 2 * i + 1; ++j) {
      const auto& g = d[p.blocks[i - 1][j - 1]];
      if (g.root() != std::optional<ProcessSet>(p.layout.roots[j - 1])) {
        out.push_back("Root(" + g.name() + ") != R_" + std::to_string(j));
      }
    }
  }
  if (!out.empty()) return out;

  const IndistGraph base = single_round_indist(d);
  std::vector<std::size_t> earlier;
  for (std::size_t i = 0; i < p.blocks.size(); ++i) {
    const auto& block = p.blocks[i];
    if (!induced_connected(base, block)) out.push_back("(i) S_" + std::to_string(i + 1) + " is not connected");
    if (!earlier.empty()) {
      std::set<std::size_t> in(earlier.begin(), earlier.end());
      std::vector<LabeledEdge> inner;
      for (const auto& e : base.edges()) {
        if (in.count(e.u) && in.count(e.v)) inner.push_back(e);
      }
      if (!is_protected(inner, d, block).all_protected) {
        out.push_back("(ii) S_" + std::to_string(i + 1) + " does not protect the earlier blocks");
      }
    }
    earlier.insert(earlier.end(), block.begin(), block.end());
  }

  // (iii) via the two witness patterns (G_{i,2})_i and (G_{i,3})_i.
  std::vector<std::uint32_t> even, odd;
  for (const auto& block : p.blocks) {
    even.push_back(static_cast<std::uint32_t>(block[1]));
    odd.push_back(static_cast<std::uint32_t>(block[2]));
  }
  const ProcessSet b2 = broadcasters(d, Pattern(even));
  const ProcessSet b3 = broadcasters(d, Pattern(odd));
  if (!b2.is_subset_of(p.layout.roots[1])) out.push_back("(iii) broadcasters of (G_{i,2}) escape R_2");
  if (!b3.is_subset_of(p.layout.roots[2])) out.push_back("(iii) broadcasters of (G_{i,3}) escape R_3");
  if (b2.intersects(b3)) out.push_back("(iii) the witness patterns share a broadcaster");
  return out;
}

bool sigma_connected(const PartitionedAdversary& p, std::uint64_t budget) {
  const std::size_t t = p.blocks.size();
  ViewStore store(p.d.n());
  const PatternSpace space = enumerate_patterns(p.d, t, store, budget);
  const Components comps = pattern_components(space);
  std::optional<std::uint32_t> seen;
  std::vector<std::uint32_t> rounds(t);
  std::function<bool(std::size_t)> rec = [&](std::size_t k) -> bool {
    if (k == t) {
      const auto c = comps.component_of[pattern_index(Pattern(rounds), p.d.size())];
      if (!seen) seen = c;
      return *seen == c;
    }
    for (std::size_t g : p.blocks[k]) {
      rounds[k] = static_cast<std::uint32_t>(g);
      if (!rec(k + 1)) return false;
    }
    return true;
  };
  return rec(0);
}

// --- catalog -----------------------------------------------------------------------

std::string letter_suffix(std::size_t index) {
  std::string s;
  ++index;
  while (index > 0) {
    --index;
    s.insert(s.begin(), static_cast<char>('a' + index % 26));
    index /= 26;
  }
  return s;
}

std::vector<std::string> catalog_families() {
  return {"rooted-trees", "source-broadcast", "lossy-link", "random"};
}

namespace {

void check_count(long double count, std::size_t limit, std::string_view family) {
  if (count > static_cast<long double>(limit)) {
    std::ostringstream os;
    os.precision(0);
    os << std::fixed << family << " would have " << count << " graphs, limit " << limit;
    throw InvalidArgument(os.str());
  }
}

Adversary named(int n, std::vector<std::vector<Edge>> edge_sets, bool sort) {
  for (auto& e : edge_sets) std::sort(e.begin(), e.end());
  if (sort) {
    std::sort(edge_sets.begin(), edge_sets.end(), [](const auto& a, const auto& b) {
      return std::make_pair(a.size(), a) < std::make_pair(b.size(), b);
    });
  }
  std::vector<CommunicationGraph> graphs;
  for (std::size_t i = 0; i < edge_sets.size(); ++i) {
    graphs.emplace_back(n, edge_sets[i], "G" + letter_suffix(i));
  }
  return Adversary(std::move(graphs));
}

std::vector<std::vector<Edge>> rooted_trees(int n) {
  std::vector<std::vector<Edge>> out;
  for (Process root = 0; root < n; ++root) {
    std::vector<Process> parent(n, 0);
    std::function<void(Process)> rec = [&](Process v) {
      if (v == n) {
        // Every node must climb to the root without revisiting.
        for (Process x = 0; x < n; ++x) {
          Process y = x;
          for (int steps = 0; y != root && steps <= n; ++steps) y = parent[y];
          if (y != root) return;
        }
        std::vector<Edge> edges;
        for (Process x = 0; x < n; ++x) {
          if (x != root) edges.emplace_back(parent[x], x);
        }
        out.push_back(std::move(edges));
        return;
      }
      if (v == root) return rec(v + 1);
      for (Process q = 0; q < n; ++q) {
        if (q == v) continue;
        parent[v] = q;
        rec(v + 1);
      }
    };
    rec(0);
  }
  return out;
}

}  // namespace

Adversary gen_catalog(std::string_view family, const CatalogParams& params) {
  const int n = params.n;
  if (n < 2 || n > kMaxProcesses) throw InvalidArgument("catalog: n must lie in 2..64");

  if (family == "rooted-trees") {
    check_count(std::pow(static_cast<long double>(n), static_cast<long double>(n - 1)),
                params.max_graphs, family);
    return named(n, rooted_trees(n), true);
  }

  if (family == "source-broadcast") {
    const int k = params.clique;
    if (k < 1 || k > n) throw InvalidArgument("source-broadcast: clique size must lie in 1..n");
    check_count(static_cast<long double>(binomial(n, k)), params.max_graphs, family);
    std::vector<std::vector<Edge>> sets;
    for_each_subset(range(0, n), k, [&](const std::vector<Process>& s) {
      const ProcessSet clique = ProcessSet::of(s);
      std::vector<Edge> edges;
      connect(edges, clique, ProcessSet::all(n));
      sets.push_back(std::move(edges));
      return false;
    });
    return named(n, std::move(sets), true);
  }

  if (family == "lossy-link") {
    const int links = n * (n - 1);
    if (params.f < 0 || params.f > links) throw InvalidArgument("lossy-link: f must lie in 0..n(n-1)");
    long double count = 0;
    for (int k = 0; k <= params.f; ++k) count += static_cast<long double>(binomial(links, k));
    check_count(count, params.max_graphs, family);
    std::vector<Edge> complete;
    connect(complete, ProcessSet::all(n), ProcessSet::all(n));
    std::sort(complete.begin(), complete.end());
    std::vector<std::vector<Edge>> sets;
    std::vector<Process> idx = range(0, links);
    for (int k = 0; k <= params.f; ++k) {
      for_each_subset(idx, k, [&](const std::vector<Process>& drop) {
        std::vector<Edge> edges;
        std::size_t q = 0;
        for (int e = 0; e < links; ++e) {
          if (q < drop.size() && drop[q] == e) ++q;
          else edges.push_back(complete[static_cast<std::size_t>(e)]);
        }
        sets.push_back(std::move(edges));
        return false;
      });
    }
    return named(n, std::move(sets), true);
  }

  if (family == "random") {
    if (params.count < 1) throw InvalidArgument("random: count must be >= 1");
    std::vector<Edge> candidates;
    connect(candidates, ProcessSet::all(n), ProcessSet::all(n));
    std::sort(candidates.begin(), candidates.end());
    std::mt19937_64 rng(params.seed);
    std::vector<std::vector<Edge>> sets;
    std::vector<CommunicationGraph> kept;
    const int max_attempts = 10000 * params.count;
    for (int attempt = 0; attempt < max_attempts && static_cast<int>(sets.size()) < params.count; ++attempt) {
      std::vector<Edge> edges;
      std::uint64_t bits = 0;
      for (std::size_t e = 0; e < candidates.size(); ++e) {
        if (e % 64 == 0) bits = rng();
        if ((bits >> (e % 64)) & 1U) edges.push_back(candidates[e]);
      }
      CommunicationGraph g(n, edges);
      if (!g.rooted()) continue;
      if (std::any_of(kept.begin(), kept.end(), [&](const auto& h) { return h.same_adjacency(g); })) continue;
      kept.push_back(g);
      sets.push_back(std::move(edges));
    }
    if (static_cast<int>(sets.size()) < params.count) {
      throw InvalidArgument("random: could not draw " + std::to_string(params.count) + " distinct rooted graphs");
    }
    return named(n, std::move(sets), false);
  }

  throw InvalidArgument("unknown family '" + std::string(family) + "'");
}

}  // namespace oma
