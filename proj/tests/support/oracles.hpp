#pragma once

// Slow, literal re-implementations used as test oracles. Nothing here calls
// into the analyses under test; graphs are read only through their raw edge
// lists.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "oma/adversary.hpp"
#include "oma/patterns.hpp"

namespace ref {

using Matrix = std::vector<std::vector<bool>>;  // m[u][v]: u -> v
using Set = std::set<int>;

inline Matrix adjacency(const oma::CommunicationGraph& g) {
  Matrix m(g.n(), std::vector<bool>(g.n(), false));
  for (int p = 0; p < g.n(); ++p) m[p][p] = true;
  for (auto [u, v] : g.edges()) m[u][v] = true;
  return m;
}

inline Matrix closure(Matrix m) {
  const int n = static_cast<int>(m.size());
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (m[i][k] && m[k][j]) m[i][j] = true;
  return m;
}

// Nodes that reach every node; empty when there are none.
inline Set root(const oma::CommunicationGraph& g) {
  const Matrix reach = closure(adjacency(g));
  Set out;
  for (int p = 0; p < g.n(); ++p) {
    bool all = true;
    for (int q = 0; q < g.n(); ++q) all = all && reach[p][q];
    if (all) out.insert(p);
  }
  return out;
}

inline bool subset(const Set& a, const Set& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline Set from_bits(std::uint64_t bits) {
  Set s;
  for (int p = 0; p < 64; ++p)
    if ((bits >> p) & 1U) s.insert(p);
  return s;
}

inline Set in_set(const oma::CommunicationGraph& g, int p) {
  const Matrix m = adjacency(g);
  Set s;
  for (int q = 0; q < g.n(); ++q)
    if (m[q][p]) s.insert(q);
  return s;
}

// Full-information views as nested strings, one row per time 0..r.
inline std::vector<std::vector<std::string>> view_rows(const oma::Adversary& d,
                                                       const std::vector<int>& sigma) {
  const int n = d.n();
  std::vector<std::vector<std::string>> rows(1);
  for (int p = 0; p < n; ++p) rows[0].push_back(std::to_string(p));
  for (std::size_t t = 0; t < sigma.size(); ++t) {
    const Matrix m = adjacency(d[sigma[t]]);
    std::vector<std::string> next;
    for (int p = 0; p < n; ++p) {
      std::set<std::string> heard;
      for (int q = 0; q < n; ++q)
        if (m[q][p]) heard.insert(rows[t][q]);
      std::string v = std::to_string(p) + "@" + std::to_string(t + 1) + "[";
      for (const auto& h : heard) v += h + ";";
      next.push_back(v + "]");
    }
    rows.push_back(std::move(next));
  }
  return rows;
}

inline Set label(const oma::Adversary& d, const std::vector<int>& a, const std::vector<int>& b) {
  const auto ra = view_rows(d, a).back();
  const auto rb = view_rows(d, b).back();
  Set s;
  for (int p = 0; p < d.n(); ++p)
    if (ra[p] == rb[p]) s.insert(p);
  return s;
}

// Processes whose initial state reaches everyone, by boolean matrix products.
inline Set broadcasters(const oma::Adversary& d, const std::vector<int>& sigma) {
  const int n = d.n();
  Matrix reach(n, std::vector<bool>(n, false));
  for (int p = 0; p < n; ++p) reach[p][p] = true;
  for (int g : sigma) {
    const Matrix m = adjacency(d[g]);
    Matrix next(n, std::vector<bool>(n, false));
    for (int p = 0; p < n; ++p)
      for (int x = 0; x < n; ++x)
        if (reach[p][x])
          for (int q = 0; q < n; ++q)
            if (m[x][q]) next[p][q] = true;
    reach = std::move(next);
  }
  Set out;
  for (int p = 0; p < n; ++p)
    if (std::all_of(reach[p].begin(), reach[p].end(), [](bool b) { return b; })) out.insert(p);
  return out;
}

inline std::vector<std::vector<int>> all_patterns(std::size_t graphs, std::size_t r) {
  std::vector<std::vector<int>> out{{}};
  for (std::size_t t = 0; t < r; ++t) {
    std::vector<std::vector<int>> next;
    for (const auto& s : out)
      for (std::size_t g = 0; g < graphs; ++g) {
        auto e = s;
        e.push_back(static_cast<int>(g));
        next.push_back(std::move(e));
      }
    out = std::move(next);
  }
  return out;
}

using EdgeMap = std::map<std::pair<int, int>, Set>;

// I(D^r) by comparing every pair of patterns; nodes in lexicographic order.
inline EdgeMap pattern_graph(const oma::Adversary& d, std::size_t r) {
  const auto pats = all_patterns(d.size(), r);
  std::vector<std::vector<std::string>> finals;
  for (const auto& s : pats) finals.push_back(view_rows(d, s).back());
  EdgeMap out;
  for (std::size_t i = 0; i < pats.size(); ++i)
    for (std::size_t j = i + 1; j < pats.size(); ++j) {
      Set s;
      for (int p = 0; p < d.n(); ++p)
        if (finals[i][p] == finals[j][p]) s.insert(p);
      if (!s.empty()) out[{static_cast<int>(i), static_cast<int>(j)}] = s;
    }
  return out;
}

inline std::vector<int> components(int nodes, const EdgeMap& edges) {
  std::vector<int> comp(nodes, -1);
  int next = 0;
  for (int s = 0; s < nodes; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s};
    comp[s] = next;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (const auto& [e, l] : edges) {
        int w = -1;
        if (e.first == u) w = e.second;
        if (e.second == u) w = e.first;
        if (w >= 0 && comp[w] < 0) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  return comp;
}

struct Refinement {
  bool not_rooted = false;
  bool solvable = false;
  int td = 0;
  int removal_iterations = 0;
  std::vector<EdgeMap> levels;
  std::vector<int> final_components;
};

inline bool compatible(const oma::Adversary& d, const std::vector<Set>& roots,
                       const std::vector<int>& comp) {
  std::map<int, Set> common;
  for (std::size_t g = 0; g < d.size(); ++g) {
    auto it = common.find(comp[g]);
    if (it == common.end()) {
      common[comp[g]] = roots[g];
    } else {
      Set keep;
      for (int p : it->second)
        if (roots[g].count(p)) keep.insert(p);
      it->second = keep;
    }
  }
  for (const auto& [c, s] : common)
    if (s.empty()) return false;
  return true;
}

// Edge-set refinement spelled out with std::set; stops early once every
// component shares a root unless `exhaust` is set.
inline Refinement refine(const oma::Adversary& d, bool exhaust = false) {
  Refinement out;
  const int k = static_cast<int>(d.size());
  std::vector<Set> roots;
  for (std::size_t g = 0; g < d.size(); ++g) {
    roots.push_back(root(d[g]));
    if (roots.back().empty()) out.not_rooted = true;
  }
  if (out.not_rooted) return out;

  EdgeMap level;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      Set s;
      for (int p = 0; p < d.n(); ++p)
        if (in_set(d[a], p) == in_set(d[b], p)) s.insert(p);
      if (!s.empty()) level[{a, b}] = s;
    }
  out.levels.push_back(level);
  out.td = 1;
  auto comp = components(k, level);
  while (exhaust || !compatible(d, roots, comp)) {
    EdgeMap next;
    for (const auto& [e, l] : level) {
      bool guarded = false;
      for (int g = 0; g < k; ++g)
        if (comp[g] == comp[e.first] && subset(roots[g], l)) guarded = true;
      if (guarded) next[e] = l;
    }
    ++out.td;
    out.levels.push_back(next);
    if (next == level) break;
    ++out.removal_iterations;
    level = next;
    comp = components(k, level);
  }
  out.final_components = comp;
  out.solvable = compatible(d, roots, comp);
  return out;
}

// Smallest r <= r_max at which every component of I(D^r) has a common
// broadcaster, by the pairwise graph above.
inline std::optional<std::size_t> min_horizon(const oma::Adversary& d, std::size_t r_max) {
  for (std::size_t r = 0; r <= r_max; ++r) {
    const auto pats = all_patterns(d.size(), r);
    const auto comp = components(static_cast<int>(pats.size()), pattern_graph(d, r));
    std::map<int, Set> common;
    for (std::size_t i = 0; i < pats.size(); ++i) {
      const Set b = broadcasters(d, pats[i]);
      auto it = common.find(comp[i]);
      if (it == common.end()) {
        common[comp[i]] = b;
      } else {
        Set keep;
        for (int p : it->second)
          if (b.count(p)) keep.insert(p);
        it->second = keep;
      }
    }
    bool ok = true;
    for (const auto& [c, s] : common) ok = ok && !s.empty();
    if (ok) return r;
  }
  return std::nullopt;
}

inline std::vector<int> rounds_of(const oma::Pattern& p) {
  return {p.rounds().begin(), p.rounds().end()};
}

}  // namespace ref
