#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "oma/adversary.hpp"
#include "oma/error.hpp"
#include "oma/graph.hpp"
#include "oracles.hpp"

using namespace oma;

namespace {

CommunicationGraph graph(int n, std::vector<Edge> edges, std::string name = {}) {
  for (auto& [u, v] : edges) {
    --u;
    --v;
  }
  return CommunicationGraph(n, edges, std::move(name));
}

ProcessSet procs(std::initializer_list<int> one_based) {
  ProcessSet s;
  for (int p : one_based) s.insert(p - 1);
  return s;
}

CommunicationGraph random_graph(std::mt19937_64& rng, int n, double density) {
  std::bernoulli_distribution coin(density);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && coin(rng)) edges.emplace_back(u, v);
  return CommunicationGraph(n, edges);
}

ProcessSet to_set(const ref::Set& s) {
  ProcessSet out;
  for (int p : s) out.insert(p);
  return out;
}

}  // namespace

TEST_CASE("root of small graphs") {
  CHECK(graph(3, {{1, 2}, {2, 3}}).root() == procs({1}));
  CHECK(graph(3, {{1, 2}, {2, 1}, {1, 3}}).root() == procs({1, 2}));
  CHECK_FALSE(graph(2, {}).rooted());
  CHECK(graph(3, {{1, 2}, {2, 1}, {1, 3}, {3, 1}, {2, 3}, {3, 2}}).root() == procs({1, 2, 3}));
  CHECK_FALSE(root_component(graph(3, {{1, 3}, {2, 3}})).has_value());
}

TEST_CASE("self-loops are implicit and listing them changes nothing") {
  const auto a = graph(3, {{1, 2}});
  const auto b = graph(3, {{1, 1}, {1, 2}, {3, 3}});
  CHECK(a.same_adjacency(b));
  for (int p = 0; p < 3; ++p) CHECK(a.in(p).contains(p));
  CHECK(a.edges() == std::vector<Edge>{{0, 1}});
}

TEST_CASE("construction rejects bad input") {
  CHECK_THROWS_AS(graph(1, {}), InvalidArgument);
  CHECK_THROWS_AS(graph(65, {}), InvalidArgument);
  CHECK_THROWS_AS(graph(3, {{1, 4}}), InvalidArgument);
  CHECK_THROWS_AS(graph(3, {{0, 2}}), InvalidArgument);
}

TEST_CASE("root compatibility") {
  const auto r1 = graph(3, {{1, 2}, {1, 3}});
  const auto r12 = graph(3, {{1, 2}, {2, 1}, {1, 3}});
  const auto r2 = graph(3, {{2, 1}, {2, 3}});
  const auto r23 = graph(3, {{2, 3}, {3, 2}, {2, 1}});
  const auto r13 = graph(3, {{1, 3}, {3, 1}, {1, 2}});

  CHECK(is_root_compatible(std::vector<CommunicationGraph>{r1, r12}));
  CHECK_FALSE(is_root_compatible(std::vector<CommunicationGraph>{r1, r2}));

  // Pairwise intersecting roots with an empty common intersection.
  const std::vector<CommunicationGraph> triple{r12, r23, r13};
  ref::Set common{0, 1, 2};
  for (const auto& g : triple) {
    ref::Set keep;
    for (int p : ref::root(g))
      if (common.count(p)) keep.insert(p);
    common = keep;
  }
  CHECK(common.empty());
  CHECK_FALSE(is_root_compatible(triple));
  CHECK(is_root_compatible(std::vector<CommunicationGraph>{r12, r23}));

  CHECK(is_root_compatible(std::vector<CommunicationGraph>{}));
  CHECK_THROWS_AS(is_root_compatible(std::vector<CommunicationGraph>{r1, graph(3, {})}), NotRooted);
}

TEST_CASE("reaches_all") {
  const auto star = graph(3, {{1, 2}, {1, 3}});
  CHECK(reaches_all(star, 0));
  CHECK_FALSE(reaches_all(star, 1));
  CHECK_FALSE(reaches_all(graph(3, {{1, 2}, {2, 3}}), 1));
  const auto complete = graph(3, {{1, 2}, {2, 1}, {1, 3}, {3, 1}, {2, 3}, {3, 2}});
  for (int p = 0; p < 3; ++p) CHECK(reaches_all(complete, p));
}

TEST_CASE("root agrees with the closure oracle on random graphs") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 600; ++trial) {
    const int n = 2 + trial % 7;
    const auto g = random_graph(rng, n, 0.1 + 0.05 * (trial % 8));
    const ref::Set expect = ref::root(g);
    if (expect.empty()) {
      CHECK_FALSE(g.rooted());
    } else {
      REQUIRE(g.rooted());
      CHECK(*g.root() == to_set(expect));
    }
    for (int p = 0; p < n; ++p) {
      CHECK(reaches_all(g, p) == (expect.count(p) > 0));
      if (g.rooted()) CHECK(reaches_all(g, p) == g.root()->contains(p));
    }
  }
}

TEST_CASE("root is equivariant under relabeling") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 5;
    const auto g = random_graph(rng, n, 0.3);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> moved;
    for (auto [u, v] : g.edges()) moved.emplace_back(perm[u], perm[v]);
    const CommunicationGraph h(n, moved);
    std::vector<int> inv(n);
    for (int p = 0; p < n; ++p) inv[perm[p]] = p;
    std::vector<Edge> back;
    for (auto [u, v] : h.edges()) back.emplace_back(inv[u], inv[v]);
    const CommunicationGraph g2(n, back);

    REQUIRE(g.rooted() == h.rooted());
    CHECK(g.same_adjacency(g2));
    CHECK(g.root() == g2.root());
    if (g.rooted()) {
      ProcessSet mapped;
      for (int p : g.root()->members()) mapped.insert(perm[p]);
      CHECK(*h.root() == mapped);
    }
  }
}

TEST_CASE("adding an edge into the root keeps a valid answer") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 4;
    const auto g = random_graph(rng, n, 0.35);
    if (!g.rooted()) continue;
    const auto root = *g.root();
    auto edges = g.edges();
    const Process into = root.min();
    for (int from = 0; from < n; ++from) {
      if (root.contains(from)) continue;
      auto more = edges;
      more.emplace_back(from, into);
      const CommunicationGraph h(n, more);
      const ref::Set expect = ref::root(h);
      CHECK(h.rooted() == !expect.empty());
      if (h.rooted()) {
        CHECK(*h.root() == to_set(expect));
        CHECK(root.is_subset_of(*h.root()));
        CHECK(h.root()->contains(from));
      }
    }
  }
}

TEST_CASE("strongly connected components partition the processes") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 6;
    const auto g = random_graph(rng, n, 0.3);
    ProcessSet seen;
    for (const auto& c : g.strongly_connected_components()) {
      CHECK_FALSE(c.intersects(seen));
      seen |= c;
    }
    CHECK(seen == ProcessSet::all(n));
  }
}

TEST_CASE("process sets print one-based") {
  CHECK(procs({1, 3}).to_string() == "{p1,p3}");
  CHECK(ProcessSet().to_string() == "{}");
  CHECK(ProcessSet::all(64).size() == 64);
}

TEST_CASE("adversary construction rules") {
  const auto a = graph(2, {{1, 2}}, "A");
  const auto b = graph(2, {{2, 1}}, "B");
  CHECK_THROWS_AS(Adversary({}), InvalidArgument);
  CHECK_THROWS_AS(Adversary({a, graph(3, {}, "C")}), InvalidArgument);
  CHECK_THROWS_AS(Adversary({a, graph(2, {{2, 1}}, "A")}), InvalidArgument);
  CHECK_THROWS_AS(Adversary({a, graph(2, {{1, 2}}, "Z")}), InvalidArgument);

  const Adversary d({graph(2, {{1, 2}}), graph(2, {{2, 1}})});
  CHECK(d[0].name() == "G1");
  CHECK(d[1].name() == "G2");
  CHECK(d.index_of("G2") == 1u);
  CHECK_FALSE(d.index_of("G3").has_value());

  const Adversary e({a, b, graph(2, {}, "E")});
  CHECK_FALSE(e.all_rooted());
  CHECK(e.first_unrooted() == 2u);
  CHECK(e.root_masks()[0] == 0b01);
  CHECK(e.root_masks()[2] == 0);
  CHECK(e.in_rows(1)[0] == 0b11);
}
