#include <doctest.h>

#include "corpus.hpp"
#include "oma/decision.hpp"
#include "oma/error.hpp"
#include "oma/families.hpp"
#include "oracles.hpp"

using namespace oma;

namespace {

ref::EdgeMap as_map(const IndistGraph& g) {
  ref::EdgeMap out;
  for (const auto& e : g.edges()) out[{static_cast<int>(e.u), static_cast<int>(e.v)}] = ref::from_bits(e.label.bits());
  return out;
}

Adversary two_stars() {
  const std::vector<Edge> g1{{0, 1}, {0, 2}};
  const std::vector<Edge> g2{{0, 1}, {1, 2}};
  return Adversary({CommunicationGraph(3, g1, "G1"), CommunicationGraph(3, g2, "G2")});
}

}  // namespace

TEST_CASE("lossy link refines to a fixpoint and is impossible") {
  const auto d = gen_catalog("lossy-link", {.n = 2, .f = 1});
  const auto t = decide(d);
  CHECK(t.verdict == Verdict::impossible);
  CHECK(t.fixpoint);
  CHECK(t.td == 2);
  CHECK(t.removal_iterations == 0);
  CHECK(t.level(2) == t.level(1));
  CHECK(t.component_count() == 1);
  CHECK(trace_violations(d, t).empty());
  CHECK_THROWS_AS(consensus_round_bound(t, d.n()), InvalidArgument);
}

TEST_CASE("source broadcast stops after the first level") {
  for (int n : {3, 4}) {
    for (int k = 1; k < n; ++k) {
      const auto d = gen_catalog("source-broadcast", {.n = n, .clique = k});
      const auto t = decide(d);
      CHECK(t.verdict == Verdict::solvable);
      CHECK(t.td == 1);
      CHECK(t.removal_iterations == 0);
      CHECK(t.levels.front().edge_count() == 0);
      CHECK(t.component_count() == d.size());
    }
  }
}

TEST_CASE("all rooted trees on three processes") {
  const auto d = gen_catalog("rooted-trees", {.n = 3});
  CHECK(d.size() == 9);
  const auto t = decide(d);
  CHECK(t.verdict == Verdict::impossible);
  // Every edge of I(D) is protected by some tree, so nothing is ever removed.
  CHECK(t.removal_iterations == 0);
}

TEST_CASE("chain of four root sets loses one edge per level, right to left") {
  const auto d = gen_chain(smallest_chain_spec(4));
  const auto t = decide(d, {.no_early_exit = false});
  CHECK(t.verdict == Verdict::solvable);
  CHECK(t.td == 4);
  CHECK(t.removal_iterations == 3);
  CHECK(t.levels[0].edge_count() == 3);
  for (int j = 1; j <= 3; ++j) {
    const auto& r = t.removed[static_cast<std::size_t>(j)];
    REQUIRE(r.size() == 1);
    CHECK(r[0].edge.u == static_cast<NodeId>(3 - j));
    CHECK(r[0].edge.v == static_cast<NodeId>(4 - j));
  }
  // The rightmost edge has no guard anywhere; later ones are guarded from outside.
  CHECK_FALSE(t.removed[1][0].outside_guard.has_value());
  CHECK(t.removed[2][0].outside_guard == 3u);
}

TEST_CASE("round bound arithmetic") {
  const std::vector<Edge> s1{{0, 1}, {0, 2}};
  const std::vector<Edge> s2{{1, 0}, {1, 2}};
  const auto t2 = decide(Adversary({CommunicationGraph(3, s1), CommunicationGraph(3, s2)}));
  CHECK(t2.component_count() == 2);
  CHECK(t2.td == 1);
  CHECK(consensus_round_bound(t2, 3) == 8);

  const std::vector<Edge> one{{0, 1}};
  const auto t1 = decide(Adversary({CommunicationGraph(2, one)}));
  CHECK(t1.verdict == Verdict::solvable);
  CHECK(t1.td == 1);
  CHECK(consensus_round_bound(t1, 2) == 2);

  const auto sb = gen_catalog("source-broadcast", {.n = 4, .clique = 1});
  CHECK(consensus_round_bound(decide(sb), 4) == sb.size() * 3 * 2);

  CHECK(consensus_round_bound(decide(two_stars()), 3) == 4);
}

TEST_CASE("non-rooted input is reported with the offending graph") {
  const std::vector<Edge> star{{0, 1}, {0, 2}};
  const std::vector<Edge> split{{0, 2}, {1, 2}};
  const auto t = decide(Adversary({CommunicationGraph(3, star), CommunicationGraph(3, split)}));
  CHECK(t.verdict == Verdict::not_rooted_input);
  CHECK(t.unrooted_graph == 1u);
  CHECK(t.levels.empty());
  CHECK(verdict_name(t.verdict) == "IMPOSSIBLE-NOT-ROOTED");
}

TEST_CASE("levels beyond an early exit are refused") {
  const auto d = gen_chain(smallest_chain_spec(3));
  const auto early = decide(d);
  CHECK_FALSE(early.fixpoint);
  CHECK_THROWS_AS(early.level(early.td + 1), InvalidArgument);
  const auto full = decide(d, {.no_early_exit = true});
  CHECK(full.fixpoint);
  CHECK(full.level(full.td + 5) == full.level(full.td));
  CHECK_THROWS_AS(full.level(0), InvalidArgument);
}

TEST_CASE("refinement matches the literal set-based oracle on the corpus") {
  for (const auto& e : corpus::all()) {
    CAPTURE(e.label);
    for (bool exhaust : {false, true}) {
      const auto t = decide(e.d, {.no_early_exit = exhaust});
      const auto r = ref::refine(e.d, exhaust);
      if (r.not_rooted) {
        CHECK(t.verdict == Verdict::not_rooted_input);
        continue;
      }
      CHECK((t.verdict == Verdict::solvable) == r.solvable);
      CHECK(t.td == r.td);
      CHECK(t.removal_iterations == r.removal_iterations);
      REQUIRE(t.levels.size() == r.levels.size());
      for (std::size_t i = 0; i < t.levels.size(); ++i) CHECK(as_map(t.levels[i]) == r.levels[i]);
      CHECK(trace_violations(e.d, t).empty());
    }
  }
}

TEST_CASE("stability is absorbing") {
  for (const auto& e : corpus::catalog()) {
    const auto t = decide(e.d, {.no_early_exit = true});
    if (t.verdict == Verdict::not_rooted_input) continue;
    CHECK(t.fixpoint);
    // Refining the stable level once more removes nothing.
    const auto comps = connected_components(t.levels.back());
    for (const auto& edge : t.levels.back().edges()) {
      bool guarded = false;
      for (NodeId g : comps.members[comps.component_of[edge.u]])
        guarded = guarded || (e.d.root_masks()[g] & ~edge.label.bits()) == 0;
      CHECK(guarded);
    }
  }
}

TEST_CASE("trace checker spots tampering") {
  const auto d = gen_chain(smallest_chain_spec(3));
  auto t = decide(d);
  REQUIRE(trace_violations(d, t).empty());
  auto grown = t;
  grown.levels.back() = grown.levels.front();
  CHECK_FALSE(trace_violations(d, grown).empty());
  auto counted = t;
  counted.td += 1;
  CHECK_FALSE(trace_violations(d, counted).empty());
}

TEST_CASE("protected chain premises and conclusion") {
  const auto d = gen_catalog("lossy-link", {.n = 2, .f = 1});
  const auto t = decide(d, {.no_early_exit = true});
  const std::vector<std::vector<NodeId>> one{{0, 1, 2}};
  CHECK(check_protected_chain(d, one, t));

  const auto chain = gen_chain(smallest_chain_spec(3));
  const auto tc = decide(chain, {.no_early_exit = true});
  const std::vector<std::vector<NodeId>> singles{{0}, {1}, {2}};
  CHECK(check_protected_chain(chain, singles, tc));

  const std::vector<std::vector<NodeId>> broken{{0, 1}};
  CHECK_THROWS_AS(check_protected_chain(d, broken, t), InvalidArgument);

  const auto p = gen_partitioned({.m = 3, .t = 2});
  const auto tp = decide(p.d, {.no_early_exit = true});
  std::vector<std::vector<NodeId>> blocks;
  for (const auto& b : p.blocks) blocks.emplace_back(b.begin(), b.end());
  CHECK(check_protected_chain(p.d, blocks, tp));
}
