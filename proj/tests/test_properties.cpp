#include <doctest.h>

#include "corpus.hpp"
#include "oma/families.hpp"
#include "properties.hpp"

namespace {

void require_clean(const props::Tally& t) {
  CHECK(t.checked > 0);
  for (const auto& v : t.violations) CHECK_MESSAGE(false, v);
  CHECK(t.violation_count() == 0);
}

}  // namespace

TEST_CASE("edge claims on the catalog at two rounds") {
  props::EdgeTallies all;
  for (const auto& e : corpus::catalog()) {
    const auto t = props::edge_properties(e.d, 2);
    all.ignoramus += t.ignoramus;
    all.remove_round += t.remove_round;
    all.inf_prop += t.inf_prop;
  }
  require_clean(all.ignoramus);
  require_clean(all.remove_round);
  require_clean(all.inf_prop);
}

TEST_CASE("edge claims on chains and inflated chains") {
  for (int N = 3; N <= 4; ++N) {
    const auto t = props::edge_properties(oma::gen_chain(oma::smallest_chain_spec(N)), 3);
    require_clean(t.ignoramus);
    require_clean(t.remove_round);
    require_clean(t.inf_prop);
  }
  const auto inflated = oma::gen_inflated(oma::smallest_inflate_spec(3, 2));
  const auto t = props::edge_properties(inflated, 3);
  require_clean(t.ignoramus);
  require_clean(t.inf_prop);
}

TEST_CASE("components stay connected across repetitions") {
  props::Tally t;
  for (const auto& e : corpus::catalog()) t += props::keep_connected(e.d, 3);
  t += props::keep_connected(oma::gen_chain(oma::smallest_chain_spec(4)), 3);
  t += props::keep_connected(oma::gen_partitioned({.m = 3, .t = 2}).d, 3);
  require_clean(t);
}

TEST_CASE("witnesses for every impossible catalog entry") {
  props::Tally t;
  std::size_t pairs = 0;
  for (const auto& e : corpus::catalog()) t += props::imposs_witnesses(e.d, 3, pairs);
  require_clean(t);
  CHECK(pairs > 0);
}

TEST_CASE("td bound and oracle equivalence on the catalog") {
  props::Tally td;
  for (const auto& e : corpus::catalog()) {
    td += props::td_bound(e.d);
    const auto r = props::oracle_equivalence(e.d);
    CAPTURE(e.label);
    CAPTURE(r.oracle);
    require_clean(r.tally);
  }
  require_clean(td);
}

TEST_CASE("tallies merge and cap stored messages") {
  props::Tally a;
  for (int i = 0; i < 30; ++i) a.fail("x");
  CHECK(a.violations.size() == 20);
  CHECK(a.violation_count() == 30);
  props::Tally b;
  b.checked = 4;
  b += a;
  CHECK(b.violation_count() == 30);
  CHECK(b.checked == 4);
  CHECK_FALSE(b.ok());
}
