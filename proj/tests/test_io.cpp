#include <doctest.h>

#include <filesystem>

#include "corpus.hpp"
#include "oma/decision.hpp"
#include "oma/error.hpp"
#include "oma/families.hpp"
#include "oma/io.hpp"

using namespace oma;

TEST_CASE("canonical document of the lossy link") {
  const auto d = gen_catalog("lossy-link", {.n = 2, .f = 1});
  CHECK(dump_adversary(d) ==
        "{\n"
        "  \"n\": 2,\n"
        "  \"graphs\": [\n"
        "    {\"name\": \"Ga\", \"edges\": [[1, 2]]},\n"
        "    {\"name\": \"Gb\", \"edges\": [[2, 1]]},\n"
        "    {\"name\": \"Gc\", \"edges\": [[1, 2], [2, 1]]}\n"
        "  ]\n"
        "}\n");
}

TEST_CASE("round trip through text") {
  for (const auto& e : corpus::all()) {
    const auto text = dump_adversary(e.d);
    const auto back = parse_adversary(text);
    CHECK(back == e.d);
    CHECK(dump_adversary(back) == text);
  }
}

TEST_CASE("round trip through a file") {
  const auto path = (std::filesystem::temp_directory_path() / "oma_io_roundtrip.json").string();
  const auto d = gen_chain(smallest_chain_spec(3));
  save_adversary(d, path);
  CHECK(load_adversary(path) == d);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_adversary(path), InvalidArgument);
}

TEST_CASE("optional names and self-loops") {
  const auto d = parse_adversary(R"({"n": 3, "graphs": [{"edges": [[1, 1], [1, 2], [2, 3]]}, {"edges": []}]})");
  CHECK(d[0].name() == "G1");
  CHECK(d[0].edges() == std::vector<Edge>{{0, 1}, {1, 2}});
  CHECK(d[1].name() == "G2");
  CHECK(decide(d).verdict == Verdict::not_rooted_input);
}

TEST_CASE("malformed documents are rejected") {
  const char* bad[] = {
      "",
      "[]",
      R"({"n": 2})",
      R"({"graphs": []})",
      R"({"n": 2, "graphs": []})",
      R"({"n": 1, "graphs": [{"edges": []}]})",
      R"({"n": 65, "graphs": [{"edges": []}]})",
      R"({"n": 2.5, "graphs": [{"edges": []}]})",
      R"({"n": "2", "graphs": [{"edges": []}]})",
      R"({"n": 2, "graphs": [{"edges": [[1, 3]]}]})",
      R"({"n": 2, "graphs": [{"edges": [[0, 1]]}]})",
      R"({"n": 2, "graphs": [{"edges": [[1]]}]})",
      R"({"n": 2, "graphs": [{"edges": [[1, 4294967298]]}]})",
      R"({"n": 2, "graphs": [{"name": "a.b", "edges": []}]})",
      R"({"n": 2, "graphs": [{"name": "a b", "edges": []}]})",
      R"({"n": 2, "graphs": [{"name": 3, "edges": []}]})",
      R"({"n": 2, "graphs": [{"edges": [], "weight": 1}]})",
      R"({"n": 2, "graphs": [{"edges": []}], "seed": 1})",
      R"({"n": 2, "graphs": [{"name": "A", "edges": []}, {"name": "A", "edges": [[1, 2]]}]})",
      R"({"n": 2, "graphs": [{"edges": [[1, 2]]}, {"edges": [[1, 2], [1, 1]]}]})",
      R"({"n": 2, "graphs": [{"edges": [[1, 2]]})",
  };
  for (const char* text : bad) {
    CAPTURE(text);
    CHECK_THROWS_AS(parse_adversary(text), InvalidArgument);
  }
}

TEST_CASE("dot export") {
  const auto d = gen_catalog("lossy-link", {.n = 2, .f = 1});
  const auto ig = single_round_indist(d);
  CHECK(to_dot(ig, {"Ga", "Gb", "Gc"}, "N1") ==
        "graph \"N1\" {\n"
        "  \"Ga\";\n"
        "  \"Gb\";\n"
        "  \"Gc\";\n"
        "  \"Ga\" -- \"Gc\" [label=\"{p2}\"];\n"
        "  \"Gb\" -- \"Gc\" [label=\"{p1}\"];\n"
        "}\n");
  CHECK_THROWS_AS(to_dot(ig, {"Ga"}, "N1"), InvalidArgument);
}
