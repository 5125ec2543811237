#include "corpus.hpp"

#include "oma/families.hpp"

namespace corpus {

std::vector<Entry> catalog() {
  std::vector<Entry> out;
  auto add = [&](std::string family, oma::CatalogParams p, std::string tag) {
    out.push_back({family + " n=" + std::to_string(p.n) + tag, oma::gen_catalog(family, p)});
  };
  for (int n = 2; n <= 3; ++n) {
    add("rooted-trees", {.n = n}, "");
    for (int k = 1; k <= n; ++k) add("source-broadcast", {.n = n, .clique = k}, " k=" + std::to_string(k));
    for (int f = 0; f <= n * (n - 1); ++f) add("lossy-link", {.n = n, .f = f}, " f=" + std::to_string(f));
  }
  return out;
}

std::vector<Entry> random(int count) {
  std::vector<Entry> out;
  for (int s = 1; s <= count; ++s) {
    const int graphs = 1 + s % 3;
    out.push_back({"random n=3 count=" + std::to_string(graphs) + " seed=" + std::to_string(s),
                   oma::gen_catalog("random", {.n = 3, .count = graphs, .seed = static_cast<std::uint64_t>(s)})});
  }
  return out;
}

std::vector<Entry> all() {
  auto out = catalog();
  for (auto& e : random()) out.push_back(std::move(e));
  return out;
}

}  // namespace corpus
