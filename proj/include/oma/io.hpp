#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "oma/adversary.hpp"
#include "oma/indist.hpp"

namespace oma {

// Adversary documents:
//   {"n": 3, "graphs": [{"name": "Ga", "edges": [[1, 2], [2, 3]]}, ...]}
// Processes are 1-based. Self-loops may be listed or omitted. Unknown fields,
// names containing '.', '"' or whitespace, and malformed edges are rejected
// with InvalidArgument.
Adversary parse_adversary(std::string_view text);
Adversary load_adversary(const std::string& path);

// Canonical form: sorted edges without self-loops, two-space indentation.
std::string dump_adversary(const Adversary& d);
void save_adversary(const Adversary& d, const std::string& path);

// Undirected DOT with nodes and edges in index order; edge labels like {p1,p3}.
std::string to_dot(const IndistGraph& g, const std::vector<std::string>& node_names,
                   std::string_view graph_name);

}  // namespace oma
