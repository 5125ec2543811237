#include "oma/io.hpp"

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "oma/error.hpp"

namespace oma {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, std::initializer_list<std::string_view> allowed, std::string_view where) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw InvalidArgument("unknown field '" + key + "' in " + std::string(where));
  }
}

void check_name(const std::string& name) {
  for (char c : name) {
    if (c == '.' || c == '"' || std::isspace(static_cast<unsigned char>(c))) {
      throw InvalidArgument("graph name '" + name + "' may not contain '.', '\"' or whitespace");
    }
  }
}

int as_int(const json& v, std::string_view what) {
  if (!v.is_number_integer()) throw InvalidArgument(std::string(what) + " must be an integer");
  const auto x = v.get<long long>();
  if (x < INT32_MIN || x > INT32_MAX) throw InvalidArgument(std::string(what) + " out of range");
  return static_cast<int>(x);
}

}  // namespace

Adversary parse_adversary(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw InvalidArgument("adversary document must be an object");
  reject_unknown(doc, {"n", "graphs"}, "adversary");
  if (!doc.contains("n")) throw InvalidArgument("missing field 'n'");
  if (!doc.contains("graphs") || !doc["graphs"].is_array()) {
    throw InvalidArgument("missing array field 'graphs'");
  }
  const int n = as_int(doc["n"], "n");
  if (n < 2 || n > kMaxProcesses) throw InvalidArgument("n must lie in 2..64");

  std::vector<CommunicationGraph> graphs;
  std::size_t index = 0;
  for (const auto& g : doc["graphs"]) {
    ++index;
    const std::string where = "graph " + std::to_string(index);
    if (!g.is_object()) throw InvalidArgument(where + " must be an object");
    reject_unknown(g, {"name", "edges"}, where);
    std::string name;
    if (g.contains("name")) {
      if (!g["name"].is_string()) throw InvalidArgument(where + ": name must be a string");
      name = g["name"].get<std::string>();
      check_name(name);
    }
    if (!g.contains("edges") || !g["edges"].is_array()) {
      throw InvalidArgument(where + ": missing array field 'edges'");
    }
    std::vector<Edge> edges;
    for (const auto& e : g["edges"]) {
      if (!e.is_array() || e.size() != 2) throw InvalidArgument(where + ": edges are [from, to] pairs");
      const int from = as_int(e[0], "edge endpoint");
      const int to = as_int(e[1], "edge endpoint");
      if (from < 1 || from > n || to < 1 || to > n) {
        throw InvalidArgument(where + ": edge [" + std::to_string(from) + "," + std::to_string(to) +
                              "] outside 1.." + std::to_string(n));
      }
      edges.emplace_back(from - 1, to - 1);
    }
    graphs.emplace_back(n, edges, name);
  }
  return Adversary(std::move(graphs));
}

Adversary load_adversary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_adversary(buf.str());
}

std::string dump_adversary(const Adversary& d) {
  std::ostringstream os;
  os << "{\n  \"n\": " << d.n() << ",\n  \"graphs\": [";
  for (std::size_t i = 0; i < d.size(); ++i) {
    os << (i == 0 ? "\n" : ",\n") << "    {\"name\": " << json(d[i].name()).dump() << ", \"edges\": [";
    const auto edges = d[i].edges();
    for (std::size_t k = 0; k < edges.size(); ++k) {
      os << (k == 0 ? "" : ", ") << "[" << edges[k].first + 1 << ", " << edges[k].second + 1 << "]";
    }
    os << "]}";
  }
  os << "\n  ]\n}\n";
  return os.str();
}

void save_adversary(const Adversary& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot write '" + path + "'");
  out << dump_adversary(d);
}

std::string to_dot(const IndistGraph& g, const std::vector<std::string>& node_names,
                   std::string_view graph_name) {
  if (node_names.size() != g.node_count()) throw InvalidArgument("to_dot: one name per node required");
  std::ostringstream os;
  os << "graph \"" << graph_name << "\" {\n";
  for (const auto& name : node_names) os << "  \"" << name << "\";\n";
  for (const auto& e : g.edges()) {
    os << "  \"" << node_names[e.u] << "\" -- \"" << node_names[e.v] << "\" [label=\""
       << e.label.to_string() << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace oma
