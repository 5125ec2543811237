// oma: decide consensus solvability under oblivious message adversaries.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "oma/decision.hpp"
#include "oma/error.hpp"
#include "oma/families.hpp"
#include "oma/io.hpp"
#include "oma/simulate.hpp"

namespace {

using namespace oma;
using Json = nlohmann::ordered_json;

enum Exit { kSolvable = 0, kImpossible = 1, kInputError = 2, kBudget = 3 };

constexpr std::size_t kWitnessListing = 20;

struct Common {
  std::string file;
  std::string format = "text";
  bool json() const { return format == "json"; }
};

void emit(const Common& c, const Json& j, const std::string& text) {
  if (c.json()) std::cout << j.dump(2) << "\n";
  else std::cout << text;
}

std::string names_of(const Adversary& d, const std::vector<NodeId>& nodes) {
  std::string out;
  for (NodeId v : nodes) out += (out.empty() ? "" : " ") + d[v].name();
  return out;
}

std::size_t largest_round_within(std::size_t graphs, std::uint64_t budget, std::size_t cap) {
  if (graphs <= 1) return cap;
  std::size_t r = 0;
  long double size = 1;
  while (r < cap && size * static_cast<long double>(graphs) <= static_cast<long double>(budget)) {
    size *= static_cast<long double>(graphs);
    ++r;
  }
  return r;
}

// --- decide ---------------------------------------------------------------------

struct DecideArgs {
  Common c;
  bool trace = false;
  bool no_early_exit = false;
  int dot_level = 0;
};

int cmd_decide(const DecideArgs& a) {
  const Adversary d = load_adversary(a.c.file);
  const RefinementTrace t = decide(d, {.no_early_exit = a.no_early_exit});
  Json j;
  std::ostringstream os;
  j["verdict"] = verdict_name(t.verdict);
  j["n"] = d.n();
  j["graphs"] = d.size();
  os << "verdict: " << verdict_name(t.verdict) << "\n"
     << "n: " << d.n() << "\n"
     << "graphs: " << d.size() << "\n";
  if (t.verdict == Verdict::not_rooted_input) {
    j["unrooted_graph"] = d[*t.unrooted_graph].name();
    os << "unrooted_graph: " << d[*t.unrooted_graph].name() << "\n";
    emit(a.c, j, os.str());
    return kImpossible;
  }

  j["td"] = t.td;
  j["removal_iterations"] = t.removal_iterations;
  j["fixpoint"] = t.fixpoint;
  j["c"] = t.component_count();
  os << "td: " << t.td << "\n"
     << "removal_iterations: " << t.removal_iterations << "\n"
     << "fixpoint: " << (t.fixpoint ? "yes" : "no") << "\n"
     << "c: " << t.component_count() << "\n";
  if (t.verdict == Verdict::solvable) {
    j["bound"] = consensus_round_bound(t, d.n());
    os << "bound: " << consensus_round_bound(t, d.n()) << "\n";
  }
  Json comps = Json::array();
  for (std::size_t k = 0; k < t.components_final.count(); ++k) {
    const auto& members = t.components_final.members[k];
    Json names = Json::array();
    ProcessSet common = ProcessSet::all(d.n());
    for (NodeId v : members) {
      names.push_back(d[v].name());
      common &= *d[v].root();
    }
    comps.push_back({{"graphs", names}, {"common_root", common.to_string()}});
    os << "component " << k + 1 << ": " << names_of(d, members) << "  common root " << common.to_string() << "\n";
  }
  j["components"] = comps;

  if (a.trace) {
    Json levels = Json::array();
    for (std::size_t k = 0; k < t.levels.size(); ++k) {
      Json removed = Json::array();
      os << "level " << k + 1 << ": " << t.levels[k].edge_count() << " edges";
      if (k > 0) os << ", removed " << t.removed[k].size();
      os << "\n";
      for (const auto& r : t.removed[k]) {
        const std::string guard = r.outside_guard ? d[*r.outside_guard].name() : "none";
        removed.push_back({{"u", d[r.edge.u].name()},
                           {"v", d[r.edge.v].name()},
                           {"label", r.edge.label.to_string()},
                           {"outside_guard", r.outside_guard ? Json(guard) : Json(nullptr)}});
        os << "  - " << d[r.edge.u].name() << " -- " << d[r.edge.v].name() << " " << r.edge.label.to_string()
           << "  guard only outside: " << guard << "\n";
      }
      levels.push_back({{"level", k + 1}, {"edges", t.levels[k].edge_count()}, {"removed", removed}});
    }
    j["trace"] = levels;
  }

  if (a.dot_level > 0) {
    std::vector<std::string> names;
    for (const auto& g : d.graphs()) names.push_back(g.name());
    const std::string dot =
        to_dot(t.level(a.dot_level), names, "N" + std::to_string(a.dot_level));
    j["dot"] = dot;
    os << dot;
  }
  emit(a.c, j, os.str());
  return t.verdict == Verdict::solvable ? kSolvable : kImpossible;
}

// --- oracle ---------------------------------------------------------------------

struct OracleArgs {
  Common c;
  long long rmax = -1;
  std::uint64_t budget = kDefaultPatternBudget;
};

constexpr std::size_t kImpossibleHorizonCap = 16;

int cmd_oracle(const OracleArgs& a) {
  const Adversary d = load_adversary(a.c.file);
  const RefinementTrace t = decide(d);
  const bool solvable = t.verdict == Verdict::solvable;
  const std::uint64_t bound = solvable ? consensus_round_bound(t, d.n()) : 0;
  const std::size_t rmax = a.rmax >= 0 ? static_cast<std::size_t>(a.rmax)
                           : solvable  ? bound
                                       : largest_round_within(d.size(), a.budget, kImpossibleHorizonCap);
  const OracleResult o = oracle_min_horizon(d, rmax, a.budget);

  std::string agreement;
  if (o.found) agreement = solvable && o.horizon <= bound ? "AGREES" : "DISAGREES";
  else if (solvable) agreement = rmax >= bound ? "DISAGREES" : "INCONCLUSIVE";
  else agreement = "AGREES";

  const std::string result =
      (o.found ? "MinHorizon(" : "NoneUpTo(") + std::to_string(o.horizon) + ")";
  Json j;
  j["oracle"] = result;
  j["found"] = o.found;
  j["horizon"] = o.horizon;
  j["decide"] = verdict_name(t.verdict);
  if (solvable) j["bound"] = bound;
  j["agreement"] = agreement;
  std::ostringstream os;
  os << "oracle: " << result << "\n"
     << "decide: " << verdict_name(t.verdict);
  if (solvable) os << " (bound " << bound << ")";
  os << "\nagreement: " << agreement << "\n";
  emit(a.c, j, os.str());
  return o.found ? kSolvable : kImpossible;
}

// --- verify / simulate ----------------------------------------------------------

Json witness_json(const Adversary& d, const NonBroadcastableComponent& w, std::ostringstream& os) {
  Json patterns = Json::array();
  os << "result: NO-RULE\n"
     << "witness: component of " << w.component().size()
     << " patterns in I(D^" << w.horizon() << ") without a common broadcaster\n";
  for (std::size_t k = 0; k < w.component().size() && k < kWitnessListing; ++k) {
    const auto& p = w.component()[k];
    const std::string b = broadcasters(d, p).to_string();
    patterns.push_back({{"pattern", pattern_name(d, p)}, {"broadcasters", b}});
    os << "  " << pattern_name(d, p) << "  broadcasters " << b << "\n";
  }
  if (w.component().size() > kWitnessListing) {
    os << "  ... " << w.component().size() - kWitnessListing << " more\n";
  }
  return {{"result", "NO-RULE"},
          {"horizon", w.horizon()},
          {"component_size", w.component().size()},
          {"patterns", patterns}};
}

struct VerifyArgs {
  Common c;
  long long horizon = -1;
  std::uint64_t budget = kDefaultPatternBudget;
};

int cmd_verify(const VerifyArgs& a) {
  const Adversary d = load_adversary(a.c.file);
  std::size_t horizon;
  if (a.horizon >= 0) {
    horizon = static_cast<std::size_t>(a.horizon);
  } else {
    const RefinementTrace t = decide(d);
    if (t.verdict == Verdict::solvable) {
      const auto bound = consensus_round_bound(t, d.n());
      const OracleResult o = oracle_min_horizon(d, bound, a.budget);
      horizon = o.found ? o.horizon : bound;
    } else {
      horizon = static_cast<std::size_t>(d.n() - 1);
    }
  }

  std::ostringstream os;
  os << "horizon: " << horizon << "\n";
  try {
    const ConsensusRule rule = build_rule(d, horizon, a.budget);
    const VerifyReport r = verify_canonical(rule, a.budget);
    Json j{{"horizon", horizon},
           {"components", rule.component_count()},
           {"runs", r.runs},
           {"agreement_violations", r.agreement_violations},
           {"validity_violations", r.validity_violations},
           {"termination_violations", r.termination_violations},
           {"indist_pair_violations", r.indist_pair_violations},
           {"result", r.total() == 0 ? "OK" : "VIOLATIONS"}};
    os << "components: " << rule.component_count() << "\n"
       << "runs: " << r.runs << "\n"
       << "agreement_violations: " << r.agreement_violations << "\n"
       << "validity_violations: " << r.validity_violations << "\n"
       << "termination_violations: " << r.termination_violations << "\n"
       << "indist_pair_violations: " << r.indist_pair_violations << "\n"
       << "result: " << (r.total() == 0 ? "OK" : "VIOLATIONS") << "\n";
    emit(a.c, j, os.str());
    return r.total() == 0 ? kSolvable : kImpossible;
  } catch (const NonBroadcastableComponent& w) {
    const Json j = witness_json(d, w, os);
    emit(a.c, j, os.str());
    return kImpossible;
  }
}

struct SimulateArgs {
  Common c;
  std::string pattern;
  std::vector<long long> inputs;
  std::uint64_t budget = kDefaultPatternBudget;
};

int cmd_simulate(const SimulateArgs& a) {
  const Adversary d = load_adversary(a.c.file);
  const Pattern sigma = parse_pattern(d, a.pattern);
  std::vector<Value> inputs(a.inputs.begin(), a.inputs.end());
  if (inputs.empty()) {
    for (int p = 1; p <= d.n(); ++p) inputs.push_back(p);
  }
  std::ostringstream os;
  os << "pattern: " << pattern_name(d, sigma) << "\n"
     << "horizon: " << sigma.length() << "\n";
  try {
    const ConsensusRule rule = build_rule(d, sigma.length(), a.budget);
    const RunReport r = run(rule, sigma, inputs);
    const std::string bcast = broadcasters(d, sigma).to_string();
    Json procs = Json::array();
    os << "broadcasters: " << bcast << "\n";
    for (Process p = 0; p < d.n(); ++p) {
      const auto& who = r.adopted[p];
      const std::string src = who ? "p" + std::to_string(*who + 1) : "-";
      procs.push_back({{"process", "p" + std::to_string(p + 1)},
                       {"input", inputs[p]},
                       {"adopts", who ? Json(src) : Json(nullptr)},
                       {"decides", r.decided[p] ? Json(*r.decided[p]) : Json(nullptr)}});
      os << "p" << p + 1 << "  input " << inputs[p] << "  adopts " << src << "  decides "
         << (r.decided[p] ? std::to_string(*r.decided[p]) : "-") << "\n";
    }
    auto flag = [](bool ok) { return ok ? "ok" : "VIOLATED"; };
    os << "agreement: " << flag(r.agreement) << "\n"
       << "validity: " << flag(r.validity) << "\n"
       << "termination: " << flag(r.termination) << "\n";
    Json j{{"pattern", pattern_name(d, sigma)},
           {"horizon", sigma.length()},
           {"broadcasters", bcast},
           {"processes", procs},
           {"agreement", r.agreement},
           {"validity", r.validity},
           {"termination", r.termination}};
    emit(a.c, j, os.str());
    return r.agreement && r.validity && r.termination ? kSolvable : kImpossible;
  } catch (const NonBroadcastableComponent& w) {
    const Json j = witness_json(d, w, os);
    emit(a.c, j, os.str());
    return kImpossible;
  }
}

// --- generate / export-dot --------------------------------------------------------

struct GenerateArgs {
  std::string family;
  std::string out;
  int n = 0;
  int length = 0;
  int path = 1;
  int m = 0;
  int t = 0;
  int clique = 1;
  int f = 1;
  int count = 3;
  std::optional<std::uint64_t> seed;
};

int cmd_generate(const GenerateArgs& a) {
  Adversary d = [&]() -> Adversary {
    if (a.family == "chain") {
      if (a.n > 0) return gen_chain(gen_paper_chain(a.n, a.length));
      return gen_chain(smallest_chain_spec(a.length));
    }
    if (a.family == "inflated") return gen_inflated(smallest_inflate_spec(a.length, a.path));
    if (a.family == "partitioned") return gen_partitioned({a.m, a.t, 0}).d;
    if (a.family == "random" && !a.seed) throw InvalidArgument("random requires --seed");
    CatalogParams p;
    p.n = a.n;
    p.clique = a.clique;
    p.f = a.f;
    p.count = a.count;
    p.seed = a.seed.value_or(0);
    return gen_catalog(a.family, p);
  }();
  const std::string doc = dump_adversary(d);
  if (a.out.empty() || a.out == "-") {
    std::cout << doc;
  } else {
    std::ofstream out(a.out, std::ios::binary);
    if (!out) throw InvalidArgument("cannot write '" + a.out + "'");
    out << doc;
  }
  return kSolvable;
}

struct DotArgs {
  Common c;
  int level = 0;
  int rounds = 0;
  std::uint64_t budget = kDefaultPatternBudget;
};

int cmd_export_dot(const DotArgs& a) {
  const Adversary d = load_adversary(a.c.file);
  if (a.rounds > 0) {
    const IndistGraph g = pattern_indist_graph(d, static_cast<std::size_t>(a.rounds), a.budget);
    std::vector<std::string> names;
    for (std::size_t i = 0; i < g.node_count(); ++i) {
      names.push_back(pattern_name(d, pattern_at(i, d.size(), static_cast<std::size_t>(a.rounds))));
    }
    std::cout << to_dot(g, names, "I(D^" + std::to_string(a.rounds) + ")");
    return kSolvable;
  }
  const int level = a.level > 0 ? a.level : 1;
  std::vector<std::string> names;
  for (const auto& g : d.graphs()) names.push_back(g.name());
  if (d.first_unrooted()) {
    if (level != 1) throw InvalidArgument("refinement levels need a rooted adversary");
    std::cout << to_dot(single_round_indist(d), names, "N1");
    return kSolvable;
  }
  const RefinementTrace t = decide(d, {.no_early_exit = true});
  std::cout << to_dot(t.level(level), names, "N" + std::to_string(level));
  return kSolvable;
}

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("file", c.file, "Adversary document (JSON)")->required();
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Consensus solvability under oblivious message adversaries"};
  app.require_subcommand(1);

  DecideArgs decide_args;
  auto* decide_cmd = app.add_subcommand("decide", "Run the refinement procedure");
  add_common(decide_cmd, decide_args.c);
  decide_cmd->add_flag("--trace", decide_args.trace, "Print removed edges per level");
  decide_cmd->add_flag("--no-early-exit", decide_args.no_early_exit, "Refine until the edge set is stable");
  decide_cmd->add_option("--dot-level", decide_args.dot_level, "Append DOT of refinement level K")
      ->check(CLI::PositiveNumber);

  OracleArgs oracle_args;
  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force smallest broadcastable horizon");
  add_common(oracle_cmd, oracle_args.c);
  oracle_cmd->add_option("--rmax", oracle_args.rmax, "Largest horizon to try")->check(CLI::NonNegativeNumber);
  oracle_cmd->add_option("--budget", oracle_args.budget, "Pattern budget");

  VerifyArgs verify_args;
  auto* verify_cmd = app.add_subcommand("verify", "Check every run of the synthesized decision rule");
  add_common(verify_cmd, verify_args.c);
  verify_cmd->add_option("--horizon", verify_args.horizon, "Decision round")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--budget", verify_args.budget, "Pattern budget");

  SimulateArgs sim_args;
  auto* sim_cmd = app.add_subcommand("simulate", "Run the decision rule on one pattern");
  add_common(sim_cmd, sim_args.c);
  sim_cmd->add_option("--pattern", sim_args.pattern, "Graph names joined by '.'")->required();
  sim_cmd->add_option("--inputs", sim_args.inputs, "One input per process")->delimiter(',');
  sim_cmd->add_option("--budget", sim_args.budget, "Pattern budget");

  GenerateArgs gen_args;
  auto* gen_cmd = app.add_subcommand("generate", "Write a generated adversary document");
  gen_cmd->add_option("family", gen_args.family, "Family")
      ->required()
      ->check(CLI::IsMember({"chain", "inflated", "partitioned", "rooted-trees", "source-broadcast",
                             "lossy-link", "random"}));
  gen_cmd->add_option("-o,--output", gen_args.out, "Output file (default stdout)");
  gen_cmd->add_option("--n", gen_args.n, "Process count (chain: paper layout, multiple of 12)");
  gen_cmd->add_option("--N", gen_args.length, "Chain length");
  gen_cmd->add_option("--path", gen_args.path, "Relay path length (inflated)");
  gen_cmd->add_option("--m", gen_args.m, "Root-set size (partitioned)");
  gen_cmd->add_option("--t", gen_args.t, "Block count (partitioned)");
  gen_cmd->add_option("--clique", gen_args.clique, "Clique size (source-broadcast)");
  gen_cmd->add_option("--f", gen_args.f, "Lost links per round (lossy-link)");
  gen_cmd->add_option("--count", gen_args.count, "Graph count (random)");
  gen_cmd->add_option("--seed", gen_args.seed, "Seed (random)");

  DotArgs dot_args;
  auto* dot_cmd = app.add_subcommand("export-dot", "Print a refinement level or I(D^r) as DOT");
  dot_cmd->add_option("file", dot_args.c.file, "Adversary document (JSON)")->required();
  auto* level_opt = dot_cmd->add_option("--level", dot_args.level, "Refinement level")->check(CLI::PositiveNumber);
  dot_cmd->add_option("--rounds", dot_args.rounds, "Pattern graph I(D^r)")
      ->check(CLI::PositiveNumber)
      ->excludes(level_opt);
  dot_cmd->add_option("--budget", dot_args.budget, "Pattern budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*decide_cmd) return cmd_decide(decide_args);
    if (*oracle_cmd) return cmd_oracle(oracle_args);
    if (*verify_cmd) return cmd_verify(verify_args);
    if (*sim_cmd) return cmd_simulate(sim_args);
    if (*gen_cmd) return cmd_generate(gen_args);
    if (*dot_cmd) return cmd_export_dot(dot_args);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
