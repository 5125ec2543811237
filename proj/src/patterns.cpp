#include "oma/patterns.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "oma/error.hpp"
#include "oma/kernels.hpp"

namespace oma {

namespace {

constexpr ViewId kEmpty = UINT32_MAX;

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= h >> 31;
  h *= 0xbf58476d1ce4e5b9ULL;
  return h;
}

void check_indices(const Adversary& d, const Pattern& sigma) {
  for (std::uint32_t g : sigma.rounds()) {
    if (g >= d.size()) {
      throw InvalidArgument("pattern refers to graph index " + std::to_string(g) +
                            " but the adversary has " + std::to_string(d.size()) + " graphs");
    }
  }
}

}  // namespace

Pattern Pattern::prefix(std::size_t r) const {
  if (r > rounds_.size()) throw InvalidArgument("prefix longer than pattern");
  return Pattern(std::vector<std::uint32_t>(rounds_.begin(), rounds_.begin() + static_cast<std::ptrdiff_t>(r)));
}

Pattern Pattern::extended(std::uint32_t graph) const {
  auto rounds = rounds_;
  rounds.push_back(graph);
  return Pattern(std::move(rounds));
}

Pattern remove_round(const Pattern& sigma, std::size_t r_prime) {
  if (r_prime < 1 || r_prime > sigma.length()) {
    throw InvalidArgument("remove_round: round " + std::to_string(r_prime) + " outside 1.." +
                          std::to_string(sigma.length()));
  }
  std::vector<std::uint32_t> rounds(sigma.rounds().begin(), sigma.rounds().end());
  rounds.erase(rounds.begin() + static_cast<std::ptrdiff_t>(r_prime - 1));
  return Pattern(std::move(rounds));
}

std::string pattern_name(const Adversary& d, const Pattern& sigma) {
  if (sigma.empty()) return "()";
  std::string out;
  for (std::size_t r = 1; r <= sigma.length(); ++r) {
    if (r > 1) out += '.';
    out += d[sigma.at(r)].name();
  }
  return out;
}

Pattern parse_pattern(const Adversary& d, std::string_view text) {
  if (text.empty() || text == "()") return Pattern{};
  std::vector<std::uint32_t> rounds;
  std::size_t start = 0;
  while (true) {
    const auto dot = text.find('.', start);
    const auto name = text.substr(start, dot == std::string_view::npos ? text.npos : dot - start);
    const auto idx = d.index_of(name);
    if (!idx) throw InvalidArgument("unknown graph name '" + std::string(name) + "' in pattern");
    rounds.push_back(static_cast<std::uint32_t>(*idx));
    if (dot == std::string_view::npos) break;
    start = dot + 1;
  }
  return Pattern(std::move(rounds));
}

std::uint64_t pattern_index(const Pattern& sigma, std::size_t graph_count) {
  std::uint64_t index = 0;
  for (std::uint32_t g : sigma.rounds()) index = index * graph_count + g;
  return index;
}

Pattern pattern_at(std::uint64_t index, std::size_t graph_count, std::size_t length) {
  std::vector<std::uint32_t> rounds(length);
  for (std::size_t k = length; k-- > 0;) {
    rounds[k] = static_cast<std::uint32_t>(index % graph_count);
    index /= graph_count;
  }
  return Pattern(std::move(rounds));
}

// --- ViewStore -------------------------------------------------------------

ViewStore::ViewStore(int n) : n_(n), slots_(1024, kEmpty) {
  for (Process p = 0; p < n; ++p) {
    offsets_.push_back(arena_.size());
    arena_.insert(arena_.end(), {static_cast<std::uint32_t>(p), 0U, 0U});
  }
}

std::uint64_t ViewStore::hash(Process p, std::uint32_t round,
                              std::span<const ViewId> children) const {
  std::uint64_t h = mix(static_cast<std::uint64_t>(p), round);
  for (ViewId c : children) h = mix(h, c);
  return h;
}

bool ViewStore::matches(ViewId id, Process p, std::uint32_t round,
                        std::span<const ViewId> children) const {
  const std::uint32_t* rec = arena_.data() + offsets_[id];
  if (rec[0] != static_cast<std::uint32_t>(p) || rec[1] != round || rec[2] != children.size()) {
    return false;
  }
  return std::equal(children.begin(), children.end(), rec + 3);
}

void ViewStore::grow() {
  std::vector<ViewId> slots(slots_.size() * 2, kEmpty);
  const std::size_t mask = slots.size() - 1;
  for (ViewId id : slots_) {
    if (id == kEmpty) continue;
    std::size_t i = hash(owner(id), round(id), children(id)) & mask;
    while (slots[i] != kEmpty) i = (i + 1) & mask;
    slots[i] = id;
  }
  slots_ = std::move(slots);
}

ViewId ViewStore::intern(Process p, std::uint32_t round, std::span<const ViewId> children) {
  if ((used_ + 1) * 2 > slots_.size()) grow();
  const std::size_t mask = slots_.size() - 1;
  std::size_t i = hash(p, round, children) & mask;
  while (slots_[i] != kEmpty) {
    if (matches(slots_[i], p, round, children)) return slots_[i];
    i = (i + 1) & mask;
  }
  if (offsets_.size() >= kEmpty) throw Error("view store exhausted");
  const auto id = static_cast<ViewId>(offsets_.size());
  offsets_.push_back(arena_.size());
  arena_.push_back(static_cast<std::uint32_t>(p));
  arena_.push_back(round);
  arena_.push_back(static_cast<std::uint32_t>(children.size()));
  arena_.insert(arena_.end(), children.begin(), children.end());
  slots_[i] = id;
  ++used_;
  return id;
}

void ViewStore::advance(std::span<const ViewId> current, const CommunicationGraph& g,
                        std::uint32_t next_round, std::span<ViewId> next) {
  for (Process p = 0; p < n_; ++p) {
    scratch_.clear();
    for (std::uint64_t bits = g.in(p).bits(); bits != 0; bits &= bits - 1) {
      scratch_.push_back(current[std::countr_zero(bits)]);
    }
    std::sort(scratch_.begin(), scratch_.end());
    next[p] = intern(p, next_round, scratch_);
  }
}

Process ViewStore::owner(ViewId id) const { return static_cast<Process>(arena_[offsets_[id]]); }

std::uint32_t ViewStore::round(ViewId id) const { return arena_[offsets_[id] + 1]; }

std::span<const ViewId> ViewStore::children(ViewId id) const {
  const std::size_t off = offsets_[id];
  return {arena_.data() + off + 3, arena_[off + 2]};
}

// --- single-pattern queries -----------------------------------------------

ViewTable views(const Adversary& d, const Pattern& sigma, ViewStore& store) {
  check_indices(d, sigma);
  if (store.n() != d.n()) throw InvalidArgument("view store built for a different n");
  ViewTable table(d.n(), sigma.length());
  for (Process p = 0; p < d.n(); ++p) table.row(0)[p] = static_cast<ViewId>(p);
  for (std::size_t r = 1; r <= sigma.length(); ++r) {
    store.advance(table.row(r - 1), d[sigma.at(r)], static_cast<std::uint32_t>(r), table.row(r));
  }
  return table;
}

ProcessSet indistinguishability_label(const Adversary& d, const Pattern& sigma,
                                      const Pattern& sigma_prime, ViewStore& store) {
  if (sigma.length() != sigma_prime.length()) {
    throw InvalidArgument("indistinguishability needs patterns of equal length");
  }
  const auto a = views(d, sigma, store);
  const auto b = views(d, sigma_prime, store);
  const std::size_t r = sigma.length();
  return ProcessSet(kernels::equal_mask(a.row(r), b.row(r)));
}

bool indistinguishable(const Adversary& d, const Pattern& sigma, const Pattern& sigma_prime,
                       Process p, ViewStore& store) {
  if (p < 0 || p >= d.n()) throw InvalidArgument("process out of range");
  return indistinguishability_label(d, sigma, sigma_prime, store).contains(p);
}

bool indistinguishable(const Adversary& d, const Pattern& sigma, const Pattern& sigma_prime,
                       Process p) {
  ViewStore store(d.n());
  return indistinguishable(d, sigma, sigma_prime, p, store);
}

bool heard_of(const Adversary& d, const Pattern& sigma, Process p, std::size_t r_from, Process q,
              std::size_t r_to) {
  check_indices(d, sigma);
  if (!(r_from < r_to && r_to <= sigma.length())) {
    throw InvalidArgument("heard_of requires 0 <= r_from < r_to <= length");
  }
  if (p < 0 || p >= d.n() || q < 0 || q >= d.n()) throw InvalidArgument("process out of range");
  ProcessSet influenced = ProcessSet::single(p);
  for (std::size_t r = r_from + 1; r <= r_to; ++r) {
    ProcessSet next;
    for (Process x : influenced.members()) next |= d[sigma.at(r)].out(x);
    influenced = next;
  }
  return influenced.contains(q);
}

namespace {

// reach[p] := processes influenced so far by p's round-0 state.
void advance_reach(std::span<const ProcessSet> reach, const CommunicationGraph& g,
                   std::span<ProcessSet> next) {
  for (std::size_t p = 0; p < reach.size(); ++p) {
    ProcessSet out;
    for (std::uint64_t bits = reach[p].bits(); bits != 0; bits &= bits - 1) {
      out |= g.out(std::countr_zero(bits));
    }
    next[p] = out;
  }
}

ProcessSet full_reachers(std::span<const ProcessSet> reach, int n) {
  ProcessSet out;
  const ProcessSet all = ProcessSet::all(n);
  for (std::size_t p = 0; p < reach.size(); ++p) {
    if (reach[p] == all) out.insert(static_cast<Process>(p));
  }
  return out;
}

}  // namespace

ProcessSet broadcasters(const Adversary& d, const Pattern& sigma) {
  check_indices(d, sigma);
  std::vector<ProcessSet> reach(d.n()), next(d.n());
  for (Process p = 0; p < d.n(); ++p) reach[p] = ProcessSet::single(p);
  for (std::uint32_t g : sigma.rounds()) {
    advance_reach(reach, d[g], next);
    std::swap(reach, next);
  }
  return full_reachers(reach, d.n());
}

// --- enumeration ------------------------------------------------------------

PatternSpace enumerate_patterns(const Adversary& d, std::size_t r, ViewStore& store,
                                std::uint64_t budget) {
  if (store.n() != d.n()) throw InvalidArgument("view store built for a different n");
  const long double total = std::pow(static_cast<long double>(d.size()), static_cast<long double>(r));
  if (total > static_cast<long double>(budget)) throw BudgetExceeded(r, total, budget);

  const auto count = static_cast<std::size_t>(total);
  const int n = d.n();
  PatternSpace space;
  space.rounds_ = r;
  space.graph_count_ = d.size();
  space.n_ = n;
  space.views_.resize(count * static_cast<std::size_t>(n));
  space.broadcasters_.resize(count);

  // Depth-first over the pattern tree; prefix work is shared between siblings.
  std::vector<ViewId> rows((r + 1) * static_cast<std::size_t>(n));
  std::vector<ProcessSet> reach((r + 1) * static_cast<std::size_t>(n));
  for (Process p = 0; p < n; ++p) {
    rows[p] = static_cast<ViewId>(p);
    reach[p] = ProcessSet::single(p);
  }
  auto row = [&](auto& v, std::size_t depth) {
    return std::span(v.data() + depth * n, static_cast<std::size_t>(n));
  };

  std::size_t next_index = 0;
  auto visit = [&](auto&& self, std::size_t depth) -> void {
    if (depth == r) {
      std::copy_n(row(rows, depth).begin(), n, space.views_.begin() + next_index * n);
      space.broadcasters_[next_index] = full_reachers(row(reach, depth), n);
      ++next_index;
      return;
    }
    for (std::uint32_t g = 0; g < d.size(); ++g) {
      store.advance(row(rows, depth), d[g], static_cast<std::uint32_t>(depth + 1),
                    row(rows, depth + 1));
      advance_reach(row(reach, depth), d[g], row(reach, depth + 1));
      self(self, depth + 1);
    }
  };
  visit(visit, 0);
  return space;
}

Components pattern_components(const PatternSpace& space) {
  // Link every pattern to the first pattern sharing one of its final views.
  std::vector<LabeledEdge> links;
  std::vector<std::pair<ViewId, NodeId>> first;
  first.reserve(space.size() * static_cast<std::size_t>(space.n()));
  for (NodeId i = 0; i < space.size(); ++i) {
    for (ViewId id : space.final_views(i)) first.emplace_back(id, i);
  }
  std::sort(first.begin(), first.end());
  for (std::size_t k = 1; k < first.size(); ++k) {
    if (first[k].first == first[k - 1].first) {
      links.push_back({first[k - 1].second, first[k].second, ProcessSet(1)});
    }
  }
  return connected_components(space.size(), links);
}

IndistGraph pattern_indist_graph(const PatternSpace& space) {
  std::vector<std::pair<ViewId, NodeId>> by_view;
  by_view.reserve(space.size() * static_cast<std::size_t>(space.n()));
  for (NodeId i = 0; i < space.size(); ++i) {
    for (ViewId id : space.final_views(i)) by_view.emplace_back(id, i);
  }
  std::sort(by_view.begin(), by_view.end());

  std::vector<LabeledEdge> edges;
  for (std::size_t lo = 0; lo < by_view.size();) {
    std::size_t hi = lo + 1;
    while (hi < by_view.size() && by_view[hi].first == by_view[lo].first) ++hi;
    if (hi - lo >= 2) {
      // The view belongs to exactly one process; find it from the first row.
      const NodeId first = by_view[lo].second;
      const auto row0 = space.final_views(first);
      const auto owner = static_cast<Process>(
          std::find(row0.begin(), row0.end(), by_view[lo].first) - row0.begin());
      for (std::size_t a = lo; a < hi; ++a) {
        for (std::size_t b = a + 1; b < hi; ++b) {
          const NodeId u = by_view[a].second;
          const NodeId v = by_view[b].second;
          const std::uint64_t label =
              kernels::equal_mask(space.final_views(u), space.final_views(v));
          // Emit each pair once, from the bucket of its smallest shared process.
          if (std::countr_zero(label) == owner) edges.push_back({u, v, ProcessSet(label)});
        }
      }
    }
    lo = hi;
  }
  return IndistGraph(space.size(), std::move(edges));
}

IndistGraph pattern_indist_graph(const Adversary& d, std::size_t r, std::uint64_t budget) {
  ViewStore store(d.n());
  return pattern_indist_graph(enumerate_patterns(d, r, store, budget));
}

}  // namespace oma
