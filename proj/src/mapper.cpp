// Copyright 2026 The qxmap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qxmap/mapper.hpp"

#include <algorithm>
#include <climits>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>
#include <unordered_map>

namespace qxmap {

// ---------------------------------------------------------------------------
// Mapping

Mapping::Mapping(int n, int m)
    : l2p_(static_cast<std::size_t>(n), kUnmapped), p2l_(static_cast<std::size_t>(m), kUnmapped) {
  if (n < 0 || m < 0) throw MappingError("negative qubit count");
}

Mapping Mapping::from_vector(const std::vector<int>& l2p, int m) {
  Mapping out(static_cast<int>(l2p.size()), m);
  for (std::size_t q = 0; q < l2p.size(); ++q)
    if (l2p[q] != kUnmapped) out.assign(static_cast<int>(q), l2p[q]);
  return out;
}

Mapping Mapping::identity(int n, int m) {
  Mapping out(n, m);
  for (int q = 0; q < n; ++q) out.assign(q, q);
  return out;
}

bool Mapping::is_total() const {
  return std::none_of(l2p_.begin(), l2p_.end(), [](int p) { return p == kUnmapped; });
}

void Mapping::assign(int q, int p) {
  if (q < 0 || q >= logical_count()) throw MappingError("logical qubit " + std::to_string(q) + " out of range");
  if (p < 0 || p >= physical_count()) throw MappingError("physical qubit " + std::to_string(p) + " out of range");
  if (is_mapped(q)) throw MappingError("logical qubit q" + std::to_string(q) + " is already mapped");
  if (!is_free(p)) throw MappingError("physical qubit Q" + std::to_string(p) + " is already occupied");
  l2p_[static_cast<std::size_t>(q)] = p;
  p2l_[static_cast<std::size_t>(p)] = q;
}

void Mapping::swap_physical(int a, int b) {
  const int qa = logical(a);
  const int qb = logical(b);
  p2l_[static_cast<std::size_t>(a)] = qb;
  p2l_[static_cast<std::size_t>(b)] = qa;
  if (qa != kUnmapped) l2p_[static_cast<std::size_t>(qa)] = b;
  if (qb != kUnmapped) l2p_[static_cast<std::size_t>(qb)] = a;
}

std::string to_string(const Mapping& mapping) {
  std::ostringstream out;
  bool first = true;
  for (int q = 0; q < mapping.logical_count(); ++q) {
    if (!mapping.is_mapped(q)) continue;
    if (!first) out << ' ';
    out << 'q' << q << "->Q" << mapping.physical(q);
    first = false;
  }
  return out.str();
}

std::size_t PermutationLayer::swap_count() const {
  std::size_t total = 0;
  for (const SwapStep& s : steps) total += s.size();
  return total;
}

void PermutationLayer::apply(Mapping& mapping) const {
  for (const SwapStep& step : steps)
    for (const Swap& s : step) mapping.swap_physical(s.a, s.b);
}

std::vector<CnotPair> layer_cnots(const Circuit& circuit, const Layer& layer) {
  std::vector<CnotPair> out;
  for (std::size_t i : layer.gates) {
    const Gate& g = circuit.gates[i];
    if (g.is_cx()) out.push_back({g.control(), g.target()});
  }
  return out;
}

std::string to_string(Strategy strategy) {
  switch (strategy) {
    case Strategy::Baseline:
      return "baseline";
    case Strategy::LookAhead:
      return "lookahead";
    case Strategy::Full:
      return "full";
  }
  return "?";
}

Strategy parse_strategy(const std::string& name) {
  if (name == "baseline") return Strategy::Baseline;
  if (name == "lookahead") return Strategy::LookAhead;
  if (name == "full") return Strategy::Full;
  throw std::invalid_argument("unknown strategy '" + name + "'");
}

// ---------------------------------------------------------------------------
// Expansion

namespace {

void distinct_sets(const std::vector<Swap>& candidates, std::size_t i, std::uint64_t used, SwapStep& chosen,
                   std::vector<SwapStep>& out) {
  if (i == candidates.size()) {
    if (!chosen.empty()) out.push_back(chosen);
    return;
  }
  const Swap& s = candidates[i];
  const std::uint64_t bits = (std::uint64_t{1} << s.a) | (std::uint64_t{1} << s.b);
  if ((used & bits) == 0) {
    chosen.push_back(s);
    distinct_sets(candidates, i + 1, used | bits, chosen, out);
    chosen.pop_back();
  }
  distinct_sets(candidates, i + 1, used, chosen, out);
}

void per_qubit_sets(const std::vector<int>& active, const CouplingMap& map, std::size_t i, std::uint64_t used,
                    SwapStep& chosen, std::vector<SwapStep>& out) {
  if (i == active.size()) {
    if (!chosen.empty()) out.push_back(chosen);
    return;
  }
  per_qubit_sets(active, map, i + 1, used, chosen, out);
  const int p = active[i];
  for (int v : map.neighbors(p)) {
    const std::uint64_t bits = (std::uint64_t{1} << p) | (std::uint64_t{1} << v);
    if (used & bits) continue;
    chosen.push_back(Swap::of(p, v));
    per_qubit_sets(active, map, i + 1, used | bits, chosen, out);
    chosen.pop_back();
  }
}

void require_small(const CouplingMap& map) {
  if (map.size() > 64) throw MappingError("search supports at most 64 physical qubits");
}

}  // namespace

std::vector<SwapStep> swap_sets(const std::vector<int>& active, const CouplingMap& map, ExpansionMode mode) {
  require_small(map);
  std::vector<SwapStep> out;
  SwapStep chosen;
  if (mode == ExpansionMode::PerQubit) {
    per_qubit_sets(active, map, 0, 0, chosen, out);
    return out;
  }
  std::vector<Swap> candidates;
  for (const Edge& e : map.edges()) {
    const bool touches = std::find(active.begin(), active.end(), e.control) != active.end() ||
                         std::find(active.begin(), active.end(), e.target) != active.end();
    if (touches) candidates.push_back(Swap::of(e.control, e.target));
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  distinct_sets(candidates, 0, 0, chosen, out);
  return out;
}

std::vector<SearchNode> expand(const SearchNode& node, const std::vector<int>& active, const CouplingMap& map,
                               ExpansionMode mode) {
  std::vector<SearchNode> out;
  for (SwapStep& step : swap_sets(active, map, mode)) {
    SearchNode child{node.mapping, node.g + kSwapCost * static_cast<int>(step.size()), 0, node.steps};
    for (const Swap& s : step) child.mapping.swap_physical(s.a, s.b);
    child.steps.push_back(std::move(step));
    out.push_back(std::move(child));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Heuristics

int pair_cost(const Mapping& mapping, CnotPair cx, const CouplingMap& map) {
  const int c = mapping.physical(cx.control);
  const int t = mapping.physical(cx.target);
  if (c != kUnmapped && t != kUnmapped) return map.cnot_cost(c, t);
  if (c == kUnmapped && t == kUnmapped) return 0;
  int best = INT_MAX;
  for (int p = 0; p < map.size(); ++p) {
    if (!mapping.is_free(p)) continue;
    best = std::min(best, c == kUnmapped ? map.cnot_cost(p, t) : map.cnot_cost(c, p));
  }
  return best == INT_MAX ? 0 : best;
}

int h_baseline(const Mapping& mapping, const std::vector<CnotPair>& layer, const CouplingMap& map) {
  int h = 0;
  for (const CnotPair& cx : layer) h = std::max(h, pair_cost(mapping, cx, map));
  return h;
}

int h_lookahead(const Mapping& mapping, const std::vector<CnotPair>& layer, const std::vector<CnotPair>& next,
                const CouplingMap& map) {
  int h = 0;
  for (const CnotPair& cx : layer) h += pair_cost(mapping, cx, map);
  for (const CnotPair& cx : next) h += pair_cost(mapping, cx, map);
  return h;
}

bool layer_satisfied(const Mapping& mapping, const std::vector<CnotPair>& layer, const CouplingMap& map) {
  return std::all_of(layer.begin(), layer.end(), [&](const CnotPair& cx) {
    return mapping.is_mapped(cx.control) && mapping.is_mapped(cx.target) &&
           map.adjacent(mapping.physical(cx.control), mapping.physical(cx.target));
  });
}

int reversed_count(const Mapping& mapping, const std::vector<CnotPair>& layer, const CouplingMap& map) {
  int r = 0;
  for (const CnotPair& cx : layer)
    if (!map.has_edge(mapping.physical(cx.control), mapping.physical(cx.target))) ++r;
  return r;
}

// ---------------------------------------------------------------------------
// A*

namespace {

/// Search over the positions of the logical qubits that matter for one layer.
/// Qubits outside the layer and its look-ahead window only show up through
/// the occupancy mask, which is part of the state whenever some tracked qubit
/// is still unmapped.
class LayerSearch {
 public:
  LayerSearch(const Mapping& start, const std::vector<CnotPair>& layer, const std::vector<CnotPair>& next,
              Strategy strategy, const CouplingMap& map, const SearchOptions& options)
      : start_(start), layer_(layer), strategy_(strategy), map_(map), options_(options) {
    require_small(map);
    auto track = [&](int q) {
      const auto it = std::find(tracked_.begin(), tracked_.end(), q);
      if (it != tracked_.end()) return static_cast<int>(it - tracked_.begin());
      tracked_.push_back(q);
      return static_cast<int>(tracked_.size()) - 1;
    };
    for (const CnotPair& cx : layer) {
      if (!start.is_mapped(cx.control) || !start.is_mapped(cx.target))
        throw MappingError("layer operand is unmapped at search start");
      current_.emplace_back(track(cx.control), track(cx.target));
    }
    active_count_ = tracked_.size();
    if (strategy != Strategy::Baseline)
      for (const CnotPair& cx : next) window_.emplace_back(track(cx.control), track(cx.target));
    for (int q : tracked_) keyed_on_occupancy_ |= !start.is_mapped(q);
  }

  LayerResult run() {
    State s;
    s.pos.reserve(tracked_.size());
    for (int q : tracked_) s.pos.push_back(static_cast<std::int8_t>(start_.physical(q)));
    for (int p = 0; p < map_.size(); ++p)
      if (!start_.is_free(p)) s.occ |= std::uint64_t{1} << p;
    push(s, -1, {}, 0, 0);

    std::size_t expanded = 0;
    while (!open_.empty()) {
      const Entry e = open_.top();
      open_.pop();
      const Node& node = nodes_[e.node];
      const State state = state_of(e.node);
      if (best_g_.at(key(state)) < node.g) continue;
      if (e.terminal) return finish(e.node, expanded);

      if (++expanded > options_.node_budget)
        throw SearchLimitError(SearchLimitError::Kind::NodeBudget,
                               "node budget of " + std::to_string(options_.node_budget) + " exhausted");
      if (options_.deadline && (expanded & 255) == 0 && std::chrono::steady_clock::now() > *options_.deadline)
        throw SearchLimitError(SearchLimitError::Kind::Deadline, "deadline passed during search");
      if (options_.on_expand) options_.on_expand(replay(e.node), node.g, e.h);

      std::vector<int> active;
      for (std::size_t k = 0; k < active_count_; ++k) active.push_back(state.pos[k]);
      const int g = node.g;
      const int steps = node.steps;
      for (const SwapStep& step : swap_sets(active, map_, options_.mode)) {
        State child = state;
        for (const Swap& sw : step) apply(child, sw);
        push(child, static_cast<int>(e.node), step, g + kSwapCost * static_cast<int>(step.size()), steps + 1);
      }
    }
    throw MappingError("search space exhausted without reaching a goal");
  }

 private:
  struct State {
    std::vector<std::int8_t> pos;
    std::uint64_t occ = 0;
  };
  struct Node {
    int parent;
    std::uint32_t swap_begin;
    std::uint32_t swap_count;
    int g;
    int steps;
  };
  struct Entry {
    int f;
    int h;
    int steps;
    bool terminal;
    std::uint64_t seq;
    std::uint32_t node;
  };
  struct Worse {
    bool operator()(const Entry& x, const Entry& y) const {
      if (x.f != y.f) return x.f > y.f;
      if (x.h != y.h) return x.h > y.h;
      if (x.steps != y.steps) return x.steps > y.steps;
      if (x.terminal != y.terminal) return !x.terminal;
      return x.seq > y.seq;
    }
  };

  static void apply(State& s, const Swap& sw) {
    for (std::int8_t& p : s.pos) {
      if (p == sw.a)
        p = static_cast<std::int8_t>(sw.b);
      else if (p == sw.b)
        p = static_cast<std::int8_t>(sw.a);
    }
    const std::uint64_t ba = (s.occ >> sw.a) & 1U;
    const std::uint64_t bb = (s.occ >> sw.b) & 1U;
    if (ba != bb) s.occ ^= (std::uint64_t{1} << sw.a) | (std::uint64_t{1} << sw.b);
  }

  int cost(const State& s, std::pair<int, int> cx) const {
    const int c = s.pos[static_cast<std::size_t>(cx.first)];
    const int t = s.pos[static_cast<std::size_t>(cx.second)];
    if (c >= 0 && t >= 0) return map_.cnot_cost(c, t);
    if (c < 0 && t < 0) return 0;
    int best = INT_MAX;
    for (int p = 0; p < map_.size(); ++p) {
      if ((s.occ >> p) & 1U) continue;
      best = std::min(best, c < 0 ? map_.cnot_cost(p, t) : map_.cnot_cost(c, p));
    }
    return best == INT_MAX ? 0 : best;
  }

  int heuristic(const State& s) const {
    int h = 0;
    if (strategy_ == Strategy::Baseline) {
      for (const auto& cx : current_) h = std::max(h, cost(s, cx));
      return h;
    }
    for (const auto& cx : current_) h += cost(s, cx);
    for (const auto& cx : window_) h += cost(s, cx);
    return h;
  }

  bool is_goal(const State& s) const {
    return std::all_of(current_.begin(), current_.end(), [&](const auto& cx) {
      return map_.distance(s.pos[static_cast<std::size_t>(cx.first)], s.pos[static_cast<std::size_t>(cx.second)]) == 1;
    });
  }

  int reversed(const State& s) const {
    int r = 0;
    for (const auto& cx : current_)
      if (!map_.has_edge(s.pos[static_cast<std::size_t>(cx.first)], s.pos[static_cast<std::size_t>(cx.second)])) ++r;
    return r;
  }

  std::string key(const State& s) const {
    std::string k(reinterpret_cast<const char*>(s.pos.data()), s.pos.size());
    if (keyed_on_occupancy_) k.append(reinterpret_cast<const char*>(&s.occ), sizeof s.occ);
    return k;
  }

  State state_of(std::uint32_t node) const {
    State s;
    s.pos.assign(pos_pool_.begin() + static_cast<std::ptrdiff_t>(node * tracked_.size()),
                 pos_pool_.begin() + static_cast<std::ptrdiff_t>((node + 1) * tracked_.size()));
    s.occ = occ_pool_[node];
    return s;
  }

  void push(const State& s, int parent, const SwapStep& step, int g, int steps) {
    auto [it, fresh] = best_g_.try_emplace(key(s), g);
    if (!fresh) {
      if (it->second <= g) return;
      it->second = g;
    }
    const auto id = static_cast<std::uint32_t>(nodes_.size());
    nodes_.push_back({parent, static_cast<std::uint32_t>(swap_pool_.size()), static_cast<std::uint32_t>(step.size()),
                      g, steps});
    swap_pool_.insert(swap_pool_.end(), step.begin(), step.end());
    pos_pool_.insert(pos_pool_.end(), s.pos.begin(), s.pos.end());
    occ_pool_.push_back(s.occ);

    const int h = heuristic(s);
    if (!is_goal(s)) {
      open_.push({g + h, h, steps, false, seq_++, id});
      return;
    }
    if (strategy_ == Strategy::Baseline) {
      const int r = reversed(s);
      open_.push({g + kFlipCost * r, kFlipCost * r, steps, true, seq_++, id});
      if (r > 0) open_.push({g + h, h, steps, false, seq_++, id});
    } else {
      open_.push({g + h, h, steps, true, seq_++, id});
    }
  }

  PermutationLayer path(std::uint32_t node) const {
    PermutationLayer pi;
    for (int n = static_cast<int>(node); n >= 0 && nodes_[static_cast<std::size_t>(n)].parent >= 0;
         n = nodes_[static_cast<std::size_t>(n)].parent) {
      const Node& x = nodes_[static_cast<std::size_t>(n)];
      pi.steps.emplace_back(swap_pool_.begin() + x.swap_begin, swap_pool_.begin() + x.swap_begin + x.swap_count);
    }
    std::reverse(pi.steps.begin(), pi.steps.end());
    return pi;
  }

  Mapping replay(std::uint32_t node) const {
    Mapping m = start_;
    path(node).apply(m);
    return m;
  }

  LayerResult finish(std::uint32_t node, std::size_t expanded) const {
    LayerResult out;
    out.pi = path(node);
    out.goal = start_;
    out.pi.apply(out.goal);
    out.swaps = static_cast<int>(out.pi.swap_count());
    out.reversed = reversed_count(out.goal, layer_, map_);
    out.cost = kSwapCost * out.swaps + kFlipCost * out.reversed;
    out.expanded = expanded;
    return out;
  }

  const Mapping& start_;
  const std::vector<CnotPair>& layer_;
  Strategy strategy_;
  const CouplingMap& map_;
  const SearchOptions& options_;

  std::vector<int> tracked_;
  std::size_t active_count_ = 0;
  std::vector<std::pair<int, int>> current_;
  std::vector<std::pair<int, int>> window_;
  bool keyed_on_occupancy_ = false;

  std::vector<Node> nodes_;
  std::vector<Swap> swap_pool_;
  std::vector<std::int8_t> pos_pool_;
  std::vector<std::uint64_t> occ_pool_;
  std::unordered_map<std::string, int> best_g_;
  std::priority_queue<Entry, std::vector<Entry>, Worse> open_;
  std::uint64_t seq_ = 0;
};

}  // namespace

LayerResult astar_layer(const Mapping& start, const std::vector<CnotPair>& layer, const std::vector<CnotPair>& next,
                        Strategy strategy, const CouplingMap& map, const SearchOptions& options) {
  if (start.physical_count() != map.size()) throw MappingError("mapping and coupling map sizes differ");
  if (layer.empty()) return LayerResult{start, {}, 0, 0, 0, 0};
  return LayerSearch(start, layer, next, strategy, map, options).run();
}

// ---------------------------------------------------------------------------
// Placement

Mapping complete_mapping(const Mapping& partial, const std::vector<CnotPair>& layer, const CouplingMap& map,
                         const std::vector<CnotPair>& next) {
  Mapping out = partial;
  const int m = map.size();
  auto layer_sum = [&](const Mapping& mapping) {
    int h = 0;
    for (const CnotPair& cx : layer) h += pair_cost(mapping, cx, map);
    return h;
  };
  for (const CnotPair& cx : layer) {
    const bool c_mapped = out.is_mapped(cx.control);
    const bool t_mapped = out.is_mapped(cx.target);
    if (c_mapped && t_mapped) continue;
    if (!c_mapped && !t_mapped) {
      int best = INT_MAX;
      std::pair<int, int> pick{-1, -1};
      for (int a = 0; a < m; ++a) {
        if (!out.is_free(a)) continue;
        for (int b = 0; b < m; ++b) {
          if (b == a || !out.is_free(b)) continue;
          Mapping trial = out;
          trial.assign(cx.control, a);
          trial.assign(cx.target, b);
          const int h = layer_sum(trial);
          if (h < best) {
            best = h;
            pick = {a, b};
          }
        }
      }
      if (pick.first < 0) throw UnmappableError("no free physical qubits left");
      out.assign(cx.control, pick.first);
      out.assign(cx.target, pick.second);
      continue;
    }
    int best = INT_MAX;
    int pick = -1;
    const int q = c_mapped ? cx.target : cx.control;
    for (int p = 0; p < m; ++p) {
      if (!out.is_free(p)) continue;
      Mapping trial = out;
      trial.assign(q, p);
      int c = pair_cost(trial, cx, map);
      for (const CnotPair& w : next)
        if (w.control == q || w.target == q) c += pair_cost(trial, w, map);
      if (c < best) {
        best = c;
        pick = p;
      }
    }
    if (pick < 0) throw UnmappableError("no free physical qubits left");
    out.assign(q, pick);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Whole circuits

std::size_t MappedPlan::expanded() const {
  std::size_t total = 0;
  for (const PlanStep& s : steps) total += s.expanded;
  return total;
}

std::size_t MappedPlan::swap_count() const {
  std::size_t total = 0;
  for (const PlanStep& s : steps) total += s.pi.swap_count();
  return total;
}

Mapping MappedPlan::final_mapping() const {
  Mapping m = initial;
  for (const PlanStep& s : steps) s.pi.apply(m);
  return m;
}

namespace {

std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x = 0;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

void shuffle(std::vector<int>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[bounded(rng, i)]);
}

void check_sizes(const Circuit& circuit, const CouplingMap& map) {
  circuit.validate();
  if (circuit.num_qubits > map.size())
    throw UnmappableError("circuit needs " + std::to_string(circuit.num_qubits) + " qubits but " + map.name() +
                          " has " + std::to_string(map.size()));
}

/// Marks barrier_before on the step that starts at each barrier.
void place_barriers(const Circuit& circuit, MappedPlan& plan) {
  for (std::size_t pos : circuit.barriers) {
    if (pos >= circuit.gates.size()) {
      plan.trailing_barrier = true;
      continue;
    }
    for (PlanStep& step : plan.steps) {
      if (std::find(step.gates.begin(), step.gates.end(), pos) != step.gates.end()) {
        step.barrier_before = true;
        break;
      }
    }
  }
}

}  // namespace

Mapping random_initial_mapping(const Circuit& circuit, const CouplingMap& map, std::uint64_t seed) {
  check_sizes(circuit, map);
  const int n = circuit.num_qubits;
  const int m = map.size();
  std::vector<CnotPair> first;
  for (const Layer& layer : partition_layers(circuit)) {
    first = layer_cnots(circuit, layer);
    if (!first.empty()) break;
  }

  std::mt19937_64 rng(seed);
  std::vector<int> slots(static_cast<std::size_t>(m));
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::iota(slots.begin(), slots.end(), 0);
    shuffle(slots, rng);
    const bool ok = std::all_of(first.begin(), first.end(), [&](const CnotPair& cx) {
      return map.has_edge(slots[static_cast<std::size_t>(cx.control)], slots[static_cast<std::size_t>(cx.target)]);
    });
    if (ok) return Mapping::from_vector(std::vector<int>(slots.begin(), slots.begin() + n), m);
  }

  Mapping out(n, m);
  for (const CnotPair& cx : first) {
    for (const Edge& e : map.edges()) {
      if (out.is_free(e.control) && out.is_free(e.target)) {
        out.assign(cx.control, e.control);
        out.assign(cx.target, e.target);
        break;
      }
    }
  }
  std::vector<int> free;
  for (int p = 0; p < m; ++p)
    if (out.is_free(p)) free.push_back(p);
  shuffle(free, rng);
  std::size_t next = 0;
  for (int q = 0; q < n; ++q)
    if (!out.is_mapped(q)) out.assign(q, free[next++]);
  return out;
}

MappedPlan map_circuit(const Circuit& circuit, const CouplingMap& map, Strategy strategy, const MapOptions& options) {
  check_sizes(circuit, map);
  const int n = circuit.num_qubits;
  const int m = map.size();

  SearchOptions search = options.search;
  if (options.timeout) {
    const auto deadline = std::chrono::steady_clock::now() +
                          std::chrono::duration_cast<std::chrono::steady_clock::duration>(*options.timeout);
    search.deadline = search.deadline ? std::min(*search.deadline, deadline) : deadline;
  }

  const std::vector<Layer> layers = partition_layers(circuit);
  std::vector<std::vector<CnotPair>> cnots;
  for (const Layer& layer : layers) cnots.push_back(layer_cnots(circuit, layer));

  MappedPlan plan;
  plan.strategy = strategy;
  Mapping current(n, m);
  if (strategy != Strategy::Full) {
    if (options.initial) {
      if (options.initial->logical_count() != n || options.initial->physical_count() != m ||
          !options.initial->is_total())
        throw MappingError("initial mapping must place all " + std::to_string(n) + " qubits on " +
                           std::to_string(m) + " physical qubits");
      current = *options.initial;
    } else {
      current = random_initial_mapping(circuit, map, options.seed);
    }
    plan.initial = current;
  }

  // origin[p]: the physical qubit at which the content now at p started.
  std::vector<int> origin(static_cast<std::size_t>(m));
  std::iota(origin.begin(), origin.end(), 0);
  std::vector<int> initial_slot(static_cast<std::size_t>(n), kUnmapped);

  for (std::size_t i = 0; i < layers.size(); ++i) {
    PlanStep step;
    step.gates = layers[i].gates;
    if (!cnots[i].empty()) {
      std::vector<CnotPair> next;
      int seen = 0;
      for (std::size_t j = i + 1; j < layers.size() && seen < search.window; ++j) {
        if (cnots[j].empty()) continue;
        next.insert(next.end(), cnots[j].begin(), cnots[j].end());
        ++seen;
      }
      if (strategy == Strategy::Full) {
        const Mapping placed = complete_mapping(current, cnots[i], map, next);
        for (int q = 0; q < n; ++q)
          if (!current.is_mapped(q) && placed.is_mapped(q))
            initial_slot[static_cast<std::size_t>(q)] = origin[static_cast<std::size_t>(placed.physical(q))];
        current = placed;
      }
      LayerResult result = astar_layer(current, cnots[i], strategy == Strategy::Baseline ? std::vector<CnotPair>{} : next,
                                       strategy, map, search);
      for (const SwapStep& s : result.pi.steps)
        for (const Swap& sw : s) std::swap(origin[static_cast<std::size_t>(sw.a)], origin[static_cast<std::size_t>(sw.b)]);
      current = std::move(result.goal);
      step.pi = std::move(result.pi);
      step.expanded = result.expanded;
    }
    plan.steps.push_back(std::move(step));
  }

  if (strategy == Strategy::Full) {
    for (int q = 0; q < n; ++q) {
      if (current.is_mapped(q)) continue;
      for (int p = 0; p < m; ++p) {
        if (current.is_free(p)) {
          current.assign(q, p);
          initial_slot[static_cast<std::size_t>(q)] = origin[static_cast<std::size_t>(p)];
          break;
        }
      }
    }
    plan.initial = Mapping::from_vector(initial_slot, m);
  }
  place_barriers(circuit, plan);
  return plan;
}

MappedPlan sequential_plan(const Circuit& circuit, const CouplingMap& map, const Mapping& initial,
                           const std::map<std::size_t, std::vector<Swap>>& routes) {
  check_sizes(circuit, map);
  if (initial.logical_count() != circuit.num_qubits || initial.physical_count() != map.size() || !initial.is_total())
    throw MappingError("sequential plan needs a total initial mapping");

  MappedPlan plan;
  plan.initial = initial;
  Mapping current = initial;
  for (std::size_t i = 0; i < circuit.gates.size(); ++i) {
    PlanStep step;
    step.gates = {i};
    const Gate& g = circuit.gates[i];
    if (g.is_cx()) {
      auto apply = [&](Swap s) {
        if (!map.adjacent(s.a, s.b))
          throw MappingError("route for gate " + std::to_string(i) + " swaps non-adjacent Q" + std::to_string(s.a) +
                             ",Q" + std::to_string(s.b));
        current.swap_physical(s.a, s.b);
        step.pi.steps.push_back({s});
      };
      if (const auto route = routes.find(i); route != routes.end()) {
        for (const Swap& s : route->second) apply(Swap::of(s.a, s.b));
      } else {
        const std::vector<int> p = map.shortest_path(current.physical(g.control()), current.physical(g.target()));
        for (std::size_t k = 0; k + 2 < p.size(); ++k) apply(Swap::of(p[k], p[k + 1]));
      }
      if (!map.adjacent(current.physical(g.control()), current.physical(g.target())))
        throw MappingError("gate " + std::to_string(i) + " is not adjacent after its route");
    }
    plan.steps.push_back(std::move(step));
  }
  place_barriers(circuit, plan);
  return plan;
}

}  // namespace qxmap
