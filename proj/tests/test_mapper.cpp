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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <climits>
#include <map>
#include <queue>
#include <random>
#include <set>

#include "qxmap/mapper.hpp"

using namespace qxmap;

namespace {

const std::vector<CnotPair> kLayer0 = {{2, 3}, {1, 0}};
const std::vector<CnotPair> kLayer1 = {{1, 4}, {5, 3}};
const std::vector<CnotPair> kLayer2 = {{2, 3}};

Circuit five_cnot() {
  Circuit c;
  c.num_qubits = 6;
  c.gates = {Gate::cx(2, 3), Gate::cx(1, 0), Gate::cx(1, 4), Gate::cx(5, 3), Gate::cx(2, 3)};
  return c;
}

// q0..q3 on Q0..Q3, q4 on Q14, q5 on Q15.
Mapping worked_start() { return Mapping::from_vector({0, 1, 2, 3, 14, 15}, 16); }

// Dijkstra over all total mappings reachable by single SWAPs; the answer is
// the cheapest 7 * swaps + 4 * reversed over mappings satisfying the layer.
int layer_oracle(const Mapping& start, const std::vector<CnotPair>& layer, const CouplingMap& map) {
  std::map<std::vector<int>, int> dist;
  using Item = std::pair<int, std::vector<int>>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> open;
  dist[start.physical_to_logical()] = 0;
  open.emplace(0, start.physical_to_logical());
  int best = INT_MAX;
  while (!open.empty()) {
    auto [g, p2l] = open.top();
    open.pop();
    if (g > dist[p2l] || g >= best) continue;
    std::vector<int> l2p(static_cast<std::size_t>(start.logical_count()), kUnmapped);
    for (std::size_t p = 0; p < p2l.size(); ++p)
      if (p2l[p] != kUnmapped) l2p[static_cast<std::size_t>(p2l[p])] = static_cast<int>(p);
    bool ok = true;
    int flips = 0;
    for (const CnotPair& cx : layer) {
      const int c = l2p[static_cast<std::size_t>(cx.control)];
      const int t = l2p[static_cast<std::size_t>(cx.target)];
      ok = ok && map.adjacent(c, t);
      flips += map.has_edge(c, t) ? 0 : 1;
    }
    if (ok) best = std::min(best, g + kFlipCost * flips);
    for (const Edge& e : map.edges()) {
      std::vector<int> next = p2l;
      std::swap(next[static_cast<std::size_t>(e.control)], next[static_cast<std::size_t>(e.target)]);
      auto it = dist.find(next);
      if (it == dist.end() || g + kSwapCost < it->second) {
        dist[next] = g + kSwapCost;
        open.emplace(g + kSwapCost, std::move(next));
      }
    }
  }
  return best;
}

}  // namespace

TEST_CASE("Mapping bookkeeping") {
  Mapping m(3, 5);
  CHECK_FALSE(m.is_total());
  m.assign(0, 4);
  m.assign(2, 1);
  CHECK(m.physical(0) == 4);
  CHECK(m.logical(1) == 2);
  CHECK(m.is_free(0));
  CHECK_THROWS_AS(m.assign(0, 3), MappingError);
  CHECK_THROWS_AS(m.assign(1, 4), MappingError);
  m.swap_physical(4, 0);
  CHECK(m.physical(0) == 0);
  CHECK(m.is_free(4));
  CHECK(to_string(m) == "q0->Q0 q2->Q1");
  m.assign(1, 2);
  CHECK(m.is_total());
}

TEST_CASE("successor counts for the active set of the worked example") {
  const CouplingMap qx3 = builtin_architecture("qx3");
  const std::vector<int> active = {1, 3, 14, 15};
  CHECK(swap_sets(active, qx3, ExpansionMode::PerQubit).size() == 51);

  const auto sets = swap_sets(active, qx3, ExpansionMode::DistinctSets);
  CHECK(sets.size() == 38);
  std::set<SwapStep> unique(sets.begin(), sets.end());
  CHECK(unique.size() == sets.size());
  std::set<SwapStep> from_per_qubit;
  for (SwapStep s : swap_sets(active, qx3, ExpansionMode::PerQubit)) {
    std::sort(s.begin(), s.end());
    from_per_qubit.insert(s);
  }
  std::set<SwapStep> sorted_unique;
  for (SwapStep s : sets) {
    std::sort(s.begin(), s.end());
    sorted_unique.insert(s);
  }
  CHECK(from_per_qubit == sorted_unique);
  for (const SwapStep& s : sets) {
    std::set<int> touched;
    for (const Swap& sw : s) {
      CHECK(qx3.adjacent(sw.a, sw.b));
      CHECK(touched.insert(sw.a).second);
      CHECK(touched.insert(sw.b).second);
    }
  }

  const SearchNode root{worked_start(), 0, 0, {}};
  const auto children = expand(root, active, qx3);
  CHECK(children.size() == 38);
  for (const SearchNode& c : children) CHECK(c.g == kSwapCost * static_cast<int>(c.steps.back().size()));
}

TEST_CASE("heuristics on the worked example") {
  const CouplingMap qx3 = builtin_architecture("qx3");
  const Mapping start = worked_start();
  CHECK(pair_cost(start, {1, 4}, qx3) == 14);
  CHECK(pair_cost(start, {5, 3}, qx3) == 7);
  CHECK(h_baseline(start, kLayer1, qx3) == 14);
  CHECK(h_lookahead(start, kLayer1, kLayer2, qx3) == 21);
  CHECK_FALSE(layer_satisfied(start, kLayer1, qx3));
  CHECK(layer_satisfied(start, kLayer0, qx3));
  CHECK(reversed_count(start, kLayer0, qx3) == 1);
}

TEST_CASE("baseline layer search is optimal on the worked example") {
  const CouplingMap qx3 = builtin_architecture("qx3");
  const LayerResult r = astar_layer(worked_start(), kLayer1, {}, Strategy::Baseline, qx3);
  CHECK(r.cost == 14);
  CHECK(r.swaps == 2);
  CHECK(r.cost == h_baseline(worked_start(), kLayer1, qx3));
  CHECK(layer_satisfied(r.goal, kLayer1, qx3));
  CHECK(r.cost == kSwapCost * r.swaps + kFlipCost * r.reversed);
}

TEST_CASE("look-ahead layer search on the worked example") {
  const CouplingMap qx3 = builtin_architecture("qx3");
  const Mapping start = worked_start();

  // The two-SWAP solution drawn for the look-ahead strategy.
  Mapping drawn = start;
  drawn.swap_physical(0, 1);
  drawn.swap_physical(14, 15);
  CHECK(layer_satisfied(drawn, kLayer1, qx3));
  CHECK(2 * kSwapCost + h_lookahead(drawn, kLayer1, kLayer2, qx3) == 22);

  // A cheaper one the sum heuristic prefers.
  Mapping cheaper = start;
  cheaper.swap_physical(3, 14);
  cheaper.swap_physical(2, 3);
  CHECK(layer_satisfied(cheaper, kLayer1, qx3));
  CHECK(2 * kSwapCost + h_lookahead(cheaper, kLayer1, kLayer2, qx3) == 14);

  const LayerResult r = astar_layer(start, kLayer1, kLayer2, Strategy::LookAhead, qx3);
  CHECK(r.swaps == 2);
  CHECK(r.reversed == 0);
  CHECK(r.goal == cheaper);
}

TEST_CASE("complete_mapping") {
  const CouplingMap qx3 = builtin_architecture("qx3");
  const Mapping placed = complete_mapping(Mapping(6, 16), kLayer0, qx3);
  CHECK(h_lookahead(placed, kLayer0, {}, qx3) == 0);
  CHECK(to_string(placed) == "q0->Q3 q1->Q2 q2->Q0 q3->Q1");

  const Mapping full = worked_start();
  CHECK(complete_mapping(full, kLayer1, qx3) == full);

  // Control unmapped, target on Q2: every free qubit tried by hand.
  const CouplingMap qx2 = builtin_architecture("qx2");
  Mapping partial(2, 5);
  partial.assign(1, 2);
  const Mapping done = complete_mapping(partial, {{0, 1}}, qx2);
  int best = INT_MAX;
  int where = -1;
  for (int p = 0; p < 5; ++p) {
    if (p == 2) continue;
    if (qx2.cnot_cost(p, 2) < best) {
      best = qx2.cnot_cost(p, 2);
      where = p;
    }
  }
  CHECK(done.physical(0) == where);
  CHECK(done.physical(0) == 0);

  const CouplingMap pair(2, {{0, 1}});
  Mapping crowded(3, 2);
  crowded.assign(0, 0);
  crowded.assign(1, 1);
  CHECK_THROWS_AS(complete_mapping(crowded, {{0, 2}}, pair), UnmappableError);
}

TEST_CASE("baseline layer cost matches a Dijkstra oracle on five-qubit devices") {
  std::mt19937_64 rng(11);
  for (const char* name : {"qx2", "qx4"}) {
    const CouplingMap map = builtin_architecture(name);
    for (int trial = 0; trial < 40; ++trial) {
      std::vector<int> perm = {0, 1, 2, 3, 4};
      std::shuffle(perm.begin(), perm.end(), rng);
      const Mapping start = Mapping::from_vector(perm, 5);
      std::vector<int> qs = {0, 1, 2, 3, 4};
      std::shuffle(qs.begin(), qs.end(), rng);
      std::vector<CnotPair> layer = {{qs[0], qs[1]}};
      if (trial % 2) layer.push_back({qs[2], qs[3]});
      const LayerResult r = astar_layer(start, layer, {}, Strategy::Baseline, map);
      INFO(name << " trial " << trial);
      CHECK(r.cost == layer_oracle(start, layer, map));
      CHECK(layer_satisfied(r.goal, layer, map));
    }
  }
}

TEST_CASE("search limits") {
  const CouplingMap qx3 = builtin_architecture("qx3");
  // Q0 and Q8 are far apart on QX3.
  const Mapping far = Mapping::from_vector({0, 8}, 16);
  SearchOptions tight;
  tight.node_budget = 1;
  try {
    astar_layer(far, {{0, 1}}, {}, Strategy::Baseline, qx3, tight);
    FAIL("expected the node budget to run out");
  } catch (const SearchLimitError& e) {
    CHECK(e.kind() == SearchLimitError::Kind::NodeBudget);
  }
  SearchOptions late;
  late.deadline = std::chrono::steady_clock::now() - std::chrono::seconds(1);
  // Four far CX gates at once take more than 256 expansions.
  const Mapping spread = Mapping::from_vector({0, 8, 1, 9, 4, 12, 15, 6}, 16);
  try {
    astar_layer(spread, {{0, 1}, {2, 3}, {4, 5}, {6, 7}}, {}, Strategy::Baseline, qx3, late);
    FAIL("expected the deadline to pass");
  } catch (const SearchLimitError& e) {
    CHECK(e.kind() == SearchLimitError::Kind::Deadline);
  }
}

TEST_CASE("random initial mappings are seeded and layer-0 native") {
  const CouplingMap qx5 = builtin_architecture("qx5");
  const Circuit c = five_cnot();
  const Mapping a = random_initial_mapping(c, qx5, 3);
  CHECK(a == random_initial_mapping(c, qx5, 3));
  CHECK(a.is_total());
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Mapping m = random_initial_mapping(c, qx5, seed);
    CHECK(reversed_count(m, kLayer0, qx5) == 0);
    CHECK(layer_satisfied(m, kLayer0, qx5));
  }
}

TEST_CASE("map_circuit plans satisfy every layer") {
  const CouplingMap qx3 = builtin_architecture("qx3");
  const Circuit c = five_cnot();
  for (Strategy s : {Strategy::Baseline, Strategy::LookAhead, Strategy::Full}) {
    MapOptions options;
    options.seed = 5;
    const MappedPlan plan = map_circuit(c, qx3, s, options);
    CHECK(plan.initial.is_total());
    Mapping current = plan.initial;
    for (const PlanStep& step : plan.steps) {
      step.pi.apply(current);
      for (std::size_t i : step.gates)
        if (c.gates[i].is_cx()) CHECK(qx3.adjacent(current.physical(c.gates[i].q0), current.physical(c.gates[i].q1)));
    }
    CHECK(current == plan.final_mapping());
    const MappedPlan again = map_circuit(c, qx3, s, options);
    CHECK(again.initial == plan.initial);
    CHECK(again.swap_count() == plan.swap_count());
  }
}

TEST_CASE("given initial mappings are used as is") {
  const CouplingMap qx3 = builtin_architecture("qx3");
  MapOptions options;
  options.initial = worked_start();
  const MappedPlan plan = map_circuit(five_cnot(), qx3, Strategy::Baseline, options);
  CHECK(plan.initial == worked_start());
  CHECK(plan.swap_count() == 4);
}

TEST_CASE("too many logical qubits") {
  Circuit c;
  c.num_qubits = 6;
  c.gates = {Gate::cx(0, 5)};
  CHECK_THROWS_AS(map_circuit(c, builtin_architecture("qx2"), Strategy::Full), UnmappableError);
  CHECK_THROWS_AS(map_circuit(c, builtin_architecture("qx4"), Strategy::Baseline), UnmappableError);
}

TEST_CASE("strategy names") {
  CHECK(parse_strategy("lookahead") == Strategy::LookAhead);
  CHECK(to_string(Strategy::Full) == "full");
  CHECK_THROWS_AS(parse_strategy("greedy"), std::invalid_argument);
}
