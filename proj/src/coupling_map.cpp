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

#include "qxmap/coupling_map.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <sstream>

namespace qxmap {

CouplingMap::CouplingMap(int m, std::vector<Edge> edges, std::string name)
    : m_(m), name_(std::move(name)), edges_(std::move(edges)) {
  if (m_ <= 0) throw CouplingMapError("coupling map needs at least one qubit");
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  directed_.setZero(m_, m_);
  neighbors_.assign(static_cast<std::size_t>(m_), {});
  for (const Edge& e : edges_) {
    if (e.control < 0 || e.control >= m_ || e.target < 0 || e.target >= m_)
      throw CouplingMapError("edge " + std::to_string(e.control) + " " + std::to_string(e.target) +
                             " out of range for m=" + std::to_string(m_));
    if (e.control == e.target) throw CouplingMapError("self-edge on qubit " + std::to_string(e.control));
    directed_(e.control, e.target) = 1;
  }
  for (int a = 0; a < m_; ++a)
    for (int b = 0; b < m_; ++b)
      if (adjacent(a, b)) neighbors_[static_cast<std::size_t>(a)].push_back(b);

  dist_.setConstant(m_, m_, -1);
  for (int s = 0; s < m_; ++s) {
    std::queue<int> frontier;
    dist_(s, s) = 0;
    frontier.push(s);
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop();
      for (int v : neighbors(u)) {
        if (dist_(s, v) < 0) {
          dist_(s, v) = dist_(s, u) + 1;
          frontier.push(v);
        }
      }
    }
  }
  if ((dist_.array() < 0).any()) throw CouplingMapError("coupling map is not connected");

  // An edge u->v lies on some shortest control..target path iff
  // dist(c,u) + 1 + dist(v,t) == dist(c,t); then moving the control to u and
  // the target to v leaves a native CX.
  cost_.setZero(m_, m_);
  for (int c = 0; c < m_; ++c) {
    for (int t = 0; t < m_; ++t) {
      if (c == t) continue;
      const int d = dist_(c, t);
      bool native = false;
      for (const Edge& e : edges_) {
        if (dist_(c, e.control) + 1 + dist_(e.target, t) == d) {
          native = true;
          break;
        }
      }
      cost_(c, t) = kSwapCost * (d - 1) + (native ? 0 : kFlipCost);
    }
  }
}

std::vector<int> CouplingMap::shortest_path(int a, int b) const {
  std::vector<int> path{a};
  int u = a;
  while (u != b) {
    for (int v : neighbors(u)) {
      if (dist_(v, b) == dist_(u, b) - 1) {
        u = v;
        break;
      }
    }
    path.push_back(u);
  }
  return path;
}

namespace {

struct Builtin {
  std::string_view name;
  int m;
  std::vector<Edge> edges;
};

const std::vector<Builtin>& builtins() {
  static const std::vector<Builtin> table = {
      {"qx2", 5, {{0, 1}, {0, 2}, {1, 2}, {3, 2}, {3, 4}, {4, 2}}},
      {"qx3",
       16,
       {{0, 1},  {1, 2},   {2, 3},   {3, 14},  {4, 3},   {4, 5},   {6, 7},
        {6, 11}, {7, 10},  {8, 7},   {9, 8},   {9, 10},  {11, 10}, {12, 11},
        {12, 5}, {12, 13}, {13, 4},  {13, 14}, {15, 14}, {15, 0}}},
      {"qx4", 5, {{1, 0}, {2, 0}, {2, 1}, {2, 4}, {3, 2}, {3, 4}}},
      {"qx5",
       16,
       {{1, 0},   {1, 2},   {2, 3},   {3, 14},  {3, 4},   {5, 4},   {6, 5},   {6, 7},
        {6, 11},  {7, 10},  {8, 7},   {9, 8},   {9, 10},  {11, 10}, {12, 11}, {12, 5},
        {12, 13}, {13, 4},  {13, 14}, {15, 14}, {15, 0},  {15, 2}}},
  };
  return table;
}

}  // namespace

CouplingMap builtin_architecture(std::string_view name) {
  for (const Builtin& b : builtins())
    if (b.name == name) return CouplingMap(b.m, b.edges, std::string(b.name));
  throw CouplingMapError("unknown architecture '" + std::string(name) + "'");
}

std::vector<std::string> builtin_architecture_names() {
  std::vector<std::string> names;
  for (const Builtin& b : builtins()) names.emplace_back(b.name);
  return names;
}

CouplingMap parse_coupling_map(std::string_view text, std::string name) {
  std::istringstream in{std::string(text)};
  std::string line;
  int m = -1;
  int lineno = 0;
  std::vector<Edge> edges;
  auto fail = [&](const std::string& what) {
    throw CouplingMapError("line " + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string first;
    if (!(fields >> first)) continue;
    if (m < 0) {
      if (first == "m") {
        if (!(fields >> m)) fail("expected qubit count after 'm'");
      } else if (first.rfind("m=", 0) == 0) {
        try {
          std::size_t used = 0;
          m = std::stoi(first.substr(2), &used);
          if (used != first.size() - 2) fail("malformed 'm=' line");
        } catch (const std::logic_error&) {
          fail("malformed 'm=' line");
        }
      } else {
        fail("expected 'm <count>' before any edge");
      }
      std::string rest;
      if (fields >> rest) fail("trailing text '" + rest + "'");
      if (m <= 0) fail("qubit count must be positive");
      continue;
    }
    Edge e;
    try {
      std::size_t used = 0;
      e.control = std::stoi(first, &used);
      if (used != first.size()) fail("malformed edge");
    } catch (const std::logic_error&) {
      fail("malformed edge");
    }
    std::string rest;
    if (!(fields >> e.target)) fail("edge needs control and target");
    if (fields >> rest) fail("trailing text '" + rest + "'");
    if (e.control < 0 || e.target < 0 || e.control >= m || e.target >= m)
      fail("edge " + std::to_string(e.control) + " " + std::to_string(e.target) + " out of range for m=" +
           std::to_string(m));
    if (e.control == e.target) fail("self-edge on qubit " + std::to_string(e.control));
    edges.push_back(e);
  }
  if (m < 0) throw CouplingMapError("missing 'm <count>' line");
  return CouplingMap(m, std::move(edges), std::move(name));
}

CouplingMap load_coupling_map(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CouplingMapError("cannot open coupling map '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_coupling_map(buffer.str(), path);
}

std::string to_text(const CouplingMap& map) {
  std::ostringstream out;
  out << "m " << map.size() << '\n';
  for (const Edge& e : map.edges()) out << e.control << ' ' << e.target << '\n';
  return out.str();
}

}  // namespace qxmap
