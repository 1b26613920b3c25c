#include "strucnet/cover.hpp"

#include "strucnet/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>

namespace strucnet {

// ---------------------------------------------------------------------------
// Cover basics.
// ---------------------------------------------------------------------------

std::vector<int> PathCycleCover::covered_states() const {
  std::vector<int> nodes;
  for (const auto& s : stems) nodes.insert(nodes.end(), s.nodes.begin(), s.nodes.end());
  for (const auto& c : cycles) nodes.insert(nodes.end(), c.begin(), c.end());
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

CoverCheck check_cover(const SystemGraph& g, const PathCycleCover& cover) {
  CoverCheck out;
  auto fail = [&out](std::string msg) {
    out.valid = false;
    out.error = std::move(msg);
    return out;
  };

  for (const auto& stem : cover.stems) {
    if (stem.input < 0 || stem.input >= g.num_inputs) return fail("stem input out of range");
    if (stem.nodes.empty()) return fail("stem with no state nodes");
    std::set<int> distinct(stem.nodes.begin(), stem.nodes.end());
    if (distinct.size() != stem.nodes.size()) return fail("stem repeats a state node");
    for (int v : stem.nodes)
      if (v < 0 || v >= g.num_states) return fail("stem node out of range");
    if (!g.has_input_edge(stem.input, stem.nodes.front()))
      return fail("stem does not start at a successor of its input");
    for (std::size_t i = 0; i + 1 < stem.nodes.size(); ++i)
      if (!g.has_state_edge(stem.nodes[i], stem.nodes[i + 1]))
        return fail("stem uses a missing state edge");
  }
  for (const auto& cycle : cover.cycles) {
    if (cycle.empty()) return fail("empty cycle");
    std::set<int> distinct(cycle.begin(), cycle.end());
    if (distinct.size() != cycle.size()) return fail("cycle repeats a state node");
    for (int v : cycle)
      if (v < 0 || v >= g.num_states) return fail("cycle node out of range");
    for (std::size_t i = 0; i < cycle.size(); ++i)
      if (!g.has_state_edge(cycle[i], cycle[(i + 1) % cycle.size()]))
        return fail("cycle uses a missing state edge");
  }

  out.valid = true;
  // Disjointness: no state node in two paths, no input rooting two stems.
  std::set<int> used_states;
  std::set<int> used_inputs;
  out.vertex_disjoint = true;
  for (const auto& stem : cover.stems) {
    if (!used_inputs.insert(stem.input).second) out.vertex_disjoint = false;
    for (int v : stem.nodes)
      if (!used_states.insert(v).second) out.vertex_disjoint = false;
  }
  for (const auto& cycle : cover.cycles)
    for (int v : cycle)
      if (!used_states.insert(v).second) out.vertex_disjoint = false;
  out.covers_all_states = static_cast<int>(cover.covered_states().size()) == g.num_states;
  return out;
}

void canonicalize(PathCycleCover& cover) {
  for (auto& cycle : cover.cycles) {
    const auto min_it = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), min_it, cycle.end());
  }
  std::sort(cover.cycles.begin(), cover.cycles.end());
  std::sort(cover.stems.begin(), cover.stems.end(), [](const Stem& a, const Stem& b) {
    if (a.nodes.size() != b.nodes.size()) return a.nodes.size() > b.nodes.size();
    if (a.nodes != b.nodes) return a.nodes < b.nodes;
    return a.input < b.input;
  });
}

// ---------------------------------------------------------------------------
// Generic dimension via min-cost circulation.
//
// Build a circulation network: source S, sink T, one node per input, two
// nodes per state (in/out split with capacity 1 and cost -1 on the split
// arc). A unit of flow S -> input -> states -> T is a stem; a unit looping
// through state splits only is a cycle. Disjointness is exactly the unit
// capacities, and the minimum cost equals minus the maximum number of states
// covered by disjoint stems and cycles. Negative-cycle canceling on integer
// costs terminates in at most n rounds of Bellman-Ford.
// ---------------------------------------------------------------------------

namespace {

struct Circulation {
  struct Arc {
    int to = 0;
    int cap = 0;
    int cost = 0;
  };
  std::vector<Arc> arcs;                // paired: arcs[i]^arcs[i^1]
  std::vector<std::vector<int>> adj;    // node -> arc ids
  int num_nodes = 0;

  explicit Circulation(int nodes) : adj(nodes), num_nodes(nodes) {}

  int add(int from, int to, int cap, int cost) {
    const int id = static_cast<int>(arcs.size());
    arcs.push_back({to, cap, cost});
    arcs.push_back({from, 0, -cost});
    adj[from].push_back(id);
    adj[to].push_back(id + 1);
    return id;
  }

  // One Bellman-Ford sweep to find any residual negative cycle; cancels it.
  // Returns false when no negative cycle remains.
  bool cancel_one() {
    std::vector<long long> dist(num_nodes, 0);
    std::vector<int> pred_arc(num_nodes, -1);
    int touched = -1;
    for (int round = 0; round < num_nodes; ++round) {
      touched = -1;
      for (int id = 0; id < static_cast<int>(arcs.size()); ++id) {
        const Arc& a = arcs[id];
        if (a.cap <= 0) continue;
        const int from = arcs[id ^ 1].to;
        if (dist[from] + a.cost < dist[a.to]) {
          dist[a.to] = dist[from] + a.cost;
          pred_arc[a.to] = id;
          touched = a.to;
        }
      }
      if (touched < 0) return false;
    }
    // A relaxation happened in round num_nodes-1: walk predecessors until a
    // node repeats; that loop is a negative cycle.
    int v = touched;
    for (int i = 0; i < num_nodes; ++i) v = arcs[pred_arc[v] ^ 1].to;
    std::vector<int> cycle_arcs;
    int cur = v;
    do {
      const int id = pred_arc[cur];
      cycle_arcs.push_back(id);
      cur = arcs[id ^ 1].to;
    } while (cur != v);
    long long cycle_cost = 0;
    for (int id : cycle_arcs) cycle_cost += arcs[id].cost;
    if (cycle_cost >= 0) throw Error("internal: non-negative cycle extracted");
    int push = arcs[cycle_arcs.front()].cap;
    for (int id : cycle_arcs) push = std::min(push, arcs[id].cap);
    for (int id : cycle_arcs) {
      arcs[id].cap -= push;
      arcs[id ^ 1].cap += push;
    }
    return true;
  }
};

}  // namespace

GenericDimensionReport generic_dimension(const SystemGraph& g) {
  {
    const std::vector<char> reach = reachable_from_inputs(g);
    for (int v = 0; v < g.num_states; ++v)
      if (!reach[v])
        throw PreconditionError(
            "generic dimension is only defined for input-accessible systems; state node " +
            std::to_string(v + 1) + " is unreachable");
  }

  const int m = g.num_inputs;
  const int S = 0, T = 1;
  auto input_node = [&](int u) { return 2 + u; };
  auto state_in = [&](int v) { return 2 + m + 2 * v; };
  auto state_out = [&](int v) { return 2 + m + 2 * v + 1; };

  Circulation net(2 + m + 2 * g.num_states);
  net.add(T, S, m, 0);
  std::vector<int> source_arcs(m);
  for (int u = 0; u < m; ++u) source_arcs[u] = net.add(S, input_node(u), 1, 0);
  std::map<std::pair<int, int>, int> input_arc;  // (input, state) -> arc id
  for (int u = 0; u < m; ++u)
    for (int v : g.input_adj[u]) input_arc[{u, v}] = net.add(input_node(u), state_in(v), 1, 0);
  std::vector<int> split_arcs(g.num_states);
  for (int v = 0; v < g.num_states; ++v) split_arcs[v] = net.add(state_in(v), state_out(v), 1, -1);
  std::map<std::pair<int, int>, int> state_arc;  // (from, to) -> arc id
  for (int v = 0; v < g.num_states; ++v)
    for (int w : g.state_adj[v]) state_arc[{v, w}] = net.add(state_out(v), state_in(w), 1, 0);
  for (int v = 0; v < g.num_states; ++v) net.add(state_out(v), T, 1, 0);

  while (net.cancel_one()) {
  }

  auto arc_flow = [&net](int id) { return net.arcs[id ^ 1].cap; };  // reverse residual = flow

  GenericDimensionReport report;
  std::vector<char> covered(g.num_states, 0);
  for (int v = 0; v < g.num_states; ++v) covered[v] = arc_flow(split_arcs[v]) > 0 ? 1 : 0;
  report.d_c = static_cast<int>(std::count(covered.begin(), covered.end(), 1));

  // Successor of each covered state in the flow decomposition (or -1 at T).
  std::vector<int> succ(g.num_states, -1);
  for (auto& [edge, id] : state_arc)
    if (arc_flow(id) > 0) succ[edge.first] = edge.second;

  std::vector<char> visited(g.num_states, 0);
  for (int u = 0; u < m; ++u) {
    if (arc_flow(source_arcs[u]) == 0) continue;
    int head = -1;
    for (int v : g.input_adj[u])
      if (arc_flow(input_arc[{u, v}]) > 0) {
        head = v;
        break;
      }
    Stem stem;
    stem.input = u;
    for (int v = head; v >= 0; v = succ[v]) {
      stem.nodes.push_back(v);
      visited[v] = 1;
    }
    report.witness.stems.push_back(std::move(stem));
  }
  for (int v = 0; v < g.num_states; ++v) {
    if (!covered[v] || visited[v]) continue;
    std::vector<int> cycle;
    int cur = v;
    do {
      cycle.push_back(cur);
      visited[cur] = 1;
      cur = succ[cur];
    } while (cur != v);
    report.witness.cycles.push_back(std::move(cycle));
  }
  canonicalize(report.witness);
  report.structurally_controllable = report.d_c == g.num_states;
  return report;
}

PathCycleCover max_disjoint_stems(const SystemGraph& g) {
  if (!is_acyclic(g))
    throw PreconditionError("max_disjoint_stems requires an acyclic state graph");
  GenericDimensionReport report = generic_dimension(g);
  // No directed cycles exist, so the optimal circulation is stems only.
  if (!report.witness.cycles.empty())
    throw Error("internal: cycle decomposition in an acyclic graph");
  return report.witness;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration (oracle scale).
// ---------------------------------------------------------------------------

std::vector<Stem> all_stems(const SystemGraph& g) {
  std::vector<Stem> stems;
  std::vector<char> on_path(g.num_states, 0);
  std::vector<int> path;
  auto dfs = [&](auto&& self, int input, int v) -> void {
    on_path[v] = 1;
    path.push_back(v);
    stems.push_back({input, path});
    for (int w : g.state_adj[v])
      if (!on_path[w]) self(self, input, w);
    path.pop_back();
    on_path[v] = 0;
  };
  for (int u = 0; u < g.num_inputs; ++u)
    for (int v : g.input_adj[u]) dfs(dfs, u, v);
  return stems;
}

std::vector<std::vector<int>> all_cycles(const SystemGraph& g) {
  std::vector<std::vector<int>> cycles;
  std::vector<char> on_path(g.num_states, 0);
  std::vector<int> path;
  // Each elementary cycle is rooted at its smallest node: the DFS from root r
  // only visits nodes > r and records edges closing back to r.
  auto dfs = [&](auto&& self, int root, int v) -> void {
    on_path[v] = 1;
    path.push_back(v);
    for (int w : g.state_adj[v]) {
      if (w == root)
        cycles.push_back(path);
      else if (w > root && !on_path[w])
        self(self, root, w);
    }
    path.pop_back();
    on_path[v] = 0;
  };
  for (int r = 0; r < g.num_states; ++r) dfs(dfs, r, r);
  std::sort(cycles.begin(), cycles.end());
  return cycles;
}

namespace {

struct EnumPath {
  std::uint64_t mask = 0;  // covered states
  int input = -1;          // -1 for cycles
  int index = -1;          // into stems / cycles storage
  int size = 0;
};

struct Enumerator {
  const SystemGraph& g;
  std::vector<Stem> stems;
  std::vector<std::vector<int>> cycles;
  std::vector<EnumPath> paths;

  explicit Enumerator(const SystemGraph& graph) : g(graph) {
    stems = all_stems(g);
    cycles = all_cycles(g);
    for (int i = 0; i < static_cast<int>(stems.size()); ++i) {
      EnumPath p;
      p.input = stems[i].input;
      p.index = i;
      p.size = static_cast<int>(stems[i].nodes.size());
      for (int v : stems[i].nodes) p.mask |= std::uint64_t{1} << v;
      paths.push_back(p);
    }
    for (int i = 0; i < static_cast<int>(cycles.size()); ++i) {
      EnumPath p;
      p.index = i;
      p.size = static_cast<int>(cycles[i].size());
      for (int v : cycles[i]) p.mask |= std::uint64_t{1} << v;
      paths.push_back(p);
    }
  }

  PathCycleCover materialize(const std::vector<int>& chosen) const {
    PathCycleCover cover;
    for (int pi : chosen) {
      const EnumPath& p = paths[pi];
      if (p.input >= 0)
        cover.stems.push_back(stems[p.index]);
      else
        cover.cycles.push_back(cycles[p.index]);
    }
    canonicalize(cover);
    return cover;
  }
};

}  // namespace

void enumerate_covers(const SystemGraph& g, bool vertex_disjoint_only,
                      const std::function<bool(const PathCycleCover&)>& yield, int max_nodes) {
  if (g.num_states > max_nodes)
    throw SizeGuardError("enumerate_covers: " + std::to_string(g.num_states) +
                         " state nodes exceed the guard of " + std::to_string(max_nodes));
  if (g.num_inputs > 32)
    throw SizeGuardError("enumerate_covers: more than 32 inputs");
  Enumerator e(g);
  if (e.paths.empty()) return;  // nothing coverable: empty stream

  if (vertex_disjoint_only) {
    // Max coverage by disjoint paths, then every family attaining it.
    std::map<std::pair<std::uint64_t, std::uint32_t>, int> best;
    auto max_gain = [&](auto&& self, std::uint64_t used, std::uint32_t inputs) -> int {
      const auto key = std::make_pair(used, inputs);
      auto it = best.find(key);
      if (it != best.end()) return it->second;
      int value = 0;
      for (const EnumPath& p : e.paths) {
        if (p.mask & used) continue;
        if (p.input >= 0 && (inputs & (std::uint32_t{1} << p.input))) continue;
        value = std::max(value,
                         p.size + self(self, used | p.mask,
                                       p.input >= 0 ? inputs | (std::uint32_t{1} << p.input)
                                                    : inputs));
      }
      best[key] = value;
      return value;
    };
    const int target = max_gain(max_gain, 0, 0);
    if (target == 0) return;
    std::vector<int> chosen;
    bool stop = false;
    auto walk = [&](auto&& self, int from, std::uint64_t used, std::uint32_t inputs,
                    int need) -> void {
      if (stop) return;
      if (need == 0) {
        if (!yield(e.materialize(chosen))) stop = true;
        return;
      }
      for (int pi = from; pi < static_cast<int>(e.paths.size()) && !stop; ++pi) {
        const EnumPath& p = e.paths[pi];
        if (p.mask & used) continue;
        if (p.input >= 0 && (inputs & (std::uint32_t{1} << p.input))) continue;
        if (p.size > need) continue;
        const std::uint64_t used2 = used | p.mask;
        const std::uint32_t inputs2 =
            p.input >= 0 ? inputs | (std::uint32_t{1} << p.input) : inputs;
        if (p.size + max_gain(max_gain, used2, inputs2) < need) continue;
        chosen.push_back(pi);
        self(self, pi + 1, used2, inputs2, need - p.size);
        chosen.pop_back();
      }
    };
    walk(walk, 0, 0, 0, target);
    return;
  }

  // Irredundant covers of everything coverable; paths may intersect.
  std::uint64_t coverable = 0;
  for (const EnumPath& p : e.paths) coverable |= p.mask;
  std::set<std::pair<std::vector<int>, std::vector<std::vector<int>>>> emitted;
  std::vector<int> chosen;
  bool stop = false;
  auto irredundant = [&]() {
    for (std::size_t i = 0; i < chosen.size(); ++i) {
      std::uint64_t others = 0;
      for (std::size_t j = 0; j < chosen.size(); ++j)
        if (j != i) others |= e.paths[chosen[j]].mask;
      if ((e.paths[chosen[i]].mask & ~others) == 0) return false;
    }
    return true;
  };
  auto walk = [&](auto&& self, std::uint64_t covered) -> void {
    if (stop) return;
    if (covered == coverable) {
      if (!irredundant()) return;
      PathCycleCover cover = e.materialize(chosen);
      std::vector<int> stem_key;
      for (const auto& s : cover.stems) {
        stem_key.push_back(s.input);
        stem_key.insert(stem_key.end(), s.nodes.begin(), s.nodes.end());
        stem_key.push_back(-1);
      }
      if (emitted.insert({stem_key, cover.cycles}).second)
        if (!yield(cover)) stop = true;
      return;
    }
    int lowest = -1;
    for (int v = 0; v < g.num_states; ++v)
      if ((coverable & (std::uint64_t{1} << v)) && !(covered & (std::uint64_t{1} << v))) {
        lowest = v;
        break;
      }
    for (int pi = 0; pi < static_cast<int>(e.paths.size()) && !stop; ++pi) {
      const EnumPath& p = e.paths[pi];
      if (!(p.mask & (std::uint64_t{1} << lowest))) continue;
      bool already = false;
      for (int c : chosen)
        if (c == pi) already = true;
      if (already) continue;
      chosen.push_back(pi);
      self(self, covered | p.mask);
      chosen.pop_back();
    }
  };
  walk(walk, 0);
}

std::vector<PathCycleCover> enumerate_covers_vec(const SystemGraph& g, bool vertex_disjoint_only,
                                                 int max_nodes) {
  std::vector<PathCycleCover> covers;
  enumerate_covers(
      g, vertex_disjoint_only,
      [&covers](const PathCycleCover& c) {
        covers.push_back(c);
        return true;
      },
      max_nodes);
  return covers;
}

}  // namespace strucnet
