#include "strucnet/network.hpp"

#include "strucnet/errors.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <string>

namespace strucnet {

namespace {

std::string node_name(int index_0based) { return "x" + std::to_string(index_0based + 1); }

void check_edges(const StructuredNetwork& net) {
  std::set<std::pair<int, int>> seen;
  for (auto [from, to] : net.state_edges) {
    if (from < 0 || from >= net.n || to < 0 || to >= net.n)
      throw ValidationError("state edge (" + std::to_string(from + 1) + "," +
                            std::to_string(to + 1) + ") out of range");
    if (from == to)
      throw ValidationError("self-loop on state node " + std::to_string(from + 1) +
                            ": first-order subsystems have no internal dynamics");
    if (!seen.insert({from, to}).second)
      throw ValidationError("duplicate state edge (" + std::to_string(from + 1) + "," +
                            std::to_string(to + 1) + ")");
  }
  seen.clear();
  for (auto [input, to] : net.input_edges) {
    if (input < 0 || input >= net.m || to < 0 || to >= net.n)
      throw ValidationError("input edge (" + std::to_string(input + 1) + "," +
                            std::to_string(to + 1) + ") out of range");
    if (!seen.insert({input, to}).second)
      throw ValidationError("duplicate input edge (" + std::to_string(input + 1) + "," +
                            std::to_string(to + 1) + ")");
  }
}

}  // namespace

void validate(const StructuredNetwork& net) {
  if (net.n < 1) throw ValidationError("network needs at least one state node");
  if (net.m < 1) throw ValidationError("network needs at least one input node");
  if (!net.labels.empty() && static_cast<int>(net.labels.size()) != net.n)
    throw ValidationError("labels must be empty or have one entry per state node");
  check_edges(net);
}

int ExtendedNetwork::total_order() const {
  int total = 0;
  for (int o : orders) total += o;
  return total;
}

std::vector<int> ExtendedNetwork::modified_subsystems() const {
  std::vector<int> mod;
  for (int i = 0; i < static_cast<int>(orders.size()); ++i)
    if (orders[i] > 1 || heterogeneous[i]) mod.push_back(i);
  return mod;
}

void validate(const ExtendedNetwork& net) {
  validate(net.base);
  if (static_cast<int>(net.orders.size()) != net.base.n ||
      static_cast<int>(net.heterogeneous.size()) != net.base.n)
    throw ValidationError("orders/heterogeneous must have one entry per subsystem");
  for (int o : net.orders)
    if (o < 1) throw ValidationError("subsystem orders must be >= 1");
}

ExtendedNetwork identity_extension(const StructuredNetwork& net) {
  ExtendedNetwork ext;
  ext.base = net;
  ext.orders.assign(net.n, 1);
  ext.heterogeneous.assign(net.n, 0);
  return ext;
}

// ---------------------------------------------------------------------------
// System graphs.
// ---------------------------------------------------------------------------

bool SystemGraph::has_state_edge(int from, int to) const {
  const auto& adj = state_adj[from];
  return std::binary_search(adj.begin(), adj.end(), to);
}

bool SystemGraph::has_input_edge(int input, int to) const {
  const auto& adj = input_adj[input];
  return std::binary_search(adj.begin(), adj.end(), to);
}

std::vector<int> SystemGraph::subsystem_offsets() const {
  int num_subsystems = 0;
  for (int s : subsystem_of) num_subsystems = std::max(num_subsystems, s + 1);
  std::vector<int> offsets(num_subsystems + 1, 0);
  for (int v = 0; v < num_states; ++v) offsets[subsystem_of[v] + 1]++;
  for (int i = 0; i < num_subsystems; ++i) offsets[i + 1] += offsets[i];
  return offsets;
}

SystemGraph system_graph(const StructuredNetwork& net) {
  validate(net);
  SystemGraph g;
  g.num_states = net.n;
  g.num_inputs = net.m;
  g.state_adj.assign(net.n, {});
  g.input_adj.assign(net.m, {});
  for (auto [from, to] : net.state_edges) g.state_adj[from].push_back(to);
  for (auto [input, to] : net.input_edges) g.input_adj[input].push_back(to);
  for (auto& adj : g.state_adj) std::sort(adj.begin(), adj.end());
  for (auto& adj : g.input_adj) std::sort(adj.begin(), adj.end());
  g.subsystem_of.resize(net.n);
  g.copy_index.assign(net.n, 1);
  g.subsystem_order.assign(net.n, 1);
  for (int v = 0; v < net.n; ++v) g.subsystem_of[v] = v;
  g.state_labels.resize(net.n);
  for (int v = 0; v < net.n; ++v)
    g.state_labels[v] = net.labels.empty() || net.labels[v].empty() ? node_name(v) : net.labels[v];
  g.input_labels.resize(net.m);
  for (int u = 0; u < net.m; ++u) g.input_labels[u] = "u" + std::to_string(u + 1);
  return g;
}

SystemGraph expanded_graph(const ExtendedNetwork& net) {
  validate(net);
  const int n = net.base.n;
  std::vector<int> offset(n + 1, 0);
  for (int i = 0; i < n; ++i) offset[i + 1] = offset[i] + net.orders[i];
  const int total = offset[n];

  SystemGraph g;
  g.num_states = total;
  g.num_inputs = net.base.m;
  g.state_adj.assign(total, {});
  g.input_adj.assign(net.base.m, {});
  g.subsystem_of.resize(total);
  g.copy_index.resize(total);
  g.subsystem_order.resize(total);
  g.state_labels.resize(total);
  for (int i = 0; i < n; ++i) {
    const std::string base_label =
        net.base.labels.empty() || net.base.labels[i].empty() ? node_name(i) : net.base.labels[i];
    for (int k = 0; k < net.orders[i]; ++k) {
      const int v = offset[i] + k;
      g.subsystem_of[v] = i;
      g.copy_index[v] = k + 1;
      g.subsystem_order[v] = net.orders[i];
      g.state_labels[v] =
          net.orders[i] == 1 ? base_label : base_label + "." + std::to_string(k + 1);
    }
  }
  g.input_labels.resize(net.base.m);
  for (int u = 0; u < net.base.m; ++u) g.input_labels[u] = "u" + std::to_string(u + 1);

  // Couplings become full bipartite products of copies: a free block in the
  // extended pattern has every entry generic.
  for (auto [from, to] : net.base.state_edges)
    for (int a = 0; a < net.orders[from]; ++a)
      for (int b = 0; b < net.orders[to]; ++b)
        g.state_adj[offset[from] + a].push_back(offset[to] + b);
  // Heterogeneous internal dynamics: every ordered copy pair, self-loops too.
  for (int i = 0; i < n; ++i) {
    if (!net.heterogeneous[i]) continue;
    for (int a = 0; a < net.orders[i]; ++a)
      for (int b = 0; b < net.orders[i]; ++b)
        g.state_adj[offset[i] + a].push_back(offset[i] + b);
  }
  // Input fan-out to every copy of the driven subsystem.
  for (auto [input, to] : net.base.input_edges)
    for (int b = 0; b < net.orders[to]; ++b) g.input_adj[input].push_back(offset[to] + b);

  for (auto& adj : g.state_adj) std::sort(adj.begin(), adj.end());
  for (auto& adj : g.input_adj) std::sort(adj.begin(), adj.end());
  return g;
}

// ---------------------------------------------------------------------------
// Graph algorithms.
// ---------------------------------------------------------------------------

std::vector<char> reachable_from_inputs(const SystemGraph& g) {
  std::vector<char> seen(g.num_states, 0);
  std::deque<int> queue;
  for (const auto& adj : g.input_adj)
    for (int v : adj)
      if (!seen[v]) {
        seen[v] = 1;
        queue.push_back(v);
      }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : g.state_adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
  }
  return seen;
}

std::vector<char> reachable_from_input(const SystemGraph& g, int input) {
  std::vector<char> seen(g.num_states, 0);
  std::deque<int> queue;
  for (int v : g.input_adj[input])
    if (!seen[v]) {
      seen[v] = 1;
      queue.push_back(v);
    }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : g.state_adj[v])
      if (!seen[w]) {
        seen[w] = 1;
        queue.push_back(w);
      }
  }
  return seen;
}

namespace {

struct TarjanState {
  const SystemGraph& g;
  std::vector<int> index, low, comp;
  std::vector<char> on_stack;
  std::vector<int> stack;
  int next_index = 0, next_comp = 0;

  explicit TarjanState(const SystemGraph& graph)
      : g(graph),
        index(graph.num_states, -1),
        low(graph.num_states, 0),
        comp(graph.num_states, -1),
        on_stack(graph.num_states, 0) {}

  // Iterative Tarjan to keep deep graphs off the call stack.
  void run(int root) {
    struct Frame {
      int v;
      std::size_t edge = 0;
    };
    std::vector<Frame> frames{{root}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!frames.empty()) {
      Frame& f = frames.back();
      if (f.edge < g.state_adj[f.v].size()) {
        const int w = g.state_adj[f.v][f.edge++];
        if (index[w] < 0) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = 1;
          frames.push_back({w});
        } else if (on_stack[w]) {
          low[f.v] = std::min(low[f.v], index[w]);
        }
      } else {
        if (low[f.v] == index[f.v]) {
          while (true) {
            const int w = stack.back();
            stack.pop_back();
            on_stack[w] = 0;
            comp[w] = next_comp;
            if (w == f.v) break;
          }
          ++next_comp;
        }
        const int v = f.v;
        frames.pop_back();
        if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
      }
    }
  }
};

}  // namespace

std::vector<int> state_sccs(const SystemGraph& g, int* num_components) {
  TarjanState t(g);
  for (int v = 0; v < g.num_states; ++v)
    if (t.index[v] < 0) t.run(v);
  if (num_components) *num_components = t.next_comp;
  return t.comp;
}

std::vector<char> nodes_on_cycles(const SystemGraph& g) {
  int num_comp = 0;
  const std::vector<int> comp = state_sccs(g, &num_comp);
  std::vector<int> comp_size(num_comp, 0);
  for (int v = 0; v < g.num_states; ++v) comp_size[comp[v]]++;
  std::vector<char> on(g.num_states, 0);
  for (int v = 0; v < g.num_states; ++v) {
    if (comp_size[comp[v]] >= 2) on[v] = 1;
    if (g.has_state_edge(v, v)) on[v] = 1;
  }
  return on;
}

bool is_acyclic(const SystemGraph& g) {
  const std::vector<char> on = nodes_on_cycles(g);
  return std::none_of(on.begin(), on.end(), [](char c) { return c != 0; });
}

std::vector<int> shortest_cycle_through(const SystemGraph& g, int v) {
  if (g.has_state_edge(v, v)) return {v};
  const std::vector<int> comp = state_sccs(g, nullptr);
  // BFS from v back to v inside its component; successors ascend, so the
  // first path found is the lexicographically least among shortest ones.
  std::vector<int> parent(g.num_states, -2);
  std::deque<int> queue;
  for (int w : g.state_adj[v]) {
    if (comp[w] != comp[v]) continue;
    if (w == v) return {v};
    if (parent[w] == -2) {
      parent[w] = -1;
      queue.push_back(w);
    }
  }
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (int w : g.state_adj[x]) {
      if (w == v) {
        std::vector<int> cycle{x};
        int cur = x;
        while (parent[cur] != -1) {
          cur = parent[cur];
          cycle.push_back(cur);
        }
        cycle.push_back(v);
        std::reverse(cycle.begin(), cycle.end());
        return cycle;  // starts at v
      }
      if (comp[w] != comp[v] || parent[w] != -2) continue;
      parent[w] = x;
      queue.push_back(w);
    }
  }
  return {};
}

MultiSourceBfs bfs_from_inputs(const SystemGraph& g) {
  MultiSourceBfs out;
  out.depth.assign(g.num_states, -1);
  out.parent.assign(g.num_states, -1);
  out.source_input.assign(g.num_states, -1);
  std::deque<int> queue;
  for (int u = 0; u < g.num_inputs; ++u)
    for (int v : g.input_adj[u])
      if (out.depth[v] < 0) {
        out.depth[v] = 0;
        out.source_input[v] = u;
        queue.push_back(v);
      }
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    for (int w : g.state_adj[v])
      if (out.depth[w] < 0) {
        out.depth[w] = out.depth[v] + 1;
        out.parent[w] = v;
        out.source_input[w] = out.source_input[v];
        queue.push_back(w);
      }
  }
  return out;
}

}  // namespace strucnet
