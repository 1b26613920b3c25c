#include "strucnet/extend.hpp"

#include "strucnet/errors.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <string>

namespace strucnet {

namespace {

// Flat view of a cover: stems first, cycles after, in cover order.
struct PathView {
  const std::vector<int>* nodes;
  int input;  // -1 for cycles
};

std::vector<PathView> path_views(const PathCycleCover& cover) {
  std::vector<PathView> views;
  for (const auto& s : cover.stems) views.push_back({&s.nodes, s.input});
  for (const auto& c : cover.cycles) views.push_back({&c, -1});
  return views;
}

struct Rewrite {
  ExtendedNetwork ext;
  PathCycleCover expanded_cover;  // the cover threaded through its own copies
};

// Shared-node rewrite: a state node used by q >= 2 cover paths becomes an
// order-q homogeneous subsystem; path #k goes through the copy whose position
// matches k's rank among the sharing paths (ascending). Unshared nodes keep
// order 1. The rewritten cover is vertex-disjoint by construction and covers
// every copy, because every copy belongs to exactly one path.
Rewrite rewrite_shared_nodes(const StructuredNetwork& net, const PathCycleCover& cover) {
  const std::vector<PathView> views = path_views(cover);
  std::vector<std::vector<int>> sharing(net.n);  // node -> sorted path indices
  for (int k = 0; k < static_cast<int>(views.size()); ++k)
    for (int v : *views[k].nodes) sharing[v].push_back(k);

  Rewrite out;
  out.ext.base = net;
  out.ext.orders.assign(net.n, 1);
  out.ext.heterogeneous.assign(net.n, 0);
  for (int v = 0; v < net.n; ++v)
    if (sharing[v].size() >= 2) out.ext.orders[v] = static_cast<int>(sharing[v].size());

  std::vector<int> offset(net.n + 1, 0);
  for (int v = 0; v < net.n; ++v) offset[v + 1] = offset[v] + out.ext.orders[v];
  auto copy_of = [&](int v, int path_index) {
    if (sharing[v].size() < 2) return offset[v];
    const auto it = std::lower_bound(sharing[v].begin(), sharing[v].end(), path_index);
    return offset[v] + static_cast<int>(it - sharing[v].begin());
  };

  for (int k = 0; k < static_cast<int>(views.size()); ++k) {
    std::vector<int> mapped;
    mapped.reserve(views[k].nodes->size());
    for (int v : *views[k].nodes) mapped.push_back(copy_of(v, k));
    if (views[k].input >= 0)
      out.expanded_cover.stems.push_back({views[k].input, std::move(mapped)});
    else
      out.expanded_cover.cycles.push_back(std::move(mapped));
  }
  return out;
}

void verify_plan(ExtensionPlan& plan) {
  const SystemGraph expanded = expanded_graph(plan.result);
  if (!plan.certificate) throw Error("internal: synthesized plan lacks a certificate");
  const CoverCheck check = check_cover(expanded, *plan.certificate);
  if (!check.valid)
    throw Error("internal: extension certificate invalid: " + check.error);
  if (!check.vertex_disjoint || !check.covers_all_states)
    throw Error("internal: extension certificate is not a disjoint full cover");
  const GenericDimensionReport dim = generic_dimension(expanded);
  if (dim.d_c != expanded.num_states)
    throw Error("internal: extended system failed the dimension check: d_c = " +
                std::to_string(dim.d_c) + " of " + std::to_string(expanded.num_states));
}

void finish_plan(ExtensionPlan& plan, const StructuredNetwork& net) {
  plan.s_first_order = first_order_minimum(net);
  plan.modified_subsystems = plan.result.modified_subsystems();
  plan.s_hat = static_cast<int>(plan.modified_subsystems.size());
  plan.delta = plan.s_first_order - plan.s_hat;
}

}  // namespace

ExtensionPlan extend_x_network(const StructuredNetwork& net, const PathCycleCover& cover) {
  validate(net);
  const SystemGraph g = system_graph(net);
  const CoverCheck check = check_cover(g, cover);
  if (!check.valid) throw PreconditionError("cover invalid: " + check.error);
  if (!check.covers_all_states)
    throw PreconditionError("cover must cover every state node");
  std::set<int> stem_inputs;
  for (const auto& s : cover.stems)
    if (!stem_inputs.insert(s.input).second)
      throw PreconditionError("two stems share an input; use the general procedure instead");

  Rewrite rewrite = rewrite_shared_nodes(net, cover);
  ExtensionPlan plan;
  plan.result = std::move(rewrite.ext);
  plan.base_cover = cover;
  canonicalize(plan.base_cover);
  canonicalize(rewrite.expanded_cover);
  plan.certificate = std::move(rewrite.expanded_cover);
  finish_plan(plan, net);
  verify_plan(plan);
  return plan;
}

PathCycleCover synthesize_cover(const SystemGraph& g) {
  const AccessibilityReport access = is_input_accessible(g);
  if (!access.accessible)
    throw PreconditionError("cover synthesis requires input accessibility");

  PathCycleCover cover;
  std::vector<char> covered(g.num_states, 0);

  // One deepest BFS stem per input (ties: smallest node id).
  for (int u = 0; u < g.num_inputs; ++u) {
    if (g.input_adj[u].empty()) continue;
    std::vector<int> depth(g.num_states, -1), parent(g.num_states, -1);
    std::vector<int> queue;
    for (int v : g.input_adj[u]) {
      if (depth[v] < 0) {
        depth[v] = 0;
        queue.push_back(v);
      }
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      const int v = queue[qi];
      for (int w : g.state_adj[v])
        if (depth[w] < 0) {
          depth[w] = depth[v] + 1;
          parent[w] = v;
          queue.push_back(w);
        }
    }
    int deepest = -1;
    for (int v = 0; v < g.num_states; ++v)
      if (depth[v] >= 0 && (deepest < 0 || depth[v] > depth[deepest])) deepest = v;
    Stem stem;
    stem.input = u;
    for (int v = deepest; v >= 0; v = parent[v]) stem.nodes.push_back(v);
    std::reverse(stem.nodes.begin(), stem.nodes.end());
    for (int v : stem.nodes) covered[v] = 1;
    cover.stems.push_back(std::move(stem));
  }

  // Deepest-first repair: cycles where possible, BFS stems otherwise.
  const MultiSourceBfs bfs = bfs_from_inputs(g);
  const std::vector<char> on_cycle = nodes_on_cycles(g);
  std::vector<int> order(g.num_states);
  for (int v = 0; v < g.num_states; ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&bfs](int a, int b) {
    if (bfs.depth[a] != bfs.depth[b]) return bfs.depth[a] > bfs.depth[b];
    return a < b;
  });
  for (int v : order) {
    if (covered[v]) continue;
    if (on_cycle[v]) {
      std::vector<int> cycle = shortest_cycle_through(g, v);
      for (int w : cycle) covered[w] = 1;
      cover.cycles.push_back(std::move(cycle));
    } else {
      Stem stem;
      stem.input = bfs.source_input[v];
      for (int w = v; w >= 0; w = bfs.parent[w]) stem.nodes.push_back(w);
      std::reverse(stem.nodes.begin(), stem.nodes.end());
      for (int w : stem.nodes) covered[w] = 1;
      cover.stems.push_back(std::move(stem));
    }
  }
  return cover;
}

ExtensionPlan extend_general(const StructuredNetwork& net, std::optional<PathCycleCover> cover) {
  validate(net);
  const SystemGraph g = system_graph(net);
  if (!cover) cover = synthesize_cover(g);
  const CoverCheck check = check_cover(g, *cover);
  if (!check.valid) throw PreconditionError("cover invalid: " + check.error);
  if (!check.covers_all_states)
    throw PreconditionError("cover must cover every state node");

  // Step 1: split every node shared by two or more paths, stems rooted at the
  // same input included.
  Rewrite rewrite = rewrite_shared_nodes(net, *cover);

  // Step 2: keep one stem per input (longest, ties by smallest sequence);
  // every subsystem owning a copy on a leftover stem turns heterogeneous,
  // which adds the self-loops that let those copies cover themselves.
  std::map<int, int> best_stem;  // input -> stem index in expanded cover
  const auto& stems = rewrite.expanded_cover.stems;
  for (int i = 0; i < static_cast<int>(stems.size()); ++i) {
    auto it = best_stem.find(stems[i].input);
    if (it == best_stem.end()) {
      best_stem[stems[i].input] = i;
      continue;
    }
    const auto& cur = stems[it->second].nodes;
    const auto& cand = stems[i].nodes;
    if (cand.size() > cur.size() || (cand.size() == cur.size() && cand < cur)) it->second = i;
  }
  std::set<int> selected;
  for (auto [input, index] : best_stem) selected.insert(index);

  ExtensionPlan plan;
  plan.result = std::move(rewrite.ext);
  PathCycleCover certificate;
  std::vector<int> offsets;
  {
    std::vector<int> off(net.n + 1, 0);
    for (int v = 0; v < net.n; ++v) off[v + 1] = off[v] + plan.result.orders[v];
    offsets = std::move(off);
  }
  auto subsystem_of = [&offsets, &net](int copy) {
    for (int v = 0; v < net.n; ++v)
      if (copy < offsets[v + 1]) return v;
    throw Error("internal: copy id out of range");
  };
  for (int i = 0; i < static_cast<int>(stems.size()); ++i) {
    if (selected.count(i)) {
      certificate.stems.push_back(stems[i]);
      continue;
    }
    for (int copy : stems[i].nodes) {
      plan.result.heterogeneous[subsystem_of(copy)] = 1;
      certificate.cycles.push_back({copy});  // self-loop granted by heterogeneity
    }
  }
  for (const auto& cycle : rewrite.expanded_cover.cycles) certificate.cycles.push_back(cycle);

  canonicalize(certificate);
  plan.certificate = std::move(certificate);
  plan.base_cover = *cover;
  canonicalize(plan.base_cover);
  finish_plan(plan, net);
  verify_plan(plan);
  return plan;
}

int first_order_minimum(const StructuredNetwork& net) {
  validate(net);
  const GenericDimensionReport dim = generic_dimension(system_graph(net));
  return net.n - dim.d_c;
}

HeterogeneityBounds heterogeneity_bounds(const StructuredNetwork& net, int n_hat_max) {
  if (n_hat_max < 1) throw PreconditionError("n_hat_max must be >= 1");
  validate(net);
  const SystemGraph g = system_graph(net);
  const Classification c = classify(g);
  if (c.label != ClassLabel::Y)
    throw PreconditionError("heterogeneity bounds are defined for class-Y networks; got " +
                            to_string(c.label));
  HeterogeneityBounds bounds;
  bounds.n_hat_max = n_hat_max;
  bounds.z_size = c.d_c;  // acyclic: the dimension witness is a disjoint stem family
  const int rest = net.n - bounds.z_size;
  bounds.lower = (rest + n_hat_max - 1) / n_hat_max;
  bounds.upper = rest;
  return bounds;
}

int delta_index(const ExtensionPlan& plan) { return plan.delta; }

ExtensionPlan plan_from_extension(const ExtendedNetwork& ext) {
  validate(ext);
  ExtensionPlan plan;
  plan.result = ext;
  finish_plan(plan, ext.base);
  return plan;
}

}  // namespace strucnet
