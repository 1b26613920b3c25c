#include "strucnet/classify.hpp"

#include "strucnet/errors.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>

namespace strucnet {

std::string to_string(ClassLabel label) {
  switch (label) {
    case ClassLabel::NotInputAccessible: return "not_input_accessible";
    case ClassLabel::StructurallyControllable: return "structurally_controllable";
    case ClassLabel::X: return "x";
    case ClassLabel::Y: return "y";
    case ClassLabel::Mixed: return "mixed";
  }
  return "?";
}

AccessibilityReport is_input_accessible(const SystemGraph& g) {
  AccessibilityReport report;
  const std::vector<char> reach = reachable_from_inputs(g);
  for (int v = 0; v < g.num_states; ++v)
    if (!reach[v]) report.inaccessible.push_back(v);
  report.accessible = report.inaccessible.empty();
  return report;
}

// ---------------------------------------------------------------------------
// Distinct-input cover search.
//
// Cycles can cover exactly the nodes that lie on cycles, and they are free of
// input budget, so a cover with at most one stem per input exists iff the
// cycle-free remainder R can be covered by one simple path per input. That
// residual problem is decided exactly by branch-and-bound over per-input
// coverage masks; worst case exponential, hence the size guard.
// ---------------------------------------------------------------------------

namespace {

struct InputOptions {
  // Maximal achievable R-masks for one input, with a representative path.
  std::vector<std::uint64_t> masks;
  std::vector<std::vector<int>> paths;
};

InputOptions collect_input_masks(const SystemGraph& g, int input, std::uint64_t r_mask) {
  InputOptions options;
  std::map<std::uint64_t, std::vector<int>> first_path_for_mask;
  std::vector<char> on_path(g.num_states, 0);
  std::vector<int> path;
  std::uint64_t mask = 0;
  auto dfs = [&](auto&& self, int v) -> void {
    on_path[v] = 1;
    path.push_back(v);
    const std::uint64_t bit = std::uint64_t{1} << v;
    const bool in_r = (r_mask & bit) != 0;
    if (in_r) mask |= bit;
    first_path_for_mask.emplace(mask, path);  // keeps the first (DFS order)
    for (int w : g.state_adj[v])
      if (!on_path[w]) self(self, w);
    if (in_r) mask &= ~bit;
    path.pop_back();
    on_path[v] = 0;
  };
  for (int v : g.input_adj[input]) dfs(dfs, v);

  // Drop dominated masks (subset of another achievable mask).
  for (auto it = first_path_for_mask.rbegin(); it != first_path_for_mask.rend(); ++it) {
    bool dominated = false;
    for (std::uint64_t m : options.masks)
      if ((it->first & ~m) == 0) {
        dominated = true;
        break;
      }
    if (!dominated && it->first != 0) {
      options.masks.push_back(it->first);
      options.paths.push_back(it->second);
    }
  }
  return options;
}

}  // namespace

std::optional<PathCycleCover> exists_distinct_input_cover(const SystemGraph& g, int max_nodes) {
  if (g.num_states > max_nodes)
    throw SizeGuardError("exists_distinct_input_cover: " + std::to_string(g.num_states) +
                         " state nodes exceed the guard of " + std::to_string(max_nodes));
  const AccessibilityReport access = is_input_accessible(g);
  if (!access.accessible)
    throw PreconditionError("exists_distinct_input_cover requires input accessibility");

  const std::vector<char> on_cycle = nodes_on_cycles(g);
  std::uint64_t r_mask = 0;
  for (int v = 0; v < g.num_states; ++v)
    if (!on_cycle[v]) r_mask |= std::uint64_t{1} << v;

  std::vector<InputOptions> options;
  options.reserve(g.num_inputs);
  for (int u = 0; u < g.num_inputs; ++u) options.push_back(collect_input_masks(g, u, r_mask));

  std::set<std::pair<int, std::uint64_t>> dead;
  std::vector<std::pair<int, int>> chosen;  // (input, option index)
  bool found = false;
  auto search = [&](auto&& self, int input, std::uint64_t uncovered) -> void {
    if (found) return;
    if (uncovered == 0) {
      found = true;
      return;
    }
    if (input == g.num_inputs) return;
    if (dead.count({input, uncovered})) return;
    for (int oi = 0; oi < static_cast<int>(options[input].masks.size()) && !found; ++oi) {
      if (!(options[input].masks[oi] & uncovered)) continue;
      chosen.emplace_back(input, oi);
      self(self, input + 1, uncovered & ~options[input].masks[oi]);
      if (!found) chosen.pop_back();
    }
    if (!found) self(self, input + 1, uncovered);
    if (!found) dead.insert({input, uncovered});
  };
  search(search, 0, r_mask);
  if (!found) return std::nullopt;

  PathCycleCover cover;
  std::vector<char> covered(g.num_states, 0);
  for (auto [input, oi] : chosen) {
    Stem stem;
    stem.input = input;
    stem.nodes = options[input].paths[oi];
    for (int v : stem.nodes) covered[v] = 1;
    cover.stems.push_back(std::move(stem));
  }
  // Complete with cycles: everything left lies on one.
  for (int v = 0; v < g.num_states; ++v) {
    if (covered[v]) continue;
    std::vector<int> cycle = shortest_cycle_through(g, v);
    if (cycle.empty()) throw Error("internal: residual node lies on no cycle");
    for (int w : cycle) covered[w] = 1;
    cover.cycles.push_back(std::move(cycle));
  }
  canonicalize(cover);
  const CoverCheck check = check_cover(g, cover);
  if (!check.valid || !check.covers_all_states)
    throw Error("internal: synthesized distinct-input cover failed validation: " + check.error);
  return cover;
}

Classification classify(const SystemGraph& g) {
  Classification c;
  c.num_states = g.num_states;

  const AccessibilityReport access = is_input_accessible(g);
  c.inaccessible = access.inaccessible;
  c.acyclic = is_acyclic(g);

  // Reachable-set overlaps between input pairs (diagnostic, and the exact
  // obstruction that separates class Y from everything else).
  std::vector<std::vector<char>> reach(g.num_inputs);
  for (int u = 0; u < g.num_inputs; ++u) reach[u] = reachable_from_input(g, u);
  for (int a = 0; a < g.num_inputs; ++a)
    for (int b = a + 1; b < g.num_inputs; ++b)
      for (int v = 0; v < g.num_states; ++v)
        if (reach[a][v] && reach[b][v]) {
          c.reach_overlaps.push_back({a, b, v});
          break;
        }

  if (!access.accessible) {
    c.label = ClassLabel::NotInputAccessible;
    return c;
  }

  GenericDimensionReport dim = generic_dimension(g);
  c.d_c = dim.d_c;
  c.dimension_witness = dim.witness;
  if (dim.structurally_controllable) {
    c.label = ClassLabel::StructurallyControllable;
    c.witness = dim.witness;
    return c;
  }

  // Class Y: acyclic and no state reachable from two inputs. Then stems from
  // different inputs can never meet, no cycles exist, and single-input stem
  // trees can never cover a branching alone: every cover is forced to reuse
  // an input, and no cover has intersecting path pairs.
  if (c.acyclic && c.reach_overlaps.empty()) {
    c.label = ClassLabel::Y;
    return c;
  }

  std::optional<PathCycleCover> witness = exists_distinct_input_cover(g);
  if (witness) {
    const CoverCheck check = check_cover(g, *witness);
    if (check.vertex_disjoint)
      throw Error("internal: distinct-input witness is vertex-disjoint in a non-controllable system");
    c.label = ClassLabel::X;
    c.witness = std::move(witness);
    return c;
  }
  c.label = ClassLabel::Mixed;
  return c;
}

}  // namespace strucnet
