#include "oracle.hpp"

#include "strucnet/errors.hpp"

#include <algorithm>
#include <vector>

namespace strucnet::oracle {

namespace {

using Mask = std::uint64_t;

struct Piece {
  Mask nodes = 0;
  int size = 0;
  int input = -1;  // -1 for cycles
};

void guard(const SystemGraph& g) {
  if (g.num_states > 16 || g.num_inputs > 8)
    throw SizeGuardError("oracle supports at most 16 states / 8 inputs");
}

// All simple paths that start at a successor of `input`; every prefix is its
// own stem.
void collect_stems(const SystemGraph& g, int input, std::vector<Piece>& out) {
  std::vector<int> path;
  Mask on_path = 0;
  auto dfs = [&](auto&& self, int v) -> void {
    path.push_back(v);
    on_path |= Mask(1) << v;
    Piece p;
    for (int node : path) p.nodes |= Mask(1) << node;
    p.size = static_cast<int>(path.size());
    p.input = input;
    out.push_back(p);
    for (int w : g.state_adj[v])
      if (!(on_path >> w & 1)) self(self, w);
    on_path &= ~(Mask(1) << v);
    path.pop_back();
  };
  for (int v : g.input_adj[input]) dfs(dfs, v);
}

// Elementary cycles, rooted at their smallest node.
void collect_cycles(const SystemGraph& g, std::vector<Piece>& out) {
  for (int root = 0; root < g.num_states; ++root) {
    std::vector<int> path{root};
    Mask on_path = Mask(1) << root;
    auto dfs = [&](auto&& self, int v) -> void {
      for (int w : g.state_adj[v]) {
        if (w == root) {
          Piece p;
          p.nodes = on_path;
          p.size = static_cast<int>(path.size());
          out.push_back(p);
        } else if (w > root && !(on_path >> w & 1)) {
          path.push_back(w);
          on_path |= Mask(1) << w;
          self(self, w);
          on_path &= ~(Mask(1) << w);
          path.pop_back();
        }
      }
    };
    dfs(dfs, root);
  }
}

int popcount(Mask m) { return __builtin_popcountll(m); }

}  // namespace

bool accessible(const SystemGraph& g) {
  Mask seen = 0;
  std::vector<int> queue;
  for (int u = 0; u < g.num_inputs; ++u)
    for (int v : g.input_adj[u])
      if (!(seen >> v & 1)) {
        seen |= Mask(1) << v;
        queue.push_back(v);
      }
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (int w : g.state_adj[queue[i]])
      if (!(seen >> w & 1)) {
        seen |= Mask(1) << w;
        queue.push_back(w);
      }
  return popcount(seen) == g.num_states;
}

int max_disjoint_cover(const SystemGraph& g) {
  guard(g);
  std::vector<Piece> pieces;
  for (int u = 0; u < g.num_inputs; ++u) collect_stems(g, u, pieces);
  collect_cycles(g, pieces);
  std::sort(pieces.begin(), pieces.end(),
            [](const Piece& a, const Piece& b) { return a.size > b.size; });

  int best = 0;
  auto rec = [&](auto&& self, std::size_t idx, Mask used, unsigned used_inputs,
                 int covered) -> void {
    best = std::max(best, covered);
    if (best == g.num_states) return;
    if (idx == pieces.size()) return;
    if (covered + g.num_states - popcount(used) <= best) return;
    const Piece& p = pieces[idx];
    if (!(p.nodes & used) && (p.input < 0 || !(used_inputs >> p.input & 1)))
      self(self, idx + 1, used | p.nodes,
           p.input < 0 ? used_inputs : used_inputs | 1u << p.input, covered + p.size);
    self(self, idx + 1, used, used_inputs, covered);
  };
  rec(rec, 0, 0, 0, 0);
  return best;
}

std::string classify(const SystemGraph& g) {
  guard(g);
  if (!accessible(g)) return "not_input_accessible";
  const Mask everything = g.num_states == 64 ? ~Mask(0) : (Mask(1) << g.num_states) - 1;

  if (max_disjoint_cover(g) == g.num_states) return "structurally_controllable";

  std::vector<std::vector<Piece>> stems(g.num_inputs);
  for (int u = 0; u < g.num_inputs; ++u) collect_stems(g, u, stems[u]);
  std::vector<Piece> cycles;
  collect_cycles(g, cycles);
  Mask cycle_nodes = 0;
  for (const Piece& c : cycles) cycle_nodes |= c.nodes;

  // X: pick at most one stem per input; cycles may cover the rest with
  // arbitrary overlaps, so only the union of cycle nodes matters.
  bool is_x = false;
  auto pick = [&](auto&& self, int input, Mask covered) -> void {
    if (is_x) return;
    if (input == g.num_inputs) {
      is_x = (covered | cycle_nodes) == everything;
      return;
    }
    self(self, input + 1, covered);  // no stem from this input
    for (const Piece& s : stems[input]) self(self, input + 1, covered | s.nodes);
  };
  pick(pick, 0, 0);
  if (is_x) return "x";

  // Y: no cycles at all, and stems from distinct inputs never intersect.
  bool distinct_inputs_intersect = false;
  for (int a = 0; a < g.num_inputs && !distinct_inputs_intersect; ++a)
    for (int b = a + 1; b < g.num_inputs && !distinct_inputs_intersect; ++b)
      for (const Piece& sa : stems[a]) {
        for (const Piece& sb : stems[b])
          if (sa.nodes & sb.nodes) {
            distinct_inputs_intersect = true;
            break;
          }
        if (distinct_inputs_intersect) break;
      }
  if (cycles.empty() && !distinct_inputs_intersect) return "y";
  return "mixed";
}

}  // namespace strucnet::oracle
