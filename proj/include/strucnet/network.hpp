#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace strucnet {

// ---------------------------------------------------------------------------
// Structured network system: n first-order subsystems coupled over a directed
// graph, driven through m inputs. Edges carry free parameters, so everything
// downstream reasons about the zero pattern only. Indices are 0-based in
// memory and 1-based in serialized documents.
// ---------------------------------------------------------------------------

struct StructuredNetwork {
  int n = 0;  // state nodes
  int m = 0;  // input nodes
  // state_edges: (from, to) meaning the dynamics of `to` depend on `from`.
  // Self-loops are forbidden: first-order subsystems have no internal term.
  std::vector<std::pair<int, int>> state_edges;
  // input_edges: (input, state).
  std::vector<std::pair<int, int>> input_edges;
  // Optional display names for state nodes (empty or size n).
  std::vector<std::string> labels;
};

/// Checks all document invariants; throws ValidationError with a specific
/// message on the first violation. Also sorts and dedup-checks edge lists.
void validate(const StructuredNetwork& net);

/// A network whose subsystem i has been replaced by a local system of order
/// orders[i] >= 1; heterogeneous[i] selects fully generic internal dynamics
/// (all intra-subsystem couplings including self-loops) instead of none.
struct ExtendedNetwork {
  StructuredNetwork base;
  std::vector<int> orders;
  std::vector<char> heterogeneous;  // avoid vector<bool> aliasing pains

  int total_order() const;
  /// Subsystems that differ from plain first-order homogeneous nodes.
  std::vector<int> modified_subsystems() const;
};

void validate(const ExtendedNetwork& net);

/// Wraps a network as the identity extension (all orders 1, homogeneous).
ExtendedNetwork identity_extension(const StructuredNetwork& net);

// ---------------------------------------------------------------------------
// System graph: the directed graph on input nodes plus state nodes that all
// covering/classification machinery works on. For extended networks the
// state nodes are subsystem copies.
// ---------------------------------------------------------------------------

struct SystemGraph {
  int num_states = 0;
  int num_inputs = 0;
  std::vector<std::vector<int>> state_adj;  // state -> sorted state successors
  std::vector<std::vector<int>> input_adj;  // input -> sorted state successors

  // Provenance of each state node (identity for unexpanded graphs).
  std::vector<int> subsystem_of;  // 0-based base subsystem
  std::vector<int> copy_index;    // 1-based copy number within its subsystem
  std::vector<int> subsystem_order;  // order of the owning subsystem

  std::vector<std::string> state_labels;
  std::vector<std::string> input_labels;

  bool has_state_edge(int from, int to) const;
  bool has_input_edge(int input, int to) const;
  /// First copy (global id) of each subsystem; size = #subsystems + 1 so that
  /// copies of subsystem i are [offsets[i], offsets[i+1]).
  std::vector<int> subsystem_offsets() const;
};

/// Graph of a plain network: one node per subsystem.
SystemGraph system_graph(const StructuredNetwork& net);

/// Expanded graph of an extended network. Copies of subsystem i are numbered
/// consecutively and labeled "<i>.<k>". Every base edge j->i turns into the
/// full bipartite set of copy edges; input edges fan out to every copy of the
/// target; heterogeneous subsystems additionally get all intra-subsystem
/// edges including self-loops.
SystemGraph expanded_graph(const ExtendedNetwork& net);

// ---------------------------------------------------------------------------
// Graph algorithms shared by the analysis passes.
// ---------------------------------------------------------------------------

/// States reachable from at least one input (via directed paths).
std::vector<char> reachable_from_inputs(const SystemGraph& g);

/// States reachable from one particular input.
std::vector<char> reachable_from_input(const SystemGraph& g, int input);

/// True iff the state subgraph has no directed cycle (self-loops count).
bool is_acyclic(const SystemGraph& g);

/// Strongly connected components of the state subgraph (Tarjan).
/// Returns component id per state, components numbered in reverse
/// topological order.
std::vector<int> state_sccs(const SystemGraph& g, int* num_components = nullptr);

/// on_cycle[v] = true iff v lies on some directed cycle (its SCC has >= 2
/// nodes, or it has a self-loop).
std::vector<char> nodes_on_cycles(const SystemGraph& g);

/// Shortest elementary cycle through v, as a node sequence starting at v.
/// Empty if v lies on no cycle. Deterministic (smallest-successor BFS).
std::vector<int> shortest_cycle_through(const SystemGraph& g, int v);

/// BFS from every input at once; returns (depth, parent, parent_is_input,
/// source_input) per state, depth -1 when unreachable. Ties resolved by
/// scanning inputs then states in ascending order.
struct MultiSourceBfs {
  std::vector<int> depth;
  std::vector<int> parent;        // previous state, or -1 when first hop
  std::vector<int> source_input;  // input the BFS tree path starts at
};
MultiSourceBfs bfs_from_inputs(const SystemGraph& g);

}  // namespace strucnet
