#pragma once

#include "strucnet/network.hpp"

#include <functional>
#include <string>
#include <vector>

namespace strucnet {

// ---------------------------------------------------------------------------
// Stem / cycle covers. A stem is a simple path that starts at an input node
// and continues through state nodes; a cycle is an elementary directed cycle
// of state nodes (stored without repeating the first node). The covering
// machinery below realizes the dimension formula: the generic dimension of
// the controllable output subspace equals the maximum number of state nodes
// covered by vertex-disjoint stems and cycles, where disjointness includes
// the input nodes (two stems rooted at one input are not disjoint).
// ---------------------------------------------------------------------------

struct Stem {
  int input = -1;
  std::vector<int> nodes;  // state sequence, first node is a successor of input
};

struct PathCycleCover {
  std::vector<Stem> stems;
  std::vector<std::vector<int>> cycles;  // node sequences, closure implicit

  int num_paths() const { return static_cast<int>(stems.size() + cycles.size()); }
  /// Sorted list of distinct covered state nodes.
  std::vector<int> covered_states() const;
  int covered_count() const { return static_cast<int>(covered_states().size()); }
  bool empty() const { return stems.empty() && cycles.empty(); }
};

/// Structural check of a cover against a graph: every stem/cycle must be a
/// real simple path/elementary cycle of g. vertex_disjoint reports whether no
/// state node appears in two paths and no two stems share an input.
struct CoverCheck {
  bool valid = false;
  bool vertex_disjoint = false;
  bool covers_all_states = false;
  std::string error;  // first violation when !valid
};
CoverCheck check_cover(const SystemGraph& g, const PathCycleCover& cover);

/// Canonical form: stems sorted by (length desc, node sequence asc), cycles
/// rotated to start at their smallest node and sorted lexicographically.
void canonicalize(PathCycleCover& cover);

// ---------------------------------------------------------------------------
// Generic dimension engine.
// ---------------------------------------------------------------------------

struct GenericDimensionReport {
  int d_c = 0;                  // generic dimension of the controllable output subspace
  PathCycleCover witness;      // vertex-disjoint cover attaining d_c
  bool structurally_controllable = false;  // d_c == num_states
};

/// Computes d_c by a min-cost circulation (node-splitting, unit capacities,
/// cost -1 per covered state, negative-cycle canceling) and decomposes the
/// optimal flow into the witness cover. Requires input accessibility; throws
/// PreconditionError otherwise. Deterministic, polynomial.
GenericDimensionReport generic_dimension(const SystemGraph& g);

/// Maximum state nodes coverable by vertex-disjoint stems alone. Only defined
/// for acyclic graphs (throws PreconditionError otherwise); on an acyclic
/// graph the circulation optimum contains no cycles, so this is
/// generic_dimension with the cycle option vacuous.
PathCycleCover max_disjoint_stems(const SystemGraph& g);

// ---------------------------------------------------------------------------
// Exhaustive enumeration (desk-scale oracle).
// ---------------------------------------------------------------------------

/// Streams covers to `yield`; return false from the callback to stop early.
///
/// vertex_disjoint_only = true: all vertex-disjoint families of maximum
/// coverage (each family canonical, enumerated once).
///
/// vertex_disjoint_only = false: all irredundant covers of the coverable node
/// set (every path covers at least one node no other path in the family
/// covers); paths may intersect. If nothing is coverable the stream is empty.
///
/// Guarded: throws SizeGuardError when the graph has more than `max_nodes`
/// state nodes (worst-case cost is exponential).
void enumerate_covers(const SystemGraph& g, bool vertex_disjoint_only,
                      const std::function<bool(const PathCycleCover&)>& yield,
                      int max_nodes = 12);

std::vector<PathCycleCover> enumerate_covers_vec(const SystemGraph& g,
                                                 bool vertex_disjoint_only,
                                                 int max_nodes = 12);

/// All simple stems of g (every prefix counts), canonical order.
std::vector<Stem> all_stems(const SystemGraph& g);

/// All elementary cycles of g, canonical rotation, canonical order.
std::vector<std::vector<int>> all_cycles(const SystemGraph& g);

}  // namespace strucnet
