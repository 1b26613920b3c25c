#pragma once

#include "strucnet/classify.hpp"
#include "strucnet/cover.hpp"
#include "strucnet/network.hpp"

#include <optional>
#include <vector>

namespace strucnet {

// ---------------------------------------------------------------------------
// Extension synthesis: replace selected first-order subsystems with local
// higher-order or heterogeneous dynamics so the extended system becomes
// structurally controllable, and account for how many subsystems had to
// change compared with the first-order heterogeneous baseline.
// ---------------------------------------------------------------------------

struct ExtensionPlan {
  ExtendedNetwork result;
  std::vector<int> modified_subsystems;  // sorted, 0-based
  int s_first_order = 0;  // minimum #subsystems under first-order heterogeneous fixes = n - d_c
  int s_hat = 0;          // #modified subsystems in this plan
  int delta = 0;          // s_first_order - s_hat
  /// Vertex-disjoint cover of the whole expanded graph, present for
  /// synthesized plans (it certifies structural controllability of result).
  std::optional<PathCycleCover> certificate;
  /// The stem/cycle cover of the base graph the synthesis worked from.
  PathCycleCover base_cover;
};

/// Rewrites shared cover nodes into homogeneous higher-order subsystems: a
/// state node used by q >= 2 cover paths becomes a subsystem of order q, each
/// path threading through its own copy. Preconditions: net validates, is
/// input-accessible, the cover covers every state node and no two of its
/// stems share an input. Postcondition (verified internally): the expanded
/// graph of the result has a disjoint full cover, i.e. d_c = total order.
ExtensionPlan extend_x_network(const StructuredNetwork& net, const PathCycleCover& cover);

/// General two-step procedure for any input-accessible network: first the
/// shared-node rewrite above, but applied to every node shared by two or more
/// cover paths (including stems rooted at the same input); then a maximum
/// vertex-disjoint stem family (one longest stem per input) is kept and every
/// subsystem owning a state copy of a leftover stem is made heterogeneous.
/// If no cover is supplied, a deterministic greedy one is synthesized and
/// recorded in the plan.
ExtensionPlan extend_general(const StructuredNetwork& net,
                             std::optional<PathCycleCover> cover = std::nullopt);

/// Minimum number of first-order heterogeneous subsystems that make the
/// network structurally controllable: n - d_c. Requires input accessibility.
int first_order_minimum(const StructuredNetwork& net);

/// Range of the minimum number of modified subsystems for a class-Y network
/// when subsystem orders are capped at n_hat_max:
/// ceil((n - |Z|) / n_hat_max) <= S_hat_min <= n - |Z|, where Z is a maximum
/// vertex-disjoint stem cover (|Z| = d_c). Throws PreconditionError when the
/// network is not class Y.
struct HeterogeneityBounds {
  int lower = 0;
  int upper = 0;
  int n_hat_max = 1;
  int z_size = 0;
};
HeterogeneityBounds heterogeneity_bounds(const StructuredNetwork& net, int n_hat_max);

/// delta = (first-order minimum) - (subsystems modified by the plan): the
/// saving of the plan over first-order heterogeneous fixes.
int delta_index(const ExtensionPlan& plan);

/// Plan record for a hand-crafted extension (case studies): computes
/// s_first_order / s_hat / delta, no certificate.
ExtensionPlan plan_from_extension(const ExtendedNetwork& ext);

/// Deterministic greedy cover used by extend_general: one BFS-deepest stem
/// per input, then deepest-first repair with cycles (when the node lies on
/// one) or BFS stems. Covers every state node of an input-accessible graph.
PathCycleCover synthesize_cover(const SystemGraph& g);

}  // namespace strucnet
