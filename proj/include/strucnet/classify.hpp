#pragma once

#include "strucnet/cover.hpp"
#include "strucnet/network.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace strucnet {

// ---------------------------------------------------------------------------
// Network classification. For input-accessible systems that are not
// structurally controllable, the interesting split is:
//
//   X      some full cover uses at most one stem per input (its defect is
//          only that paths intersect); fixable with homogeneous higher-order
//          subsystems placed at the shared nodes.
//   Y      every full cover needs two stems from one input, and no cover has
//          intersecting stem/stem (distinct inputs), stem/cycle or
//          cycle/cycle pairs. Equivalently: acyclic with pairwise-disjoint
//          input reachable sets. Needs heterogeneous local dynamics.
//   Mixed  everything else.
// ---------------------------------------------------------------------------

enum class ClassLabel {
  NotInputAccessible,
  StructurallyControllable,
  X,
  Y,
  Mixed,
};

std::string to_string(ClassLabel label);

struct AccessibilityReport {
  bool accessible = false;
  std::vector<int> inaccessible;  // sorted state nodes unreachable from inputs
};

AccessibilityReport is_input_accessible(const SystemGraph& g);

struct Classification {
  ClassLabel label = ClassLabel::Mixed;
  /// StructurallyControllable: a disjoint full cover. X: a full cover with
  /// distinct inputs. Otherwise absent.
  std::optional<PathCycleCover> witness;

  // Diagnostics.
  int d_c = -1;  // -1 when not defined (inaccessible)
  int num_states = 0;
  std::vector<int> inaccessible;
  bool acyclic = false;
  /// Pairs of inputs whose reachable sets overlap, with one shared node each.
  std::vector<std::array<int, 3>> reach_overlaps;
  /// The disjoint cover attaining d_c (when defined).
  std::optional<PathCycleCover> dimension_witness;
};

/// Full classification pass. The X test is exhaustive and guarded (see
/// exists_distinct_input_cover); everything else is polynomial.
Classification classify(const SystemGraph& g);

/// Searches for a cover of every state node that uses at most one stem per
/// input (cycles unrestricted, intersections allowed). Exact branch-and-bound
/// over the nodes that cycles cannot cover. Preconditions: input-accessible.
/// Guarded: throws SizeGuardError when num_states > max_nodes (default 24).
std::optional<PathCycleCover> exists_distinct_input_cover(const SystemGraph& g,
                                                          int max_nodes = 24);

}  // namespace strucnet
