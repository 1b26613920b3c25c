#pragma once

#include "strucnet/cover.hpp"
#include "strucnet/network.hpp"

#include <optional>
#include <string>
#include <variant>

namespace strucnet {

// ---------------------------------------------------------------------------
// Pinned desk-scale instances: two parametric families (complete binary tree,
// single bifurcation) with their closed-form extension metrics, plus the
// small fixed fixtures used throughout the tests.
// ---------------------------------------------------------------------------

enum class CaseFamily {
  BinaryTree,   // height h >= 0; n = 2^(h+1) - 1, single input at the root
  Bifurcation,  // even height h >= 2; chain of h+1 driven nodes + branch of h
  Fig1a,        // 3-node star: one input, root feeding two sinks
  Fig2a,        // two inputs joining at a shared node then splitting
  Fig2b,        // stem with a cycle hanging off its second node
  Fig2c,        // stem plus two cycles sharing one node
  Fig2d,        // one input, shared root, two disjoint branches
  Fig3a,        // shared-node rewrite of Fig2a (order-2 subsystem)
  Fig3b,        // shared-node rewrite of Fig2b
  Fig3c,        // shared-node rewrite of Fig2c
};

std::string to_string(CaseFamily family);
std::optional<CaseFamily> family_from_string(const std::string& name);

struct CaseStudyId {
  CaseFamily family = CaseFamily::BinaryTree;
  int height = 0;        // used by BinaryTree / Bifurcation
  bool extended = false; // emit the witness extension instead of the base
};

/// Materializes the instance. Extended variants exist for the two parametric
/// families and (inherently) the Fig3 fixtures; everything else is a plain
/// network. Throws ValidationError for out-of-domain parameters (e.g. odd
/// bifurcation height).
std::variant<StructuredNetwork, ExtendedNetwork> generate(const CaseStudyId& id);

StructuredNetwork generate_network(const CaseStudyId& id);    // throws if extended-only
ExtendedNetwork generate_extended(const CaseStudyId& id);     // throws if base-only

/// Closed-form metrics of the witness extension for the parametric families:
///   tree:        d_c = h+1,  S = 2^(h+1)-(h+2),  S_hat = 2^h - 1
///   bifurcation: d_c = h+1,  S = h,              S_hat = h/2
/// delta = S - S_hat in both cases.
struct CaseMetrics {
  int d_c = 0;
  int s_first_order = 0;
  int s_hat = 0;
  int delta = 0;
};
CaseMetrics expected_metrics(const CaseStudyId& id);

/// The covers the Fig2 fixtures are traditionally analyzed with (used to
/// reproduce the Fig3 rewrites exactly). Defined for Fig2a/b/c.
PathCycleCover fixture_cover(CaseFamily family);

}  // namespace strucnet
