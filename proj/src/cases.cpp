#include "strucnet/cases.hpp"

#include "strucnet/errors.hpp"
#include "strucnet/extend.hpp"

#include <utility>

namespace strucnet {

std::string to_string(CaseFamily family) {
  switch (family) {
    case CaseFamily::BinaryTree: return "binary_tree";
    case CaseFamily::Bifurcation: return "bifurcation";
    case CaseFamily::Fig1a: return "fig1a";
    case CaseFamily::Fig2a: return "fig2a";
    case CaseFamily::Fig2b: return "fig2b";
    case CaseFamily::Fig2c: return "fig2c";
    case CaseFamily::Fig2d: return "fig2d";
    case CaseFamily::Fig3a: return "fig3a";
    case CaseFamily::Fig3b: return "fig3b";
    case CaseFamily::Fig3c: return "fig3c";
  }
  return "?";
}

std::optional<CaseFamily> family_from_string(const std::string& name) {
  static const std::pair<const char*, CaseFamily> table[] = {
      {"binary_tree", CaseFamily::BinaryTree}, {"bifurcation", CaseFamily::Bifurcation},
      {"fig1a", CaseFamily::Fig1a},            {"fig2a", CaseFamily::Fig2a},
      {"fig2b", CaseFamily::Fig2b},            {"fig2c", CaseFamily::Fig2c},
      {"fig2d", CaseFamily::Fig2d},            {"fig3a", CaseFamily::Fig3a},
      {"fig3b", CaseFamily::Fig3b},            {"fig3c", CaseFamily::Fig3c},
  };
  for (const auto& [key, value] : table)
    if (name == key) return value;
  return std::nullopt;
}

namespace {

StructuredNetwork binary_tree(int h) {
  if (h < 0) throw ValidationError("tree height must be >= 0");
  if (h > 20) throw ValidationError("tree height capped at 20");
  StructuredNetwork net;
  net.n = (1 << (h + 1)) - 1;
  net.m = 1;
  const int inner = (1 << h) - 1;
  for (int i = 1; i <= inner; ++i) {
    net.state_edges.emplace_back(i - 1, 2 * i - 1);
    net.state_edges.emplace_back(i - 1, 2 * i);
  }
  net.input_edges.emplace_back(0, 0);
  return net;
}

StructuredNetwork bifurcation(int h) {
  if (h < 2 || h % 2 != 0) throw ValidationError("bifurcation height must be even and >= 2");
  if (h > 100000) throw ValidationError("bifurcation height capped at 100000");
  StructuredNetwork net;
  net.n = 2 * h + 1;
  net.m = 1;
  for (int i = 1; i <= h; ++i) net.state_edges.emplace_back(i - 1, i);  // driven chain
  net.state_edges.emplace_back(0, h + 1);                               // branch root
  for (int i = h + 2; i <= 2 * h; ++i) net.state_edges.emplace_back(i - 1, i);
  net.input_edges.emplace_back(0, 0);
  return net;
}

StructuredNetwork fixed_network(CaseFamily family) {
  StructuredNetwork net;
  net.m = 1;
  switch (family) {
    case CaseFamily::Fig1a:
      net.n = 3;
      net.state_edges = {{0, 1}, {0, 2}};
      break;
    case CaseFamily::Fig2a:
      net.n = 7;
      net.m = 2;
      net.state_edges = {{0, 2}, {1, 2}, {2, 3}, {2, 4}, {3, 5}, {4, 6}};
      net.input_edges = {{0, 0}, {1, 1}};
      return net;
    case CaseFamily::Fig2b:
      net.n = 6;
      net.state_edges = {{0, 1}, {1, 2}, {2, 3}, {1, 4}, {4, 5}, {5, 1}};
      break;
    case CaseFamily::Fig2c:
      net.n = 7;
      net.state_edges = {{0, 1}, {0, 2}, {2, 3}, {3, 4}, {4, 2}, {4, 5}, {5, 6}, {6, 4}};
      break;
    case CaseFamily::Fig2d:
      net.n = 7;
      net.state_edges = {{0, 1}, {1, 2}, {2, 3}, {0, 4}, {4, 5}, {5, 6}};
      break;
    default:
      throw ValidationError("not a fixed fixture: " + to_string(family));
  }
  net.input_edges = {{0, 0}};
  return net;
}

CaseFamily rewrite_source(CaseFamily family) {
  switch (family) {
    case CaseFamily::Fig3a: return CaseFamily::Fig2a;
    case CaseFamily::Fig3b: return CaseFamily::Fig2b;
    case CaseFamily::Fig3c: return CaseFamily::Fig2c;
    default: throw ValidationError("not a rewrite fixture: " + to_string(family));
  }
}

ExtendedNetwork extended_tree(int h) {
  ExtendedNetwork ext = identity_extension(binary_tree(h));
  const int inner = (1 << h) - 1;
  for (int i = 0; i < inner; ++i) {
    ext.orders[i] = 2;
    ext.heterogeneous[i] = 1;
  }
  return ext;
}

ExtendedNetwork extended_bifurcation(int h) {
  ExtendedNetwork ext = identity_extension(bifurcation(h));
  for (int k = 1; k <= h / 2; ++k) {
    ext.orders[h + 2 * k - 1] = 2;  // node h+2k, 1-based
    ext.heterogeneous[h + 2 * k - 1] = 1;
  }
  return ext;
}

}  // namespace

StructuredNetwork generate_network(const CaseStudyId& id) {
  if (id.extended) throw ValidationError("extended variant requested; use generate_extended");
  switch (id.family) {
    case CaseFamily::BinaryTree: return binary_tree(id.height);
    case CaseFamily::Bifurcation: return bifurcation(id.height);
    case CaseFamily::Fig1a:
    case CaseFamily::Fig2a:
    case CaseFamily::Fig2b:
    case CaseFamily::Fig2c:
    case CaseFamily::Fig2d: return fixed_network(id.family);
    default:
      throw ValidationError(to_string(id.family) + " is an extension; use generate_extended");
  }
}

ExtendedNetwork generate_extended(const CaseStudyId& id) {
  switch (id.family) {
    case CaseFamily::BinaryTree: return extended_tree(id.height);
    case CaseFamily::Bifurcation: return extended_bifurcation(id.height);
    case CaseFamily::Fig3a:
    case CaseFamily::Fig3b:
    case CaseFamily::Fig3c: {
      const CaseFamily base = rewrite_source(id.family);
      return extend_x_network(fixed_network(base), fixture_cover(base)).result;
    }
    default:
      throw ValidationError(to_string(id.family) + " has no pinned extension; it is a base network");
  }
}

std::variant<StructuredNetwork, ExtendedNetwork> generate(const CaseStudyId& id) {
  switch (id.family) {
    case CaseFamily::Fig3a:
    case CaseFamily::Fig3b:
    case CaseFamily::Fig3c: return generate_extended(id);
    default: break;
  }
  if (id.extended) return generate_extended(id);
  return generate_network(id);
}

CaseMetrics expected_metrics(const CaseStudyId& id) {
  CaseMetrics m;
  switch (id.family) {
    case CaseFamily::BinaryTree: {
      if (id.height < 0) throw ValidationError("tree height must be >= 0");
      const int h = id.height;
      m.d_c = h + 1;
      m.s_first_order = (1 << (h + 1)) - (h + 2);
      m.s_hat = (1 << h) - 1;
      break;
    }
    case CaseFamily::Bifurcation: {
      if (id.height < 2 || id.height % 2 != 0)
        throw ValidationError("bifurcation height must be even and >= 2");
      const int h = id.height;
      m.d_c = h + 1;
      m.s_first_order = h;
      m.s_hat = h / 2;
      break;
    }
    default:
      throw ValidationError("closed-form metrics exist only for the parametric families");
  }
  m.delta = m.s_first_order - m.s_hat;
  return m;
}

PathCycleCover fixture_cover(CaseFamily family) {
  PathCycleCover cover;
  switch (family) {
    case CaseFamily::Fig2a:
      cover.stems = {{0, {0, 2, 3, 5}}, {1, {1, 2, 4, 6}}};
      break;
    case CaseFamily::Fig2b:
      cover.stems = {{0, {0, 1, 2, 3}}};
      cover.cycles = {{1, 4, 5}};
      break;
    case CaseFamily::Fig2c:
      cover.stems = {{0, {0, 1}}};
      cover.cycles = {{2, 3, 4}, {4, 5, 6}};
      break;
    default:
      throw ValidationError("no pinned cover for " + to_string(family));
  }
  return cover;
}

}  // namespace strucnet
