#include <doctest.h>

#include <algorithm>
#include <vector>

#include "strucnet/cases.hpp"
#include "strucnet/classify.hpp"
#include "strucnet/cover.hpp"
#include "strucnet/errors.hpp"
#include "strucnet/extend.hpp"
#include "strucnet/network.hpp"
#include "test_support.hpp"

using namespace strucnet;

namespace {

int expanded_dimension(const ExtendedNetwork& ext) {
  return generic_dimension(expanded_graph(ext)).d_c;
}

}  // namespace

TEST_CASE("shared-node rewrite on the two-stem fixture") {
  const auto net = ts::fig(CaseFamily::Fig2a);
  const auto plan = extend_x_network(net, fixture_cover(CaseFamily::Fig2a));

  CHECK(plan.result.orders == std::vector<int>{1, 1, 2, 1, 1, 1, 1});
  CHECK(std::count(plan.result.heterogeneous.begin(), plan.result.heterogeneous.end(), 1) == 0);
  CHECK(plan.modified_subsystems == std::vector<int>{2});
  CHECK(plan.s_hat == 1);
  CHECK(plan.s_first_order == 2);  // 7 - d_c
  CHECK(plan.delta == 1);
  CHECK(plan.result.total_order() == 8);

  // certificate: both stems thread through their own copy of the shared node
  REQUIRE(plan.certificate.has_value());
  const auto g = expanded_graph(plan.result);
  const auto check = check_cover(g, *plan.certificate);
  CHECK(check.valid);
  CHECK(check.vertex_disjoint);
  CHECK(check.covers_all_states);
  REQUIRE(plan.certificate->stems.size() == 2);
  CHECK(plan.certificate->stems[0].nodes == std::vector<int>{0, 2, 4, 6});
  CHECK(plan.certificate->stems[1].nodes == std::vector<int>{1, 3, 5, 7});

  CHECK(expanded_dimension(plan.result) == 8);
}

TEST_CASE("shared-node rewrite on the stem/cycle fixture") {
  const auto plan = extend_x_network(ts::fig(CaseFamily::Fig2b), fixture_cover(CaseFamily::Fig2b));
  CHECK(plan.result.orders == std::vector<int>{1, 2, 1, 1, 1, 1});
  CHECK(plan.result.total_order() == 7);
  CHECK(plan.s_hat == 1);
  CHECK(plan.s_first_order == 2);
  CHECK(plan.delta == 1);
  CHECK(expanded_dimension(plan.result) == 7);
}

TEST_CASE("shared-node rewrite on the two-cycle fixture") {
  const auto plan = extend_x_network(ts::fig(CaseFamily::Fig2c), fixture_cover(CaseFamily::Fig2c));
  CHECK(plan.result.orders == std::vector<int>{1, 1, 1, 1, 2, 1, 1});
  CHECK(plan.result.total_order() == 8);
  CHECK(plan.s_hat == 1);
  CHECK(plan.s_first_order == 1);
  CHECK(plan.delta == 0);
  CHECK(expanded_dimension(plan.result) == 8);
}

TEST_CASE("a node used by a stem and two cycles becomes a third-order subsystem") {
  // input -> 1; 1 <-> 2 and 1 <-> 3 form two cycles through node 1
  const auto net = ts::make_net(3, 1, {{0, 1}, {1, 0}, {0, 2}, {2, 0}}, {{0, 0}});
  PathCycleCover cover;
  cover.stems = {{0, {0}}};
  cover.cycles = {{0, 1}, {0, 2}};
  const auto plan = extend_x_network(net, cover);
  CHECK(plan.result.orders == std::vector<int>{3, 1, 1});
  CHECK(plan.s_hat == 1);
  CHECK(expanded_dimension(plan.result) == 5);
}

TEST_CASE("the rewrite rejects covers it cannot realize") {
  const auto net = ts::fig(CaseFamily::Fig2d);
  SUBCASE("two stems from one input") {
    PathCycleCover cover;
    cover.stems = {{0, {0, 1, 2, 3}}, {0, {0, 4, 5, 6}}};
    CHECK_THROWS_AS(extend_x_network(net, cover), PreconditionError);
  }
  SUBCASE("cover missing nodes") {
    PathCycleCover cover;
    cover.stems = {{0, {0, 1, 2, 3}}};
    CHECK_THROWS_AS(extend_x_network(net, cover), PreconditionError);
  }
  SUBCASE("invalid cover") {
    PathCycleCover cover;
    cover.stems = {{0, {1, 2}}};
    CHECK_THROWS_AS(extend_x_network(ts::fig(CaseFamily::Fig2b), cover), PreconditionError);
  }
}

TEST_CASE("general two-step procedure on the branching fixture") {
  const auto net = ts::fig(CaseFamily::Fig2d);
  const auto plan = extend_general(net);

  CHECK(plan.result.orders == std::vector<int>{2, 1, 1, 1, 1, 1, 1});
  CHECK(plan.result.heterogeneous == std::vector<char>{1, 0, 0, 0, 1, 1, 1});
  CHECK(plan.modified_subsystems == std::vector<int>{0, 4, 5, 6});
  CHECK(plan.s_hat == 4);
  CHECK(plan.s_first_order == 3);
  CHECK(plan.delta == -1);

  // synthesized base cover: one stem per branch, both rooted at the input
  CHECK(plan.base_cover.stems.size() == 2);
  CHECK(plan.base_cover.stems[0].nodes == std::vector<int>{0, 1, 2, 3});
  CHECK(plan.base_cover.stems[1].nodes == std::vector<int>{0, 4, 5, 6});

  REQUIRE(plan.certificate.has_value());
  const auto g = expanded_graph(plan.result);
  const auto check = check_cover(g, *plan.certificate);
  CHECK(check.valid);
  CHECK(check.vertex_disjoint);
  CHECK(check.covers_all_states);
  CHECK(expanded_dimension(plan.result) == 8);
}

TEST_CASE("general procedure is the identity on structurally controllable input") {
  const auto net = ts::make_net(3, 1, {{0, 1}, {1, 2}, {2, 0}}, {{0, 0}});
  const auto plan = extend_general(net);
  CHECK(plan.result.orders == std::vector<int>{1, 1, 1});
  CHECK(plan.s_hat == 0);
  CHECK(plan.delta == plan.s_first_order);
  CHECK(expanded_dimension(plan.result) == 3);
}

TEST_CASE("general procedure accepts an explicit cover") {
  const auto net = ts::fig(CaseFamily::Fig2d);
  PathCycleCover cover;
  cover.stems = {{0, {0, 1, 2, 3}}, {0, {0, 4, 5, 6}}};
  const auto plan = extend_general(net, cover);
  CHECK(plan.s_hat == 4);
  CHECK(expanded_dimension(plan.result) == plan.result.total_order());
}

TEST_CASE("general procedure handles the mixed example end to end") {
  const auto net =
      ts::make_net(5, 2, {{0, 1}, {1, 2}, {0, 3}, {3, 4}}, {{0, 0}, {1, 2}});
  const auto plan = extend_general(net);
  CHECK(expanded_dimension(plan.result) == plan.result.total_order());
}

TEST_CASE("synthesized covers are deterministic and valid") {
  const auto g = system_graph(ts::fig(CaseFamily::Fig2d));
  const auto cover = synthesize_cover(g);
  REQUIRE(cover.stems.size() == 2);
  CHECK(cover.stems[0].nodes == std::vector<int>{0, 1, 2, 3});
  CHECK(cover.stems[1].nodes == std::vector<int>{0, 4, 5, 6});
  const auto again = synthesize_cover(g);
  CHECK(again.stems.size() == cover.stems.size());
  CHECK(again.stems[0].nodes == cover.stems[0].nodes);
  CHECK(again.stems[1].nodes == cover.stems[1].nodes);
}

TEST_CASE("first-order minimum equals the dimension defect") {
  CHECK(first_order_minimum(ts::fig(CaseFamily::Fig2d)) == 3);
  CHECK(first_order_minimum(generate_network({CaseFamily::BinaryTree, 2, false})) == 4);
  CHECK(first_order_minimum(ts::make_net(3, 1, {{0, 1}, {1, 2}, {2, 0}}, {{0, 0}})) == 0);
}

TEST_CASE("modified-subsystem bounds for class Y networks") {
  const auto bif = generate_network({CaseFamily::Bifurcation, 4, false});
  const auto b = heterogeneity_bounds(bif, 2);
  CHECK(b.z_size == 5);
  CHECK(b.lower == 2);
  CHECK(b.upper == 4);
  CHECK(b.n_hat_max == 2);

  const auto wide = heterogeneity_bounds(bif, 4);
  CHECK(wide.lower == 1);
  CHECK(wide.upper == 4);

  CHECK_THROWS_AS(heterogeneity_bounds(ts::fig(CaseFamily::Fig2a), 2), PreconditionError);
}

TEST_CASE("plans derived from pinned extensions carry the advantage index") {
  const auto plan = plan_from_extension(generate_extended({CaseFamily::BinaryTree, 2, true}));
  CHECK(plan.s_first_order == 4);
  CHECK(plan.s_hat == 3);
  CHECK(plan.delta == 1);
  CHECK(delta_index(plan) == 1);

  const auto bif = plan_from_extension(generate_extended({CaseFamily::Bifurcation, 4, true}));
  CHECK(bif.s_first_order == 4);
  CHECK(bif.s_hat == 2);
  CHECK(bif.delta == 2);
}
