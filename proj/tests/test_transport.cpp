#include "tropmed/transport.hpp"

#include "doctest.h"
#include "test_helpers.hpp"
#include "tropmed/fw_set.hpp"

using namespace tropmed;
using testing::golden_sites;

TEST_CASE("northwest corner staircase in a 6x9 grid") {
  std::vector<Rat> rows(6, Rat(1, 6)), cols(9, Rat(1, 9));
  TransportPlan plan = northwest_corner(rows, cols);
  std::vector<std::pair<int, int>> expected = {
      {0, 0}, {0, 1}, {1, 1}, {1, 2}, {1, 3}, {2, 3}, {2, 4},
      {3, 4}, {3, 5}, {3, 6}, {4, 6}, {4, 7}, {5, 7}, {5, 8}};
  CHECK(plan.basis == expected);
  CHECK(plan.row_sums() == rows);
  CHECK(plan.col_sums() == cols);
}

TEST_CASE("northwest corner corner cases") {
  TransportPlan single = northwest_corner({Rat(5)}, {Rat(5)});
  CHECK(single.basis == std::vector<std::pair<int, int>>{{0, 0}});
  CHECK(single.flow[0][0] == 5);

  // uniform 2x2 with the East tie-break
  TransportPlan square = northwest_corner({Rat(2), Rat(2)}, {Rat(2), Rat(2)});
  CHECK(square.basis ==
        std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 1}});
  CHECK(square.flow[0][0] == 2);
  CHECK(square.flow[0][1] == 0);
  CHECK(square.flow[1][1] == 2);

  CHECK_THROWS_AS(northwest_corner({Rat(1)}, {Rat(2)}), std::invalid_argument);
  CHECK_THROWS_AS(northwest_corner({Rat(0), Rat(2)}, {Rat(1), Rat(1)}),
                  std::invalid_argument);
}

TEST_CASE("golden instance solves to the unique optimal plan") {
  SiteMatrix sites = golden_sites();
  TransportPlan plan = solve_transportation(sites);
  CHECK(plan.objective == 72);

  std::vector<std::vector<Rat>> expected = {{Rat(3), Rat(0), Rat(0)},
                                            {Rat(2), Rat(0), Rat(1)},
                                            {Rat(0), Rat(0), Rat(3)},
                                            {Rat(0), Rat(3), Rat(0)},
                                            {Rat(0), Rat(2), Rat(1)}};
  CHECK(plan.flow == expected);

  // the support is spanning here, so it coincides with the basis
  std::vector<std::pair<int, int>> support;
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 3; ++j)
      if (plan.flow[i][j] != 0) support.emplace_back(i, j);
  CHECK(plan.basis == support);
}

TEST_CASE("single site instance") {
  SiteMatrix one({{Rat(4), Rat(-1), Rat(3)}});
  TransportPlan plan = solve_transportation(one);
  for (int j = 0; j < 3; ++j) CHECK(plan.flow[0][j] == 1);
  CHECK(plan.objective == 0);

  PrimalSolution prim = recover_primal(plan, one);
  CHECK(prim.x == one.normalized_row(0));
  CHECK(prim.t == std::vector<Rat>{Rat(0)});
  CHECK(prim.value == 0);
  CHECK(d_asym(one.normalized_row(0), prim.x) == 0);
}

TEST_CASE("primal recovery on the golden instance") {
  SiteMatrix sites = golden_sites();
  PrimalSolution prim = recover_primal(solve_transportation(sites), sites);
  CHECK(prim.t == std::vector<Rat>{Rat(5), Rat(4), Rat(5), Rat(7), Rat(3)});
  CHECK(prim.x.coords() == std::vector<Rat>{Rat(9), Rat(-6), Rat(-3)});
  CHECK(prim.value == 72);
}

TEST_CASE("duality and complementary slackness on random instances") {
  testing::Rng rng(5317);
  for (int round = 0; round < 120; ++round) {
    int m = static_cast<int>(rng.int_in(1, 6));
    int n = static_cast<int>(rng.int_in(2, 5));
    SiteMatrix sites = rng.sites(m, n);
    TransportPlan plan = solve_transportation(sites);
    PrimalSolution prim = recover_primal(plan, sites);

    // strong duality
    CHECK(prim.value == plan.objective);

    // feasibility of the plan
    for (const Rat& s : plan.row_sums()) CHECK(s == n);
    for (const Rat& s : plan.col_sums()) CHECK(s == m);

    // tightness where flow is positive, feasibility everywhere
    for (int i = 0; i < m; ++i) {
      TropicalPoint row = sites.normalized_row(i);
      for (int j = 0; j < n; ++j) {
        CHECK(prim.t[i] + prim.x[j] >= row[j]);
        if (plan.flow[i][j] > 0) CHECK(prim.t[i] + prim.x[j] == row[j]);
      }
    }

    // the support sits inside the covector of the recovered point
    Covector cov = covector_of(prim.x, sites);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < n; ++j)
        if (plan.flow[i][j] > 0)
          CHECK(std::find(cov.edges.begin(), cov.edges.end(),
                          std::make_pair(i, j)) != cov.edges.end());
    for (const auto& [i, j] : plan.basis) {
      TropicalPoint row = sites.normalized_row(i);
      CHECK(prim.t[i] + prim.x[j] == row[j]);
    }

    // weak duality against an arbitrary feasible plan
    TransportPlan feasible = northwest_corner(plan.row_sums(), plan.col_sums());
    Rat feasible_value = 0;
    for (int i = 0; i < m; ++i) {
      TropicalPoint row = sites.normalized_row(i);
      for (int j = 0; j < n; ++j)
        feasible_value += row[j] * feasible.flow[i][j];
    }
    CHECK(feasible_value <= plan.objective);
  }
}

TEST_CASE("integral marginals give integral plans") {
  testing::Rng rng(2718);
  for (int round = 0; round < 60; ++round) {
    SiteMatrix sites = rng.sites(static_cast<int>(rng.int_in(1, 5)),
                                 static_cast<int>(rng.int_in(2, 5)));
    TransportPlan plan = solve_transportation(sites);
    for (const auto& row : plan.flow)
      for (const Rat& f : row) CHECK(denominator(f) == 1);
  }
}

TEST_CASE("objective and recovered point ignore row and global shifts") {
  testing::Rng rng(1414);
  for (int round = 0; round < 40; ++round) {
    int m = static_cast<int>(rng.int_in(1, 5));
    int n = static_cast<int>(rng.int_in(2, 4));
    SiteMatrix sites = rng.sites(m, n);
    TransportPlan base = solve_transportation(sites);
    TropicalPoint base_x = recover_primal(base, sites).x;

    std::vector<std::vector<Rat>> shifted;
    Rat global = rng.rat();
    for (int i = 0; i < m; ++i) {
      std::vector<Rat> row = sites.row(i);
      Rat c = rng.rat();
      for (Rat& v : row) v += c + global;
      shifted.push_back(std::move(row));
    }
    SiteMatrix moved(std::move(shifted));
    TransportPlan again = solve_transportation(moved);
    CHECK(again.objective == base.objective);
    CHECK(recover_primal(again, moved).x == base_x);
  }
}

TEST_CASE("duplicate rows are legitimate sites") {
  SiteMatrix doubled({{Rat(0), Rat(0)}, {Rat(0), Rat(0)}, {Rat(4), Rat(0)}});
  TransportPlan plan = solve_transportation(doubled);
  PrimalSolution prim = recover_primal(plan, doubled);
  // two coincident sites outvote the third
  CHECK(prim.x == doubled.normalized_row(0));
}

TEST_CASE("recovery rejects defective inputs") {
  SiteMatrix sites = golden_sites();
  TransportPlan plan = solve_transportation(sites);
  TransportPlan broken = plan;
  broken.basis.pop_back();
  CHECK_THROWS_AS(recover_primal(broken, sites), std::logic_error);

  // feasible but nowhere near optimal
  TransportPlan raw = northwest_corner(plan.row_sums(), plan.col_sums());
  CHECK_THROWS_AS(recover_primal(raw, sites), std::invalid_argument);
}
