#include "tropmed/consensus.hpp"

#include "doctest.h"
#include "test_helpers.hpp"
#include "tropmed/tree_gen.hpp"

#include <algorithm>
#include <numeric>

using namespace tropmed;

namespace {

std::vector<PhyloTree> parse_all(std::initializer_list<const char*> texts) {
  std::vector<PhyloTree> trees;
  for (const char* s : texts) trees.push_back(parse_newick(s));
  return trees;
}

}  // namespace

TEST_CASE("median of the two four-taxa trees") {
  ConsensusResult result =
      tropical_median(parse_all({testing::kTreeT1, testing::kTreeT2}));
  CHECK(emit_newick(result.tree) == testing::kMedianT1T2);
  CHECK(result.fw_dimension == 0);
  CHECK(result.tropical_vertex_count == 1);
  CHECK(is_ultrametric(result.ultrametric.d, 4));
}

TEST_CASE("weighted five-tree instance gives the same median") {
  auto trees = parse_all({testing::kTreeT1, testing::kTreeT2, testing::kTreeT3});
  ConsensusResult weighted =
      tropical_median(trees, {Int(2), Int(2), Int(1)});
  CHECK(emit_newick(weighted.tree) == testing::kMedianT1T2);

  // literal copies agree with marginal scaling
  ConsensusResult literal = tropical_median(
      parse_all({testing::kTreeT1, testing::kTreeT1, testing::kTreeT2,
                 testing::kTreeT2, testing::kTreeT3}));
  CHECK(literal.ultrametric == weighted.ultrametric);
  CHECK(literal.p_star == weighted.p_star);
}

TEST_CASE("median of the three nine-leaf trees") {
  ConsensusResult result = tropical_median(parse_all(
      {testing::kNineLeafA, testing::kNineLeafB, testing::kNineLeafC}));

  // cherries CD, EF, HI; GHI above HI; everything but A below the root
  std::set<std::vector<std::string>> expected = {
      {"C", "D"},
      {"E", "F"},
      {"H", "I"},
      {"G", "H", "I"},
      {"B", "C", "D", "E", "F", "G", "H", "I"},
      {"A", "B", "C", "D", "E", "F", "G", "H", "I"}};
  CHECK(topology_clades(result.tree) == expected);

  // exact heights, frozen from the solver output
  CHECK(emit_newick(result.tree) ==
        "(A:8,(B:7,(C:1,D:1):6,(E:1,F:1):6,(G:2,(H:1,I:1):1):5):1);");
  CHECK(result.fw_dimension == 0);
}

TEST_CASE("unanimity holds exactly") {
  std::mt19937_64 rng(24601);
  for (int round = 0; round < 10; ++round) {
    int n = 3 + static_cast<int>(uniform_below(rng, 5));
    PhyloTree t = random_equidistant_tree(rng, default_taxa(n));
    int copies = 1 + static_cast<int>(uniform_below(rng, 5));
    ConsensusResult result =
        tropical_median(std::vector<PhyloTree>(copies, t));
    CHECK(result.ultrametric == tree_to_ultrametric(t));
    CHECK(emit_newick(result.tree) == emit_newick(ultrametric_to_tree(
                                          tree_to_ultrametric(t))));
  }
}

TEST_CASE("the median stays in the polytrope and in tree space") {
  std::mt19937_64 rng(1871);
  for (int round = 0; round < 20; ++round) {
    int n = 3 + static_cast<int>(uniform_below(rng, 4));
    int m = 1 + static_cast<int>(uniform_below(rng, 5));
    std::vector<PhyloTree> trees;
    auto taxa = default_taxa(n);
    for (int i = 0; i < m; ++i)
      trees.push_back(random_equidistant_tree(rng, taxa));
    ConsensusResult result = tropical_median(trees);

    CHECK(is_ultrametric(result.ultrametric.d, n));

    std::vector<std::vector<Rat>> rows;
    for (const PhyloTree& t : trees)
      rows.push_back(tree_to_ultrametric(t).d);
    SiteMatrix sites(std::move(rows));
    Polytrope poly = fw_polytrope(sites);
    CHECK(contains(poly, TropicalPoint(result.ultrametric.d)));
    CHECK(fw_objective(sites, TropicalPoint(result.ultrametric.d)) ==
          result.p_star);

    // Every vertex lies in tree space. The vertex average sits in the
    // relative interior of the set, whose topology is constant; a vertex on
    // the boundary may contract interior edges to zero, so its clade set is
    // a subset of the median's.
    REQUIRE(!result.vertices.empty());
    Rat tallest = result.ultrametric.d[0];
    for (const Rat& v : result.ultrametric.d) tallest = std::max(tallest, v);
    auto median_clades = topology_clades(result.tree);
    for (const TropicalPoint& vertex : result.vertices) {
      std::vector<Rat> lifted = vertex.coords();
      Rat top = lifted[0];
      for (const Rat& c : lifted) top = std::max(top, c);
      for (Rat& c : lifted) c += tallest - top;
      REQUIRE(is_ultrametric(lifted, n));
      auto clades = topology_clades(
          ultrametric_to_tree(Ultrametric{result.ultrametric.taxa, lifted}));
      for (const auto& clade : clades) CHECK(median_clades.count(clade) == 1);
      if (result.fw_dimension == 0) CHECK(clades == median_clades);
    }

    // consensus keeps unanimous triplets and invents none
    std::vector<Ultrametric> inputs;
    for (const PhyloTree& t : trees) inputs.push_back(tree_to_ultrametric(t));
    ParetoReport pareto = check_pareto(inputs, result.ultrametric);
    CHECK(pareto.pareto);
    CHECK(pareto.copareto);

    int total_weight = m;
    int pairs = n * (n - 1) / 2;
    CHECK(result.fw_dimension <=
          std::min(n - 1, static_cast<int>(std::gcd(total_weight, pairs))) - 1);
  }
}

TEST_CASE("outlier robustness against the pointwise maximum") {
  auto trees = parse_all(
      {testing::kNineLeafA, testing::kNineLeafB, testing::kNineLeafC});
  ConsensusResult median =
      tropical_median(trees, {Int(1), Int(1), Int(1000000)});
  CHECK(topology_clades(median.tree) == topology_clades(trees[2]));

  std::vector<Ultrametric> inputs;
  for (const PhyloTree& t : trees) inputs.push_back(tree_to_ultrametric(t));
  PhyloTree peak = ultrametric_to_tree(pointwise_max_consensus(inputs));
  CHECK(topology_clades(peak) != topology_clades(median.tree));
  std::set<std::vector<std::string>> fig_peak = {
      {"C", "D"},
      {"E", "F"},
      {"G", "H", "I"},
      {"A", "B", "C", "D", "E", "F", "G", "H", "I"}};
  CHECK(topology_clades(peak) == fig_peak);
}

TEST_CASE("regularity checks pass on the fixed inputs") {
  RegularityReport report = verify_regularity(
      parse_all({testing::kNineLeafA, testing::kNineLeafB, testing::kNineLeafC}),
      42);
  CHECK(report.unanimity);
  CHECK(report.anonymity);
  CHECK(report.neutrality);
  CHECK(report.ok());
  CHECK(report.violations.empty());
}

TEST_CASE("input validation") {
  auto t1 = parse_newick(testing::kTreeT1);
  auto other = parse_newick("(A:1,X:1);");
  CHECK_THROWS_AS(tropical_median({t1, other}), std::invalid_argument);

  auto skewed = parse_newick("(A:1,(B:2,C:1):1);");
  CHECK_THROWS_AS(tropical_median({skewed}), std::invalid_argument);
  ConsensusOptions adjust;
  adjust.adjust_equidistant = true;
  ConsensusResult fixed = tropical_median({skewed}, adjust);
  CHECK(fixed.tree.is_equidistant());

  CHECK_THROWS_AS(tropical_median({t1}, {Int(1), Int(2)}),
                  std::invalid_argument);
  CHECK_THROWS_AS(tropical_median({}), std::invalid_argument);
}

TEST_CASE("two taxa collapse to the tallest input") {
  auto trees = parse_all({"(A:1,B:1);", "(A:3,B:3);"});
  ConsensusResult result = tropical_median(trees);
  CHECK(emit_newick(result.tree) == "(A:3,B:3);");
}
