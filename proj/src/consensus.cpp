#include "tropmed/consensus.hpp"

#include "tropmed/tree_gen.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace tropmed {

namespace {

std::vector<Ultrametric> embed_inputs(const std::vector<PhyloTree>& trees,
                                      const ConsensusOptions& options) {
  if (trees.empty()) throw std::invalid_argument("no input trees");
  const std::vector<std::string>& taxa = trees[0].taxa();
  if (taxa.size() < 2) throw std::invalid_argument("need at least two taxa");

  std::vector<Ultrametric> inputs;
  inputs.reserve(trees.size());
  for (const PhyloTree& t : trees) {
    if (t.taxa() != taxa)
      throw std::invalid_argument("input trees carry different taxa sets");
    if (!t.is_equidistant() && !options.adjust_equidistant)
      throw std::invalid_argument(
          "input tree is not equidistant (pass the adjust option to stretch "
          "leaf edges)");
    inputs.push_back(tree_to_ultrametric(
        t.is_equidistant() ? t : make_equidistant(t)));
  }
  return inputs;
}

}  // namespace

ConsensusResult tropical_median(const std::vector<PhyloTree>& trees,
                                const ConsensusOptions& options) {
  return tropical_median(trees, std::vector<Int>(trees.size(), Int(1)),
                         options);
}

ConsensusResult tropical_median(const std::vector<PhyloTree>& trees,
                                const std::vector<Int>& weights,
                                const ConsensusOptions& options) {
  std::vector<Ultrametric> inputs = embed_inputs(trees, options);
  if (weights.size() != trees.size())
    throw std::invalid_argument("one weight per tree required");

  const std::vector<std::string>& taxa = inputs[0].taxa;
  Rat tallest = inputs[0].d[0];
  for (const Ultrametric& u : inputs)
    for (const Rat& entry : u.d) tallest = std::max(tallest, entry);

  // Two taxa leave a single coordinate; the torus is a point and the median
  // is just the tallest representative.
  if (taxa.size() == 2) {
    Ultrametric result{taxa, {tallest}};
    ConsensusResult out{ultrametric_to_tree(result), result,
                        {},           0, 1, Rat(0)};
    return out;
  }

  std::vector<std::vector<Rat>> rows;
  rows.reserve(inputs.size());
  for (const Ultrametric& u : inputs) rows.push_back(u.d);
  SiteMatrix sites(std::move(rows));

  Polytrope poly = fw_polytrope(sites, weights);
  std::vector<TropicalPoint> vertices = tropical_vertices(poly);

  const int n = sites.cols();
  std::vector<Rat> average(n, Rat(0));
  for (const TropicalPoint& v : vertices)
    for (int j = 0; j < n; ++j) average[j] += v[j];
  for (Rat& c : average) c /= static_cast<int>(vertices.size());

  // lift the torus point to the representative at the tallest input height
  Rat top = average[0];
  for (const Rat& c : average) top = std::max(top, c);
  Rat shift = tallest - top;
  for (Rat& c : average) c += shift;

  if (!is_ultrametric(average, static_cast<int>(taxa.size())))
    throw std::logic_error("tropical median left the tree space");

  Ultrametric result{taxa, std::move(average)};
  ConsensusResult out{ultrametric_to_tree(result),
                      result,
                      std::move(vertices),
                      dimension(poly),
                      0,
                      poly.p_star};
  out.tropical_vertex_count = static_cast<int>(out.vertices.size());
  return out;
}

RegularityReport verify_regularity(const std::vector<PhyloTree>& trees,
                                   std::uint64_t seed) {
  if (trees.empty()) throw std::invalid_argument("no input trees");
  std::mt19937_64 rng(seed);
  RegularityReport report;
  report.unanimity = report.anonymity = report.neutrality = true;

  // unanimity: m copies of one tree give that tree back, exactly
  for (int round = 0; round < 3; ++round) {
    const PhyloTree& pick =
        trees[uniform_below(rng, trees.size())];
    int copies = 1 + static_cast<int>(uniform_below(rng, 4));
    std::vector<PhyloTree> batch(copies, pick);
    ConsensusResult median = tropical_median(batch);
    if (median.ultrametric != tree_to_ultrametric(pick)) {
      report.unanimity = false;
      report.violations.push_back("unanimity broken on " + emit_newick(pick) +
                                  " with " + std::to_string(copies) +
                                  " copies");
    }
  }

  ConsensusResult baseline = tropical_median(trees);

  // anonymity: input order is irrelevant
  for (int round = 0; round < 3; ++round) {
    std::vector<PhyloTree> shuffled = trees;
    for (size_t i = shuffled.size(); i > 1; --i)
      std::swap(shuffled[i - 1], shuffled[uniform_below(rng, i)]);
    ConsensusResult median = tropical_median(shuffled);
    if (median.ultrametric != baseline.ultrametric) {
      report.anonymity = false;
      report.violations.push_back("anonymity broken on shuffle round " +
                                  std::to_string(round));
    }
  }

  // neutrality: renaming taxa commutes with the method
  const std::vector<std::string>& taxa = trees[0].taxa();
  for (int round = 0; round < 3; ++round) {
    std::vector<std::string> image = taxa;
    for (size_t i = image.size(); i > 1; --i)
      std::swap(image[i - 1], image[uniform_below(rng, i)]);
    std::vector<std::pair<std::string, std::string>> mapping;
    for (size_t i = 0; i < taxa.size(); ++i)
      mapping.emplace_back(taxa[i], image[i]);

    std::vector<PhyloTree> renamed;
    renamed.reserve(trees.size());
    for (const PhyloTree& t : trees) renamed.push_back(relabel_taxa(t, mapping));
    ConsensusResult direct = tropical_median(renamed);
    PhyloTree expected = relabel_taxa(baseline.tree, mapping);
    if (tree_to_ultrametric(direct.tree) != tree_to_ultrametric(expected)) {
      report.neutrality = false;
      report.violations.push_back("neutrality broken on relabeling round " +
                                  std::to_string(round));
    }
  }
  return report;
}

}  // namespace tropmed
