#pragma once

#include "tropmed/fw_set.hpp"
#include "tropmed/trees.hpp"
#include "tropmed/tropical.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tropmed {

struct ConsensusResult {
  PhyloTree tree;
  Ultrametric ultrametric;
  std::vector<TropicalPoint> vertices;  // deduplicated tropical vertices
  int fw_dimension = 0;
  int tropical_vertex_count = 0;
  Rat p_star;
};

struct ConsensusOptions {
  // Stretch leaf edges of non-equidistant inputs instead of rejecting them.
  bool adjust_equidistant = false;
};

// Tropical median consensus: embeds the input trees as distance vectors,
// computes their Fermat-Weber polytrope and averages its tropical vertices.
// The average lives in the tree space again; it is reported at the height
// of the tallest input tree. A weight w counts a tree as w copies, handled
// by scaling the transport marginals rather than by repeating rows.
ConsensusResult tropical_median(const std::vector<PhyloTree>& trees,
                                const ConsensusOptions& options = {});
ConsensusResult tropical_median(const std::vector<PhyloTree>& trees,
                                const std::vector<Int>& weights,
                                const ConsensusOptions& options = {});

struct RegularityReport {
  bool unanimity = false;
  bool anonymity = false;
  bool neutrality = false;
  std::vector<std::string> violations;

  bool ok() const { return unanimity && anonymity && neutrality; }
};

// Spot-checks the consensus method on the given inputs: copies of one tree
// reproduce it exactly, shuffling the inputs changes nothing, and renaming
// taxa commutes with the method. Randomized choices come from the seed.
RegularityReport verify_regularity(const std::vector<PhyloTree>& trees,
                                   std::uint64_t seed);

}  // namespace tropmed
