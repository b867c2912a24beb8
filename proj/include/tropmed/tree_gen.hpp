#pragma once

#include "tropmed/trees.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace tropmed {

// Taxon names for generated trees: single letters up to 26 taxa, zero-padded
// "T01", "T02", ... beyond that (padding keeps the sort order sane).
std::vector<std::string> default_taxa(int count);

// Random equidistant tree: a binary topology grown by attaching one leaf at
// a time to a uniformly random edge (or above the root), integer edge
// lengths in [1, max_len], leaf edges then stretched to the deepest level.
// Fully determined by the generator state.
PhyloTree random_equidistant_tree(std::mt19937_64& rng,
                                  const std::vector<std::string>& taxa,
                                  int max_len = 8);

// Uniform integer in [0, bound) by rejection; stable across platforms.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

}  // namespace tropmed
