#pragma once

#include "tropmed/rational.hpp"
#include "tropmed/trees.hpp"
#include "tropmed/tropical.hpp"

#include <iosfwd>
#include <vector>

namespace tropmed {

// One site per line, fields comma-, tab- or space-separated, entries exact
// decimals or "p/q". Lines starting with '#' and blank lines are skipped.
SiteMatrix read_site_matrix(std::istream& in, bool skip_header = false);

// One Newick string per line; '#' comments and blank lines are skipped.
std::vector<PhyloTree> read_newick_file(std::istream& in);

// One positive integer weight per line (comments as above).
std::vector<Int> read_weights(std::istream& in);

// Header row of pair labels "A|B", then one distance vector per line.
void write_ultrametric_csv(std::ostream& out,
                           const std::vector<Ultrametric>& rows);
std::vector<Ultrametric> read_ultrametric_csv(std::istream& in);

}  // namespace tropmed
