#pragma once

#include "tropmed/rational.hpp"

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tropmed {

struct TreeNode {
  int parent = -1;
  std::vector<int> children;
  Rat height;         // distance down to the deepest leaf level
  std::string label;  // nonempty exactly for leaves
};

// A rooted metric tree with labeled leaves. Node heights decrease towards
// the leaves; the edge to the parent has length parent.height - height. In
// an equidistant tree every leaf sits at height zero.
//
// Children are kept in canonical order: leaf children first sorted by label,
// then internal children sorted by their smallest descendant leaf label.
class PhyloTree {
 public:
  PhyloTree(std::vector<TreeNode> nodes, int root);

  int root() const { return root_; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  const TreeNode& node(int v) const { return nodes_[v]; }
  bool is_leaf(int v) const { return nodes_[v].children.empty(); }

  const std::vector<std::string>& taxa() const { return taxa_; }  // sorted
  int leaf_count() const { return static_cast<int>(taxa_.size()); }
  Rat root_height() const { return nodes_[root_].height; }

  bool is_equidistant() const;
  // Leaves strictly above the deepest leaf level; empty iff equidistant.
  std::vector<std::string> shallow_leaves() const;

 private:
  std::vector<TreeNode> nodes_;
  int root_ = -1;
  std::vector<std::string> taxa_;
};

// Parses a single Newick string. Branch lengths are required on every
// non-root node and parsed exactly; a root length is accepted and ignored.
// Internal node labels and negative lengths are rejected. Errors carry the
// offending position.
PhyloTree parse_newick(std::string_view text);

// Canonical Newick with exact lengths and a terminating ';'.
std::string emit_newick(const PhyloTree& t);

// Leaf distance vector of an equidistant tree, indexed by lexicographic
// taxon pairs (i < j).
struct Ultrametric {
  std::vector<std::string> taxa;  // sorted
  std::vector<Rat> d;             // size taxa.size() choose 2

  static int pair_index(int i, int j, int n);
  const Rat& at(int i, int j) const;
  int taxon_count() const { return static_cast<int>(taxa.size()); }

  friend bool operator==(const Ultrametric&, const Ultrametric&) = default;
};

struct TripleViolation {
  int i, j, k;
};

// First triple violating nonnegativity or the max-inequality, if any.
std::optional<TripleViolation> ultrametric_violation(const std::vector<Rat>& d,
                                                     int n_taxa);
bool is_ultrametric(const std::vector<Rat>& d, int n_taxa);

// d_ij = twice the height of the lowest common ancestor. The tree must be
// equidistant; otherwise the error lists the offending leaves.
Ultrametric tree_to_ultrametric(const PhyloTree& t);

// Single-linkage agglomeration: clusters at minimal distance delta merge
// into a node at height delta/2, simultaneous ties forming one
// multifurcation. Inverse of tree_to_ultrametric up to canonical form.
PhyloTree ultrametric_to_tree(const Ultrametric& u);

// Extends each leaf edge so that all leaves reach the deepest level;
// interior edges and all internal node heights stay untouched.
PhyloTree make_equidistant(const PhyloTree& t);

// i and j meet strictly below their meet with the outgroup k.
struct RootedTriplet {
  int low, high, out;  // taxon indices, low < high
  auto operator<=>(const RootedTriplet&) const = default;
};

std::set<RootedTriplet> rooted_triplets(const Ultrametric& u);
std::string triplet_label(const RootedTriplet& t,
                          const std::vector<std::string>& taxa);

struct ParetoReport {
  bool pareto = false;    // every unanimous triplet survives
  bool copareto = false;  // no invented triplets
  std::vector<RootedTriplet> pareto_witnesses;
  std::vector<RootedTriplet> copareto_witnesses;
};

ParetoReport check_pareto(const std::vector<Ultrametric>& inputs,
                          const Ultrametric& out);

// Coordinatewise maximum of the raw distance vectors. The result is again
// an ultrametric.
Ultrametric pointwise_max_consensus(const std::vector<Ultrametric>& inputs);

// Clade fingerprint: the descendant label set of every internal node.
// Two trees on the same taxa have equal fingerprints iff they share their
// topology.
std::set<std::vector<std::string>> topology_clades(const PhyloTree& t);

// Rebuilds the tree with leaves renamed through the given (old, new) pairs.
PhyloTree relabel_taxa(const PhyloTree& t,
                       const std::vector<std::pair<std::string, std::string>>&
                           mapping);

}  // namespace tropmed
