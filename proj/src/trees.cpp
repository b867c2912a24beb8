#include "tropmed/trees.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace tropmed {

namespace {

constexpr std::string_view kReserved = "():,;";

[[noreturn]] void syntax_error(size_t pos, const std::string& message) {
  throw std::invalid_argument("newick syntax error at position " +
                              std::to_string(pos) + ": " + message);
}

}  // namespace

PhyloTree::PhyloTree(std::vector<TreeNode> nodes, int root)
    : nodes_(std::move(nodes)), root_(root) {
  if (nodes_.empty() || root_ < 0 || root_ >= node_count())
    throw std::invalid_argument("malformed tree: bad root");

  for (int v = 0; v < node_count(); ++v) {
    const TreeNode& nd = nodes_[v];
    if ((nd.parent < 0) != (v == root_))
      throw std::invalid_argument("malformed tree: parent links");
    if (nd.children.empty()) {
      if (nd.label.empty())
        throw std::invalid_argument("malformed tree: unlabeled leaf");
      taxa_.push_back(nd.label);
    } else if (!nd.label.empty()) {
      throw std::invalid_argument("malformed tree: labeled internal node");
    }
    if (nd.parent >= 0 && nodes_[nd.parent].height < nd.height)
      throw std::invalid_argument("malformed tree: negative edge length");
    if (nd.children.empty() && nd.height < 0)
      throw std::invalid_argument("malformed tree: leaf below zero");
  }
  std::sort(taxa_.begin(), taxa_.end());
  if (std::adjacent_find(taxa_.begin(), taxa_.end()) != taxa_.end())
    throw std::invalid_argument("duplicate leaf label '" +
                                *std::adjacent_find(taxa_.begin(), taxa_.end()) +
                                "'");

  // Canonical child order: leaves by label, then internals by smallest
  // descendant label.
  std::vector<std::string> min_label(node_count());
  {
    // children before parents; doubles as a connectivity check
    std::vector<char> seen(node_count(), 0);
    std::vector<int> stack{root_}, post;
    seen[root_] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      post.push_back(v);
      for (int c : nodes_[v].children) {
        if (c < 0 || c >= node_count() || seen[c] || nodes_[c].parent != v)
          throw std::invalid_argument("malformed tree: child links");
        seen[c] = 1;
        stack.push_back(c);
      }
    }
    if (static_cast<int>(post.size()) != node_count())
      throw std::invalid_argument("malformed tree: unreachable nodes");
    for (auto it = post.rbegin(); it != post.rend(); ++it) {
      int v = *it;
      if (nodes_[v].children.empty()) {
        min_label[v] = nodes_[v].label;
      } else {
        min_label[v] = min_label[nodes_[v].children[0]];
        for (int c : nodes_[v].children)
          min_label[v] = std::min(min_label[v], min_label[c]);
      }
    }
  }
  for (TreeNode& nd : nodes_) {
    std::sort(nd.children.begin(), nd.children.end(), [&](int a, int b) {
      bool a_internal = !nodes_[a].children.empty();
      bool b_internal = !nodes_[b].children.empty();
      if (a_internal != b_internal) return b_internal;
      return min_label[a] < min_label[b];
    });
  }
}

bool PhyloTree::is_equidistant() const {
  for (int v = 0; v < node_count(); ++v)
    if (is_leaf(v) && nodes_[v].height != 0) return false;
  return true;
}

std::vector<std::string> PhyloTree::shallow_leaves() const {
  std::vector<std::string> out;
  for (int v = 0; v < node_count(); ++v)
    if (is_leaf(v) && nodes_[v].height != 0) out.push_back(nodes_[v].label);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

struct NewickParser {
  std::string_view text;
  size_t pos = 0;

  char peek() {
    skip_space();
    return pos < text.size() ? text[pos] : '\0';
  }
  void skip_space() {
    while (pos < text.size() &&
           std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  }
  void expect(char c) {
    if (peek() != c)
      syntax_error(pos, std::string("expected '") + c + "'");
    ++pos;
  }

  std::string read_label() {
    skip_space();
    size_t start = pos;
    while (pos < text.size() && kReserved.find(text[pos]) == std::string::npos &&
           !std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == start) syntax_error(pos, "expected a label");
    return std::string(text.substr(start, pos - start));
  }

  Rat read_length() {
    skip_space();
    size_t start = pos;
    while (pos < text.size() && kReserved.find(text[pos]) == std::string::npos &&
           !std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
    if (pos == start) syntax_error(pos, "expected a branch length");
    try {
      return parse_rational(text.substr(start, pos - start));
    } catch (const std::invalid_argument& e) {
      syntax_error(start, e.what());
    }
  }

  struct RawNode {
    int parent = -1;
    std::vector<int> children;
    Rat edge_length;  // to parent; unused for the root
    std::string label;
  };
  std::vector<RawNode> nodes;

  int parse_node(bool is_root) {
    int id = static_cast<int>(nodes.size());
    nodes.emplace_back();
    if (peek() == '(') {
      ++pos;
      for (;;) {
        int child = parse_node(false);
        nodes[id].children.push_back(child);
        nodes[child].parent = id;
        if (peek() == ',') {
          ++pos;
          continue;
        }
        break;
      }
      expect(')');
      char c = peek();
      if (c != ':' && c != ',' && c != ')' && c != ';' && c != '\0')
        syntax_error(pos, "internal node labels are not supported");
    } else {
      nodes[id].label = read_label();
    }
    if (peek() == ':') {
      ++pos;
      size_t at = pos;
      Rat len = read_length();
      if (len < 0) syntax_error(at, "negative branch length");
      if (!is_root) nodes[id].edge_length = len;
      // a root length carries no information and is ignored
    } else if (!is_root) {
      syntax_error(pos, "missing branch length");
    }
    return id;
  }
};

}  // namespace

PhyloTree parse_newick(std::string_view text) {
  NewickParser parser{text, 0, {}};
  int root = parser.parse_node(true);
  if (parser.peek() == ';') ++parser.pos;
  parser.skip_space();
  if (parser.pos != text.size())
    syntax_error(parser.pos, "trailing characters");

  const int count = static_cast<int>(parser.nodes.size());
  // depth from the root, then height = deepest depth - depth
  std::vector<Rat> depth(count, Rat(0));
  Rat deepest = 0;
  for (int v = 0; v < count; ++v) {  // parents precede children
    const auto& nd = parser.nodes[v];
    if (nd.parent >= 0) depth[v] = depth[nd.parent] + nd.edge_length;
    if (nd.children.empty() && depth[v] > deepest) deepest = depth[v];
  }
  std::vector<TreeNode> nodes(count);
  for (int v = 0; v < count; ++v) {
    nodes[v].parent = parser.nodes[v].parent;
    nodes[v].children = parser.nodes[v].children;
    nodes[v].label = parser.nodes[v].label;
    nodes[v].height = deepest - depth[v];
  }
  return PhyloTree(std::move(nodes), root);
}

namespace {

void emit_node(const PhyloTree& t, int v, std::string& out) {
  const TreeNode& nd = t.node(v);
  if (!t.is_leaf(v)) {
    out += '(';
    bool first = true;
    for (int c : nd.children) {
      if (!first) out += ',';
      first = false;
      emit_node(t, c, out);
    }
    out += ')';
  } else {
    out += nd.label;
  }
  if (nd.parent >= 0) {
    out += ':';
    out += format_rational(t.node(nd.parent).height - nd.height);
  }
}

}  // namespace

std::string emit_newick(const PhyloTree& t) {
  std::string out;
  emit_node(t, t.root(), out);
  out += ';';
  return out;
}

int Ultrametric::pair_index(int i, int j, int n) {
  if (i > j) std::swap(i, j);
  return i * (2 * n - i - 1) / 2 + (j - i - 1);
}

const Rat& Ultrametric::at(int i, int j) const {
  return d[pair_index(i, j, taxon_count())];
}

std::optional<TripleViolation> ultrametric_violation(const std::vector<Rat>& d,
                                                     int n_taxa) {
  const int n = n_taxa;
  if (static_cast<int>(d.size()) != n * (n - 1) / 2)
    throw std::invalid_argument("distance vector has the wrong length");
  // a negative entry (i,j) is reported as the degenerate triple (i,j,j)
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (d[Ultrametric::pair_index(i, j, n)] < 0)
        return TripleViolation{i, j, j};
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const Rat& dij = d[Ultrametric::pair_index(i, j, n)];
        const Rat& dik = d[Ultrametric::pair_index(i, k, n)];
        const Rat& djk = d[Ultrametric::pair_index(j, k, n)];
        // the maximum must be attained at least twice
        const Rat& top = std::max({dij, dik, djk});
        int hits = (dij == top) + (dik == top) + (djk == top);
        if (hits < 2) return TripleViolation{i, j, k};
      }
  return std::nullopt;
}

bool is_ultrametric(const std::vector<Rat>& d, int n_taxa) {
  return !ultrametric_violation(d, n_taxa).has_value();
}

Ultrametric tree_to_ultrametric(const PhyloTree& t) {
  if (!t.is_equidistant()) {
    std::string offenders;
    for (const std::string& leaf : t.shallow_leaves()) {
      if (!offenders.empty()) offenders += ", ";
      offenders += leaf;
    }
    throw std::invalid_argument(
        "tree is not equidistant; leaves above the deepest level: " +
        offenders);
  }
  const int n = t.leaf_count();
  if (n < 2)
    throw std::invalid_argument("need at least two taxa for a distance vector");

  Ultrametric u;
  u.taxa = t.taxa();
  u.d.assign(n * (n - 1) / 2, Rat(0));

  std::map<std::string, int> index;
  for (int i = 0; i < n; ++i) index[u.taxa[i]] = i;

  // leaf sets bottom-up; each pair gets its distance at the meet
  std::vector<std::vector<int>> leaves_below(t.node_count());
  std::vector<int> post;
  {
    std::vector<int> stack{t.root()};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      post.push_back(v);
      for (int c : t.node(v).children) stack.push_back(c);
    }
  }
  for (auto it = post.rbegin(); it != post.rend(); ++it) {
    int v = *it;
    if (t.is_leaf(v)) {
      leaves_below[v].push_back(index[t.node(v).label]);
      continue;
    }
    Rat dist = 2 * t.node(v).height;
    const auto& children = t.node(v).children;
    for (size_t a = 0; a < children.size(); ++a)
      for (size_t b = a + 1; b < children.size(); ++b)
        for (int p : leaves_below[children[a]])
          for (int q : leaves_below[children[b]])
            u.d[Ultrametric::pair_index(p, q, n)] = dist;
    for (int c : children)
      leaves_below[v].insert(leaves_below[v].end(), leaves_below[c].begin(),
                             leaves_below[c].end());
  }
  return u;
}

PhyloTree ultrametric_to_tree(const Ultrametric& u) {
  const int n = u.taxon_count();
  if (n < 2) throw std::invalid_argument("need at least two taxa");
  if (auto violation = ultrametric_violation(u.d, n))
    throw std::invalid_argument(
        "not an ultrametric: triple (" + u.taxa[violation->i] + ", " +
        u.taxa[violation->j] + ", " + u.taxa[violation->k] +
        ") violates the max-inequality or nonnegativity");

  std::vector<TreeNode> nodes(n);
  for (int i = 0; i < n; ++i) {
    nodes[i].label = u.taxa[i];
    nodes[i].height = 0;
  }

  struct Cluster {
    int node;
    int rep;  // representative taxon
  };
  std::vector<Cluster> active;
  for (int i = 0; i < n; ++i) active.push_back({i, i});

  while (active.size() > 1) {
    Rat delta = u.at(active[0].rep, active[1].rep);
    for (size_t a = 0; a < active.size(); ++a)
      for (size_t b = a + 1; b < active.size(); ++b)
        delta = std::min(delta, u.at(active[a].rep, active[b].rep));

    // merge the connected groups of clusters at distance exactly delta
    std::vector<int> group(active.size(), -1);
    int groups = 0;
    for (size_t a = 0; a < active.size(); ++a) {
      if (group[a] >= 0) continue;
      group[a] = groups;
      // distances at the global minimum are mutually consistent, one sweep
      // suffices
      for (size_t b = a + 1; b < active.size(); ++b)
        if (group[b] < 0 && u.at(active[a].rep, active[b].rep) == delta)
          group[b] = groups;
      ++groups;
    }

    std::vector<Cluster> next;
    for (int g = 0; g < groups; ++g) {
      std::vector<int> members;
      for (size_t a = 0; a < active.size(); ++a)
        if (group[a] == g) members.push_back(static_cast<int>(a));
      if (members.size() == 1) {
        next.push_back(active[members[0]]);
        continue;
      }
      int fresh = static_cast<int>(nodes.size());
      nodes.emplace_back();
      nodes[fresh].height = delta / 2;
      for (int a : members) {
        nodes[active[a].node].parent = fresh;
        nodes[fresh].children.push_back(active[a].node);
      }
      next.push_back({fresh, active[members[0]].rep});
    }
    if (next.size() == active.size())
      throw std::logic_error("agglomeration made no progress");
    active = std::move(next);
  }
  return PhyloTree(std::move(nodes), active[0].node);
}

PhyloTree make_equidistant(const PhyloTree& t) {
  std::vector<TreeNode> nodes;
  nodes.reserve(t.node_count());
  for (int v = 0; v < t.node_count(); ++v) nodes.push_back(t.node(v));
  for (TreeNode& nd : nodes)
    if (nd.children.empty()) nd.height = 0;
  return PhyloTree(std::move(nodes), t.root());
}

std::set<RootedTriplet> rooted_triplets(const Ultrametric& u) {
  const int n = u.taxon_count();
  std::set<RootedTriplet> out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        const Rat& dij = u.at(i, j);
        const Rat& dik = u.at(i, k);
        const Rat& djk = u.at(j, k);
        if (dij < dik && dij < djk)
          out.insert({i, j, k});
        else if (dik < dij && dik < djk)
          out.insert({i, k, j});
        else if (djk < dij && djk < dik)
          out.insert({j, k, i});
      }
  return out;
}

std::string triplet_label(const RootedTriplet& t,
                          const std::vector<std::string>& taxa) {
  return taxa[t.low] + "," + taxa[t.high] + "|" + taxa[t.out];
}

ParetoReport check_pareto(const std::vector<Ultrametric>& inputs,
                          const Ultrametric& out) {
  if (inputs.empty()) throw std::invalid_argument("no input trees");
  for (const Ultrametric& u : inputs)
    if (u.taxa != out.taxa)
      throw std::invalid_argument("taxa sets differ");

  std::set<RootedTriplet> common = rooted_triplets(inputs[0]);
  std::set<RootedTriplet> any = common;
  for (size_t i = 1; i < inputs.size(); ++i) {
    std::set<RootedTriplet> r = rooted_triplets(inputs[i]);
    std::set<RootedTriplet> kept;
    for (const RootedTriplet& t : common)
      if (r.count(t)) kept.insert(t);
    common = std::move(kept);
    any.insert(r.begin(), r.end());
  }

  ParetoReport report;
  std::set<RootedTriplet> result = rooted_triplets(out);
  for (const RootedTriplet& t : common)
    if (!result.count(t)) report.pareto_witnesses.push_back(t);
  for (const RootedTriplet& t : result)
    if (!any.count(t)) report.copareto_witnesses.push_back(t);
  report.pareto = report.pareto_witnesses.empty();
  report.copareto = report.copareto_witnesses.empty();
  return report;
}

Ultrametric pointwise_max_consensus(const std::vector<Ultrametric>& inputs) {
  if (inputs.empty()) throw std::invalid_argument("no input trees");
  Ultrametric out = inputs[0];
  for (size_t i = 1; i < inputs.size(); ++i) {
    if (inputs[i].taxa != out.taxa)
      throw std::invalid_argument("taxa sets differ");
    for (size_t c = 0; c < out.d.size(); ++c)
      out.d[c] = std::max(out.d[c], inputs[i].d[c]);
  }
  if (!is_ultrametric(out.d, out.taxon_count()))
    throw std::logic_error("pointwise maximum left the tree space");
  return out;
}

std::set<std::vector<std::string>> topology_clades(const PhyloTree& t) {
  std::set<std::vector<std::string>> clades;
  std::vector<std::vector<std::string>> below(t.node_count());
  std::vector<int> post;
  {
    std::vector<int> stack{t.root()};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      post.push_back(v);
      for (int c : t.node(v).children) stack.push_back(c);
    }
  }
  for (auto it = post.rbegin(); it != post.rend(); ++it) {
    int v = *it;
    if (t.is_leaf(v)) {
      below[v] = {t.node(v).label};
      continue;
    }
    for (int c : t.node(v).children)
      below[v].insert(below[v].end(), below[c].begin(), below[c].end());
    std::sort(below[v].begin(), below[v].end());
    clades.insert(below[v]);
  }
  return clades;
}

PhyloTree relabel_taxa(
    const PhyloTree& t,
    const std::vector<std::pair<std::string, std::string>>& mapping) {
  std::map<std::string, std::string> lookup(mapping.begin(), mapping.end());
  std::vector<TreeNode> nodes;
  nodes.reserve(t.node_count());
  for (int v = 0; v < t.node_count(); ++v) nodes.push_back(t.node(v));
  for (TreeNode& nd : nodes) {
    if (nd.label.empty()) continue;
    auto it = lookup.find(nd.label);
    if (it == lookup.end())
      throw std::invalid_argument("no mapping for taxon '" + nd.label + "'");
    nd.label = it->second;
  }
  return PhyloTree(std::move(nodes), t.root());
}

}  // namespace tropmed
