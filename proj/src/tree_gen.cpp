#include "tropmed/tree_gen.hpp"

#include <stdexcept>

namespace tropmed {

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
  std::uint64_t limit = ~std::uint64_t(0) - ~std::uint64_t(0) % bound;
  for (;;) {
    std::uint64_t draw = rng();
    if (draw < limit) return draw % bound;
  }
}

std::vector<std::string> default_taxa(int count) {
  std::vector<std::string> taxa;
  taxa.reserve(count);
  if (count <= 26) {
    for (int i = 0; i < count; ++i)
      taxa.push_back(std::string(1, static_cast<char>('A' + i)));
    return taxa;
  }
  int width = 1;
  for (int c = count; c >= 10; c /= 10) ++width;
  for (int i = 1; i <= count; ++i) {
    std::string digits = std::to_string(i);
    taxa.push_back("T" + std::string(width - digits.size(), '0') + digits);
  }
  return taxa;
}

PhyloTree random_equidistant_tree(std::mt19937_64& rng,
                                  const std::vector<std::string>& taxa,
                                  int max_len) {
  const int n = static_cast<int>(taxa.size());
  if (n < 2) throw std::invalid_argument("need at least two taxa");
  if (max_len < 1) throw std::invalid_argument("max_len must be positive");

  struct Raw {
    int parent = -1;
    long long edge = 0;  // length to parent
    std::string label;
  };
  std::vector<Raw> raw;
  auto draw_len = [&] {
    return 1 + static_cast<long long>(uniform_below(rng, max_len));
  };

  // cherry on the first two taxa
  raw.push_back({});  // root
  raw.push_back({0, draw_len(), taxa[0]});
  raw.push_back({0, draw_len(), taxa[1]});
  int root = 0;

  for (int next = 2; next < n; ++next) {
    // attach at a uniformly random edge, or above the current root
    int pick = static_cast<int>(uniform_below(rng, raw.size()));
    int joint = static_cast<int>(raw.size());
    if (pick == root) {
      raw.push_back({-1, 0, ""});
      raw[root].parent = joint;
      raw[root].edge = draw_len();
      root = joint;
    } else {
      raw.push_back({raw[pick].parent, draw_len(), ""});
      raw[pick].parent = joint;
      // split the picked edge; both halves keep positive length
      long long whole = raw[pick].edge;
      long long upper = whole == 1 ? 1 : 1 + static_cast<long long>(
                                              uniform_below(rng, whole));
      raw[joint].edge = upper;
      raw[pick].edge = std::max(1LL, whole - upper);
    }
    raw.push_back({joint, draw_len(), taxa[next]});
  }

  // depths, then heights measured from the deepest leaf
  const int count = static_cast<int>(raw.size());
  std::vector<std::vector<int>> children(count);
  for (int v = 0; v < count; ++v)
    if (raw[v].parent >= 0) children[raw[v].parent].push_back(v);
  std::vector<long long> depth(count, 0);
  long long deepest = 0;
  {
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int c : children[v]) {
        depth[c] = depth[v] + raw[c].edge;
        stack.push_back(c);
      }
      if (children[v].empty()) deepest = std::max(deepest, depth[v]);
    }
  }
  std::vector<TreeNode> nodes(count);
  for (int v = 0; v < count; ++v) {
    nodes[v].parent = raw[v].parent;
    nodes[v].children = children[v];
    nodes[v].label = raw[v].label;
    nodes[v].height = Rat(deepest - depth[v]);
  }
  return make_equidistant(PhyloTree(std::move(nodes), root));
}

}  // namespace tropmed
