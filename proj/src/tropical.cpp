#include "tropmed/tropical.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace tropmed {

namespace {

void require_same_dim(const TropicalPoint& a, const TropicalPoint& b) {
  if (a.dim() != b.dim())
    throw std::invalid_argument("dimension mismatch: " +
                                std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()));
}

}  // namespace

TropicalPoint::TropicalPoint(std::vector<Rat> raw) : coords_(std::move(raw)) {
  if (coords_.size() < 2)
    throw std::invalid_argument("a torus point needs at least 2 coordinates");
  Rat sum = 0;
  for (const Rat& c : coords_) sum += c;
  if (sum != 0) {
    Rat mean = sum / static_cast<int>(coords_.size());
    for (Rat& c : coords_) c -= mean;
  }
}

TropicalPoint normalize(std::vector<Rat> raw) {
  return TropicalPoint(std::move(raw));
}

SiteMatrix::SiteMatrix(std::vector<std::vector<Rat>> entries)
    : entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("site matrix needs m >= 1");
  size_t n = entries_[0].size();
  if (n < 2) throw std::invalid_argument("site matrix needs n >= 2");
  for (const auto& row : entries_)
    if (row.size() != n)
      throw std::invalid_argument("ragged site matrix");
}

TropicalPoint SiteMatrix::normalized_row(int i) const {
  return TropicalPoint(entries_[i]);
}

SiteMatrix SiteMatrix::normalized() const {
  std::vector<std::vector<Rat>> rows;
  rows.reserve(entries_.size());
  for (int i = 0; i < this->rows(); ++i)
    rows.push_back(normalized_row(i).coords());
  return SiteMatrix(std::move(rows));
}

Rat d_asym(const std::vector<Rat>& a, const std::vector<Rat>& b) {
  if (a.size() != b.size() || a.size() < 2)
    throw std::invalid_argument("d_asym: bad dimensions");
  Rat sum = 0;
  Rat min_diff = b[0] - a[0];
  for (size_t i = 0; i < a.size(); ++i) {
    Rat diff = b[i] - a[i];
    sum += diff;
    if (diff < min_diff) min_diff = diff;
  }
  return sum - static_cast<int>(a.size()) * min_diff;
}

Rat d_asym(const TropicalPoint& a, const TropicalPoint& b) {
  require_same_dim(a, b);
  return d_asym(a.coords(), b.coords());
}

Rat d_sym(const TropicalPoint& a, const TropicalPoint& b) {
  require_same_dim(a, b);
  Rat max_diff = a[0] - b[0];
  Rat min_diff = max_diff;
  for (int i = 1; i < a.dim(); ++i) {
    Rat diff = a[i] - b[i];
    if (diff > max_diff) max_diff = diff;
    if (diff < min_diff) min_diff = diff;
  }
  return max_diff - min_diff;
}

Covector covector_of(const TropicalPoint& x, const SiteMatrix& sites) {
  if (x.dim() != sites.cols())
    throw std::invalid_argument("covector_of: dimension mismatch");
  Covector cov;
  cov.site_count = sites.rows();
  cov.coord_count = sites.cols();
  for (int i = 0; i < sites.rows(); ++i) {
    Rat best = sites.at(i, 0) - x[0];
    for (int j = 1; j < sites.cols(); ++j) {
      Rat diff = sites.at(i, j) - x[j];
      if (diff > best) best = diff;
    }
    for (int j = 0; j < sites.cols(); ++j)
      if (sites.at(i, j) - x[j] == best) cov.edges.emplace_back(i, j);
  }
  return cov;
}

std::vector<int> column_degrees(const Covector& c) {
  std::vector<int> deg(c.coord_count, 0);
  for (const auto& [i, j] : c.edges) ++deg[j];
  return deg;
}

namespace detail {

bool evenly_splits_by_sectors(const TropicalPoint& u, const SiteMatrix& sites) {
  const int m = sites.rows();
  const int n = sites.cols();
  // diffs[i][j] = v_ij - u_j; site i lies in the sector union of J iff the
  // max over J dominates the max over the complement.
  std::vector<std::vector<Rat>> diffs(m, std::vector<Rat>(n));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) diffs[i][j] = sites.at(i, j) - u[j];

  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    int size_j = 0;
    for (int j = 0; j < n; ++j)
      if (mask & (1u << j)) ++size_j;
    int captured = 0;
    for (int i = 0; i < m; ++i) {
      const Rat* in_max = nullptr;
      const Rat* out_max = nullptr;
      for (int j = 0; j < n; ++j) {
        const Rat& d = diffs[i][j];
        if (mask & (1u << j)) {
          if (!in_max || d > *in_max) in_max = &d;
        } else {
          if (!out_max || d > *out_max) out_max = &d;
        }
      }
      if (*in_max >= *out_max) ++captured;
    }
    if (n * captured < m * size_j) return false;
  }
  return true;
}

bool evenly_splits_by_flow(const TropicalPoint& u, const SiteMatrix& sites) {
  const int m = sites.rows();
  const int n = sites.cols();
  Covector cov = covector_of(u, sites);

  // Feasibility of a transport plan with row sums n and column sums m
  // supported on the tight edges. Max flow with integer capacities:
  // source = 0, sites = 1..m, coordinates = m+1..m+n, sink = m+n+1.
  const int source = 0, sink = m + n + 1, nodes = m + n + 2;
  const long long inf = static_cast<long long>(m) * n + 1;
  std::vector<std::vector<long long>> cap(nodes,
                                          std::vector<long long>(nodes, 0));
  for (int i = 0; i < m; ++i) cap[source][1 + i] = n;
  for (int j = 0; j < n; ++j) cap[1 + m + j][sink] = m;
  for (const auto& [i, j] : cov.edges) cap[1 + i][1 + m + j] = inf;

  long long total = 0;
  const long long want = static_cast<long long>(m) * n;
  while (total < want) {
    std::vector<int> prev(nodes, -1);
    prev[source] = source;
    std::queue<int> bfs;
    bfs.push(source);
    while (!bfs.empty() && prev[sink] == -1) {
      int v = bfs.front();
      bfs.pop();
      for (int w = 0; w < nodes; ++w)
        if (prev[w] == -1 && cap[v][w] > 0) {
          prev[w] = v;
          bfs.push(w);
        }
    }
    if (prev[sink] == -1) break;
    long long push = inf;
    for (int v = sink; v != source; v = prev[v])
      push = std::min(push, cap[prev[v]][v]);
    for (int v = sink; v != source; v = prev[v]) {
      cap[prev[v]][v] -= push;
      cap[v][prev[v]] += push;
    }
    total += push;
  }
  return total == want;
}

}  // namespace detail

bool evenly_splits(const TropicalPoint& u, const SiteMatrix& sites) {
  if (u.dim() != sites.cols())
    throw std::invalid_argument("evenly_splits: dimension mismatch");
  if (sites.cols() <= 12) return detail::evenly_splits_by_sectors(u, sites);
  return detail::evenly_splits_by_flow(u, sites);
}

}  // namespace tropmed
