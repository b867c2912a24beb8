#include "tropmed/fw_set.hpp"

#include "tropmed/lp.hpp"

#include <numeric>
#include <optional>
#include <stdexcept>
#include <thread>

namespace tropmed {

namespace {

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

std::vector<Int> unit_weights(int m) { return std::vector<Int>(m, Int(1)); }

// Min-plus closure in place; the matrix must have a zero diagonal.
void shortest_path_closure(std::vector<std::vector<std::optional<Rat>>>& d) {
  const int r = static_cast<int>(d.size());
  for (int k = 0; k < r; ++k)
    for (int i = 0; i < r; ++i) {
      if (!d[i][k]) continue;
      for (int j = 0; j < r; ++j) {
        if (!d[k][j]) continue;
        Rat via = *d[i][k] + *d[k][j];
        if (!d[i][j] || via < *d[i][j]) d[i][j] = via;
      }
    }
}

}  // namespace

TropicalPoint fw_point(const SiteMatrix& sites) {
  TransportPlan plan = solve_transportation(sites);
  return recover_primal(plan, sites).x;
}

Polytrope fw_polytrope(const SiteMatrix& sites) {
  return fw_polytrope(sites, unit_weights(sites.rows()));
}

Polytrope fw_polytrope(const SiteMatrix& sites,
                       const std::vector<Int>& row_weights) {
  const int m = sites.rows();
  const int n = sites.cols();
  TransportPlan plan = solve_transportation(sites, row_weights);
  PrimalSolution prim = recover_primal(plan, sites);

  // Components of the support graph. Every row and column carries positive
  // flow, so each component contains nodes of both kinds.
  Dsu dsu(m + n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      if (plan.flow[i][j] > 0) dsu.unite(i, m + j);

  std::vector<int> comp_of(m + n, -1);
  int comps = 0;
  for (int v = 0; v < m + n; ++v) {
    int root = dsu.find(v);
    if (comp_of[root] < 0) comp_of[root] = comps++;
    comp_of[v] = comp_of[root];
  }

  // Any optimal potential pair equals (t, x) up to one shift per component;
  // a cross pair (i in p, j in q) bounds shift_p - shift_q by its slack.
  std::vector<std::vector<std::optional<Rat>>> gap(
      comps, std::vector<std::optional<Rat>>(comps));
  for (int p = 0; p < comps; ++p) gap[p][p] = Rat(0);
  for (int i = 0; i < m; ++i) {
    const TropicalPoint site = sites.normalized_row(i);
    for (int j = 0; j < n; ++j) {
      int p = comp_of[i], q = comp_of[m + j];
      if (p == q) continue;
      Rat slack = prim.t[i] + prim.x[j] - site[j];
      if (!gap[p][q] || slack < *gap[p][q]) gap[p][q] = slack;
    }
  }
  shortest_path_closure(gap);

  Polytrope poly;
  poly.n = n;
  poly.p_star = plan.objective;
  poly.bounds.assign(n, std::vector<Rat>(n, Rat(0)));
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      if (k == l) continue;
      const auto& room = gap[comp_of[m + k]][comp_of[m + l]];
      if (!room) throw std::logic_error("fw_polytrope: unbounded direction");
      poly.bounds[k][l] = prim.x[k] - prim.x[l] + *room;
    }
  return poly;
}

Polytrope fw_polytrope_by_lp(const SiteMatrix& sites, int threads) {
  return fw_polytrope_by_lp(sites, unit_weights(sites.rows()), threads);
}

Polytrope fw_polytrope_by_lp(const SiteMatrix& sites,
                             const std::vector<Int>& row_weights,
                             int threads) {
  const int m = sites.rows();
  const int n = sites.cols();
  TransportPlan plan = solve_transportation(sites, row_weights);

  // Shared constraint pool: variables t_0..t_{m-1}, x_0..x_{n-1}.
  lp::LinearProgram base(m + n, lp::Sense::maximize);
  for (int i = 0; i < m; ++i) {
    const TropicalPoint site = sites.normalized_row(i);
    for (int j = 0; j < n; ++j) {
      std::vector<Rat> row(m + n, Rat(0));
      row[i] = -1;
      row[m + j] = -1;
      base.add_constraint(std::move(row), lp::Relation::less_equal, -site[j]);
    }
  }
  {
    std::vector<Rat> row(m + n, Rat(0));
    for (int j = 0; j < n; ++j) row[m + j] = 1;
    base.add_constraint(std::move(row), lp::Relation::equal, Rat(0));
  }
  {
    std::vector<Rat> row(m + n, Rat(0));
    for (int i = 0; i < m; ++i) row[i] = Rat(row_weights[i]);
    base.add_constraint(std::move(row), lp::Relation::equal,
                        plan.objective / n);
  }

  std::vector<std::pair<int, int>> pairs;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      if (k != l) pairs.emplace_back(k, l);

  std::vector<Rat> results(pairs.size());
  auto solve_range = [&](size_t begin, size_t end) {
    for (size_t idx = begin; idx < end; ++idx) {
      lp::LinearProgram prog = base;
      prog.objective[m + pairs[idx].first] = 1;
      prog.objective[m + pairs[idx].second] = -1;
      lp::Solution sol = lp::solve(prog);
      if (sol.status != lp::Status::optimal)
        throw std::logic_error("facet program did not solve to optimality");
      results[idx] = sol.value;
    }
  };

  threads = std::max(1, threads);
  if (threads == 1 || pairs.size() < 2) {
    solve_range(0, pairs.size());
  } else {
    size_t workers = std::min<size_t>(threads, pairs.size());
    std::vector<std::thread> pool;
    size_t chunk = (pairs.size() + workers - 1) / workers;
    for (size_t w = 0; w < workers; ++w) {
      size_t begin = w * chunk;
      size_t end = std::min(pairs.size(), begin + chunk);
      if (begin < end) pool.emplace_back(solve_range, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  Polytrope poly;
  poly.n = n;
  poly.p_star = plan.objective;
  poly.bounds.assign(n, std::vector<Rat>(n, Rat(0)));
  for (size_t idx = 0; idx < pairs.size(); ++idx)
    poly.bounds[pairs[idx].first][pairs[idx].second] = results[idx];
  return poly;
}

std::vector<TropicalPoint> tropical_vertices(const Polytrope& p) {
  std::vector<TropicalPoint> vertices;
  for (int k = 0; k < p.n; ++k) {
    std::vector<Rat> raw(p.n);
    for (int j = 0; j < p.n; ++j) raw[j] = -p.bounds[k][j];
    TropicalPoint vertex(std::move(raw));
    bool duplicate = false;
    for (const TropicalPoint& seen : vertices)
      if (seen == vertex) {
        duplicate = true;
        break;
      }
    if (!duplicate) vertices.push_back(std::move(vertex));
  }
  return vertices;
}

bool contains(const Polytrope& p, const TropicalPoint& x) {
  if (x.dim() != p.n)
    throw std::invalid_argument("contains: dimension mismatch");
  for (int k = 0; k < p.n; ++k)
    for (int l = 0; l < p.n; ++l)
      if (k != l && x[k] - x[l] > p.bounds[k][l]) return false;
  return true;
}

int dimension(const Polytrope& p) {
  std::vector<std::vector<std::optional<Rat>>> closed(
      p.n, std::vector<std::optional<Rat>>(p.n));
  for (int k = 0; k < p.n; ++k)
    for (int l = 0; l < p.n; ++l) closed[k][l] = p.bounds[k][l];
  shortest_path_closure(closed);
  for (int k = 0; k < p.n; ++k)
    if (*closed[k][k] < 0)
      throw std::invalid_argument("dimension: bounds describe an empty set");

  Dsu dsu(p.n);
  for (int k = 0; k < p.n; ++k)
    for (int l = k + 1; l < p.n; ++l)
      if (*closed[k][l] + *closed[l][k] == 0) dsu.unite(k, l);
  int classes = 0;
  for (int k = 0; k < p.n; ++k)
    if (dsu.find(k) == k) ++classes;
  return classes - 1;
}

Rat fw_objective(const SiteMatrix& sites, const TropicalPoint& x) {
  return fw_objective(sites, unit_weights(sites.rows()), x);
}

Rat fw_objective(const SiteMatrix& sites, const std::vector<Int>& row_weights,
                 const TropicalPoint& x) {
  Rat total = 0;
  for (int i = 0; i < sites.rows(); ++i)
    total += Rat(row_weights[i]) * d_asym(sites.normalized_row(i), x);
  return total;
}

}  // namespace tropmed
