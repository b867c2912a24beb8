#include "tropmed/transport.hpp"

#include <algorithm>
#include <stdexcept>

namespace tropmed {

std::vector<Rat> TransportPlan::row_sums() const {
  std::vector<Rat> sums(rows(), Rat(0));
  for (int i = 0; i < rows(); ++i)
    for (int j = 0; j < cols(); ++j) sums[i] += flow[i][j];
  return sums;
}

std::vector<Rat> TransportPlan::col_sums() const {
  std::vector<Rat> sums(cols(), Rat(0));
  for (int i = 0; i < rows(); ++i)
    for (int j = 0; j < cols(); ++j) sums[j] += flow[i][j];
  return sums;
}

TransportPlan northwest_corner(const std::vector<Rat>& row_sums,
                               const std::vector<Rat>& col_sums) {
  const int m = static_cast<int>(row_sums.size());
  const int n = static_cast<int>(col_sums.size());
  if (m == 0 || n == 0)
    throw std::invalid_argument("northwest_corner: empty marginals");
  Rat total_r = 0, total_c = 0;
  for (const Rat& r : row_sums) {
    if (r <= 0) throw std::invalid_argument("northwest_corner: marginals must be positive");
    total_r += r;
  }
  for (const Rat& c : col_sums) {
    if (c <= 0) throw std::invalid_argument("northwest_corner: marginals must be positive");
    total_c += c;
  }
  if (total_r != total_c)
    throw std::invalid_argument("northwest_corner: marginal sums differ, instance infeasible");

  TransportPlan plan;
  plan.flow.assign(m, std::vector<Rat>(n, Rat(0)));
  plan.objective = 0;
  std::vector<Rat> r = row_sums, c = col_sums;
  int i = 0, j = 0;
  for (;;) {
    Rat amount = std::min(r[i], c[j]);
    plan.flow[i][j] = amount;
    plan.basis.emplace_back(i, j);
    r[i] -= amount;
    c[j] -= amount;
    if (i == m - 1 && j == n - 1) break;
    if (i == m - 1) {
      ++j;
    } else if (j == n - 1) {
      ++i;
    } else if (c[j] == 0 && r[i] > 0) {
      ++j;
    } else if (r[i] == 0 && c[j] > 0) {
      ++i;
    } else {
      ++j;  // tie: go East
    }
  }
  return plan;
}

namespace detail {

namespace {

// Potentials t (rows) and x (columns) with t_i + x_j = v_ij on basis edges,
// rooted at column 0 with x = 0.
void compute_potentials(const std::vector<std::vector<Rat>>& values,
                        const std::vector<std::vector<int>>& adj, int m, int n,
                        std::vector<Rat>& t, std::vector<Rat>& x) {
  const int nodes = m + n;
  std::vector<char> seen(nodes, 0);
  std::vector<int> stack;
  t.assign(m, Rat(0));
  x.assign(n, Rat(0));
  stack.push_back(m);  // column 0
  seen[m] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v]) {
      if (seen[w]) continue;
      seen[w] = 1;
      if (v >= m)
        t[w] = values[w][v - m] - x[v - m];
      else
        x[w - m] = values[v][w - m] - t[v];
      stack.push_back(w);
    }
  }
  for (int v = 0; v < nodes; ++v)
    if (!seen[v]) throw std::logic_error("transport basis is not spanning");
}

}  // namespace

TransportPlan network_simplex(const std::vector<std::vector<Rat>>& values,
                              const std::vector<Rat>& row_sums,
                              const std::vector<Rat>& col_sums) {
  const int m = static_cast<int>(row_sums.size());
  const int n = static_cast<int>(col_sums.size());
  TransportPlan plan = northwest_corner(row_sums, col_sums);

  const int nodes = m + n;
  std::vector<std::vector<char>> in_basis(m, std::vector<char>(n, 0));
  for (const auto& [i, j] : plan.basis) in_basis[i][j] = 1;

  std::vector<std::vector<int>> adj(nodes);
  auto rebuild_adj = [&] {
    for (auto& a : adj) a.clear();
    for (const auto& [i, j] : plan.basis) {
      adj[i].push_back(m + j);
      adj[m + j].push_back(i);
    }
  };

  std::vector<Rat> t, x;
  std::vector<int> parent(nodes);
  for (;;) {
    rebuild_adj();
    compute_potentials(values, adj, m, n, t, x);

    // Entering arc: first cell (row-major) with positive reduced profit.
    int ei = -1, ej = -1;
    for (int i = 0; i < m && ei < 0; ++i)
      for (int j = 0; j < n; ++j)
        if (!in_basis[i][j] && values[i][j] - t[i] - x[j] > 0) {
          ei = i;
          ej = j;
          break;
        }
    if (ei < 0) break;

    // Tree path from column ej back to row ei closes the pivot cycle.
    std::fill(parent.begin(), parent.end(), -2);
    std::vector<int> stack{m + ej};
    parent[m + ej] = -1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      if (v == ei) break;
      for (int w : adj[v])
        if (parent[w] == -2) {
          parent[w] = v;
          stack.push_back(w);
        }
    }

    // Flow alternates -θ/+θ along the path starting at the column end.
    std::vector<std::pair<int, int>> minus, plus;
    {
      int v = ei;
      bool minus_next = true;  // edge incident to the entering row
      while (parent[v] != -1) {
        int w = parent[v];
        int row = v < m ? v : w;
        int col = v < m ? w - m : v - m;
        // Orientation along the path from ej to ei alternates; walking
        // backwards from ei the first edge is a minus edge.
        (minus_next ? minus : plus).emplace_back(row, col);
        minus_next = !minus_next;
        v = w;
      }
    }

    Rat theta = plan.flow[minus[0].first][minus[0].second];
    std::pair<int, int> leaving = minus[0];
    for (const auto& cell : minus) {
      const Rat& f = plan.flow[cell.first][cell.second];
      if (f < theta || (f == theta && cell < leaving)) {
        theta = f;
        leaving = cell;
      }
    }

    if (theta != 0) {
      plan.flow[ei][ej] += theta;
      for (const auto& [i, j] : minus) plan.flow[i][j] -= theta;
      for (const auto& [i, j] : plus) plan.flow[i][j] += theta;
    }
    in_basis[leaving.first][leaving.second] = 0;
    in_basis[ei][ej] = 1;
    auto it = std::find(plan.basis.begin(), plan.basis.end(), leaving);
    *it = {ei, ej};
  }

  std::sort(plan.basis.begin(), plan.basis.end());
  plan.objective = 0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      if (plan.flow[i][j] != 0) plan.objective += values[i][j] * plan.flow[i][j];
  return plan;
}

}  // namespace detail

TransportPlan solve_transportation(const SiteMatrix& sites) {
  return solve_transportation(sites, std::vector<Int>(sites.rows(), Int(1)));
}

TransportPlan solve_transportation(const SiteMatrix& sites,
                                   const std::vector<Int>& row_weights) {
  const int m = sites.rows();
  const int n = sites.cols();
  if (static_cast<int>(row_weights.size()) != m)
    throw std::invalid_argument("one weight per site required");
  Int total = 0;
  for (const Int& w : row_weights) {
    if (w <= 0) throw std::invalid_argument("site weights must be positive");
    total += w;
  }

  std::vector<std::vector<Rat>> values(m);
  for (int i = 0; i < m; ++i) values[i] = sites.normalized_row(i).coords();
  std::vector<Rat> row_sums(m);
  for (int i = 0; i < m; ++i) row_sums[i] = Rat(row_weights[i] * n);
  std::vector<Rat> col_sums(n, Rat(total));
  return detail::network_simplex(values, row_sums, col_sums);
}

PrimalSolution recover_primal(const TransportPlan& plan,
                              const SiteMatrix& sites) {
  const int m = plan.rows();
  const int n = plan.cols();
  if (m != sites.rows() || n != sites.cols())
    throw std::invalid_argument("plan and sites have different shapes");
  if (static_cast<int>(plan.basis.size()) != m + n - 1)
    throw std::logic_error("transport basis is not spanning");

  std::vector<std::vector<Rat>> values(m);
  for (int i = 0; i < m; ++i) values[i] = sites.normalized_row(i).coords();

  std::vector<std::vector<int>> adj(m + n);
  for (const auto& [i, j] : plan.basis) {
    adj[i].push_back(m + j);
    adj[m + j].push_back(i);
  }
  std::vector<Rat> t, x;
  detail::compute_potentials(values, adj, m, n, t, x);

  Rat mean = 0;
  for (const Rat& xj : x) mean += xj;
  mean /= n;
  for (Rat& xj : x) xj -= mean;
  for (Rat& ti : t) ti += mean;

  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j)
      if (t[i] + x[j] < values[i][j])
        throw std::invalid_argument(
            "recover_primal: plan is not optimal (potentials infeasible)");

  Rat value = 0;
  std::vector<Rat> rsums = plan.row_sums();
  for (int i = 0; i < m; ++i) value += rsums[i] * t[i];
  return PrimalSolution{std::move(t), TropicalPoint(std::move(x)),
                        std::move(value)};
}

}  // namespace tropmed
