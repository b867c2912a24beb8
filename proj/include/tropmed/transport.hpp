#pragma once

#include "tropmed/rational.hpp"
#include "tropmed/tropical.hpp"

#include <utility>
#include <vector>

namespace tropmed {

// Basic feasible point of a transportation polytope together with its
// spanning-tree basis. `objective` is filled in by the solver; a plain
// northwest-corner plan carries zero there.
struct TransportPlan {
  std::vector<std::vector<Rat>> flow;       // m x n, nonnegative
  std::vector<std::pair<int, int>> basis;   // m+n-1 cells, sorted
  Rat objective;

  int rows() const { return static_cast<int>(flow.size()); }
  int cols() const { return flow.empty() ? 0 : static_cast<int>(flow[0].size()); }
  std::vector<Rat> row_sums() const;
  std::vector<Rat> col_sums() const;
};

// Optimal potentials of the transportation problem: a minimizer x of the
// total directed distance from the sites, with t_i the per-site distance
// divided by the number of coordinates.
struct PrimalSolution {
  std::vector<Rat> t;
  TropicalPoint x;
  Rat value;
};

// Northwest corner rule, breaking ties by going East. The support walks a
// staircase from the top-left to the bottom-right cell; all visited cells
// enter the basis, so the basis is a spanning path of m+n-1 cells.
TransportPlan northwest_corner(const std::vector<Rat>& row_sums,
                               const std::vector<Rat>& col_sums);

// Maximizes sum v_ij * y_ij over row sums n and column sums m (scaled by the
// row weights when given). Rows of the site matrix are shifted onto the
// sum-zero hyperplane first, which leaves the optimal plans unchanged and
// makes the objective equal to the minimum total directed distance.
// Primal network simplex with smallest-index anti-cycling, started from the
// northwest corner basis; exact and deterministic.
TransportPlan solve_transportation(const SiteMatrix& sites);
TransportPlan solve_transportation(const SiteMatrix& sites,
                                   const std::vector<Int>& row_weights);

// Reads the dual potentials off the basis tree: fixes x = 0 at the smallest
// column node, propagates t_i + x_j = v_ij along basis edges, then shifts x
// onto the sum-zero hyperplane (compensating in t). Requires an optimal
// plan; the result is checked to be feasible for the potential problem.
PrimalSolution recover_primal(const TransportPlan& plan,
                              const SiteMatrix& sites);

namespace detail {
// Core solver on explicit values and marginals (values used as given).
TransportPlan network_simplex(const std::vector<std::vector<Rat>>& values,
                              const std::vector<Rat>& row_sums,
                              const std::vector<Rat>& col_sums);
}  // namespace detail

}  // namespace tropmed
