#pragma once

#include "tropmed/rational.hpp"
#include "tropmed/transport.hpp"
#include "tropmed/tropical.hpp"

#include <vector>

namespace tropmed {

// The Fermat-Weber set of a site configuration: a bounded polytrope, stored
// by its tight facet bounds x_k - x_l <= bounds[k][l] (zero diagonal)
// together with the minimum total directed distance p_star.
struct Polytrope {
  int n = 0;
  std::vector<std::vector<Rat>> bounds;
  Rat p_star;
};

// One minimizer of x -> sum_i d_asym(v_i, x), obtained from an optimal
// transport plan.
TropicalPoint fw_point(const SiteMatrix& sites);

// The whole Fermat-Weber set. The facet bound for (k,l) is the maximum of
// x_k - x_l over the optimal potentials; it is computed combinatorially from
// one optimal plan: potentials complementary to the plan are rigid inside
// each support component and constrained across components by the minimum
// slack, so a shortest-path closure over the component graph yields every
// bound at once. Weighted rows count as repeated sites.
Polytrope fw_polytrope(const SiteMatrix& sites);
Polytrope fw_polytrope(const SiteMatrix& sites,
                       const std::vector<Int>& row_weights);

// Reference route: one linear program per ordered coordinate pair,
// maximizing x_k - x_l over the optimal face. Much slower; kept as an
// independent cross-check and exposed on the command line. `threads`
// splits the n^2-n solves across worker threads; results are merged in
// (k,l) order, so the output is deterministic.
Polytrope fw_polytrope_by_lp(const SiteMatrix& sites, int threads = 1);
Polytrope fw_polytrope_by_lp(const SiteMatrix& sites,
                             const std::vector<Int>& row_weights,
                             int threads);

// Vertices in the tropical sense: at most n of them, the k-th being the
// normalization of -bounds[k][.]. Exact duplicates are dropped, first
// occurrence kept.
std::vector<TropicalPoint> tropical_vertices(const Polytrope& p);

// Membership test, O(n^2).
bool contains(const Polytrope& p, const TropicalPoint& x);

// Dimension of the polytrope inside the torus: coordinates k and l are
// pinned together exactly when bounds[k][l] + bounds[l][k] == 0 after
// shortest-path closure; the dimension is the number of classes minus one.
int dimension(const Polytrope& p);

// sum_i w_i * d_asym(v_i, x) with rows normalized first.
Rat fw_objective(const SiteMatrix& sites, const TropicalPoint& x);
Rat fw_objective(const SiteMatrix& sites, const std::vector<Int>& row_weights,
                 const TropicalPoint& x);

}  // namespace tropmed
