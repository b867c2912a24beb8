#pragma once

#include "tropmed/rational.hpp"

#include <utility>
#include <vector>

namespace tropmed {

// A point of the tropical projective torus R^n / R1, stored as the unique
// representative whose coordinates sum to zero.
class TropicalPoint {
 public:
  // Normalizes: subtracts the coordinate mean. Requires raw.size() >= 2.
  explicit TropicalPoint(std::vector<Rat> raw);

  int dim() const { return static_cast<int>(coords_.size()); }
  const std::vector<Rat>& coords() const { return coords_; }
  const Rat& operator[](int i) const { return coords_[i]; }

  friend bool operator==(const TropicalPoint&, const TropicalPoint&) = default;

 private:
  std::vector<Rat> coords_;
};

TropicalPoint normalize(std::vector<Rat> raw);

// An m x n configuration of sites; each row is a point of the torus.
class SiteMatrix {
 public:
  explicit SiteMatrix(std::vector<std::vector<Rat>> entries);

  int rows() const { return static_cast<int>(entries_.size()); }
  int cols() const { return static_cast<int>(entries_[0].size()); }
  const Rat& at(int i, int j) const { return entries_[i][j]; }
  const std::vector<Rat>& row(int i) const { return entries_[i]; }

  TropicalPoint normalized_row(int i) const;
  // Copy with every row shifted onto the sum-zero hyperplane.
  SiteMatrix normalized() const;

 private:
  std::vector<std::vector<Rat>> entries_;
};

// Bipartite graph on site nodes [m] and coordinate nodes [n]; records which
// (site, coordinate) pairs attain the defining maxima at a point.
struct Covector {
  int site_count = 0;
  int coord_count = 0;
  std::vector<std::pair<int, int>> edges;  // lexicographically sorted

  friend bool operator==(const Covector&, const Covector&) = default;
};

// Directed tropical distance; zero exactly when the two points coincide in
// the torus. Invariant under adding a constant to either argument.
Rat d_asym(const TropicalPoint& a, const TropicalPoint& b);
Rat d_asym(const std::vector<Rat>& a, const std::vector<Rat>& b);

// max_i(a_i - b_i) - min_j(a_j - b_j); symmetric.
Rat d_sym(const TropicalPoint& a, const TropicalPoint& b);

// Edge (i,j) present iff v_ij - x_j attains max_k(v_ik - x_k). Every site
// node is covered by construction.
Covector covector_of(const TropicalPoint& x, const SiteMatrix& sites);

std::vector<int> column_degrees(const Covector& c);

// True iff every union of closed sectors around u captures its proportional
// share of the sites; equivalent to u minimizing the total directed distance
// from the sites. Subset enumeration up to 12 coordinates, a flow
// feasibility test on the tight edges above that.
bool evenly_splits(const TropicalPoint& u, const SiteMatrix& sites);

namespace detail {
bool evenly_splits_by_sectors(const TropicalPoint& u, const SiteMatrix& sites);
bool evenly_splits_by_flow(const TropicalPoint& u, const SiteMatrix& sites);
}  // namespace detail

}  // namespace tropmed
