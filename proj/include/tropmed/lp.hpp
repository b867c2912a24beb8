#pragma once

#include "tropmed/rational.hpp"

#include <optional>
#include <vector>

namespace tropmed::lp {

enum class Sense { minimize, maximize };
enum class Relation { less_equal, equal, greater_equal };

struct Constraint {
  std::vector<Rat> coeffs;
  Relation rel = Relation::less_equal;
  Rat rhs;
};

// A small dense linear program over exact rationals. Variables without
// explicit bounds are free.
struct LinearProgram {
  explicit LinearProgram(int num_vars, Sense sense = Sense::maximize)
      : sense(sense),
        objective(num_vars, Rat(0)),
        lower(num_vars),
        upper(num_vars) {}

  int num_vars() const { return static_cast<int>(objective.size()); }

  void add_constraint(std::vector<Rat> coeffs, Relation rel, Rat rhs);

  Sense sense;
  std::vector<Rat> objective;
  std::vector<Constraint> constraints;
  std::vector<std::optional<Rat>> lower;
  std::vector<std::optional<Rat>> upper;
};

enum class Status { optimal, infeasible, unbounded };

struct Solution {
  Status status = Status::infeasible;
  Rat value;               // meaningful when optimal
  std::vector<Rat> point;  // meaningful when optimal
};

// Two-phase primal simplex with Bland's rule; exact and deterministic.
Solution solve(const LinearProgram& program);

}  // namespace tropmed::lp
