#include "tropmed/lp.hpp"

#include <stdexcept>
#include <utility>

namespace tropmed::lp {

void LinearProgram::add_constraint(std::vector<Rat> coeffs, Relation rel,
                                   Rat rhs) {
  if (static_cast<int>(coeffs.size()) != num_vars())
    throw std::invalid_argument("constraint arity does not match variables");
  constraints.push_back({std::move(coeffs), rel, std::move(rhs)});
}

namespace {

// How an original variable is expressed through nonnegative columns.
struct VarMap {
  Rat shift;      // x = shift + sign*z[col] (+ z[col] - z[neg_col] if free)
  int sign = 1;
  int col = -1;
  int neg_col = -1;  // second column of a free split
};

struct Tableau {
  std::vector<std::vector<Rat>> a;  // rows x cols
  std::vector<Rat> rhs;             // kept nonnegative
  std::vector<int> basis;           // basic column per row

  int rows() const { return static_cast<int>(a.size()); }
  int cols() const { return a.empty() ? 0 : static_cast<int>(a[0].size()); }

  void pivot(int row, int col) {
    Rat p = a[row][col];
    for (Rat& v : a[row]) v /= p;
    rhs[row] /= p;
    for (int r = 0; r < rows(); ++r) {
      if (r == row) continue;
      Rat f = a[r][col];
      if (f == 0) continue;
      for (int c = 0; c < cols(); ++c) a[r][c] -= f * a[row][c];
      rhs[r] -= f * rhs[row];
    }
    basis[row] = col;
  }
};

// Minimizes cost over the tableau with Bland's rule. Returns false when the
// problem is unbounded below. allowed[c] masks columns out of the pricing.
bool run_simplex(Tableau& t, const std::vector<Rat>& cost,
                 const std::vector<bool>& allowed) {
  const int m = t.rows();
  const int n = t.cols();
  for (;;) {
    // Reduced cost of column c: cost[c] - cost_B . a[.][c].
    int entering = -1;
    for (int c = 0; c < n && entering < 0; ++c) {
      if (!allowed[c]) continue;
      Rat reduced = cost[c];
      for (int r = 0; r < m; ++r) {
        const Rat& cb = cost[t.basis[r]];
        if (cb != 0) reduced -= cb * t.a[r][c];
      }
      if (reduced < 0) entering = c;
    }
    if (entering < 0) return true;

    int leaving = -1;
    Rat best_ratio;
    for (int r = 0; r < m; ++r) {
      if (t.a[r][entering] <= 0) continue;
      Rat ratio = t.rhs[r] / t.a[r][entering];
      if (leaving < 0 || ratio < best_ratio ||
          (ratio == best_ratio && t.basis[r] < t.basis[leaving])) {
        leaving = r;
        best_ratio = ratio;
      }
    }
    if (leaving < 0) return false;
    t.pivot(leaving, entering);
  }
}

}  // namespace

Solution solve(const LinearProgram& program) {
  const int n = program.num_vars();
  for (const auto& con : program.constraints)
    if (static_cast<int>(con.coeffs.size()) != n)
      throw std::invalid_argument("constraint arity does not match variables");

  // Rewrite through nonnegative variables. Two-sided bounds become a shifted
  // variable plus an explicit upper-bound row.
  std::vector<VarMap> vars(n);
  int cols = 0;
  std::vector<Constraint> rows = program.constraints;
  for (int i = 0; i < n; ++i) {
    VarMap& vm = vars[i];
    const auto& lo = program.lower[i];
    const auto& hi = program.upper[i];
    if (lo && hi && *hi < *lo) return {Status::infeasible, Rat(0), {}};
    if (lo) {
      vm.shift = *lo;
      vm.sign = 1;
      vm.col = cols++;
      if (hi) {
        Constraint bound;
        bound.coeffs.assign(n, Rat(0));
        bound.coeffs[i] = 1;
        bound.rel = Relation::less_equal;
        bound.rhs = *hi;
        rows.push_back(std::move(bound));
      }
    } else if (hi) {
      vm.shift = *hi;
      vm.sign = -1;
      vm.col = cols++;
    } else {
      vm.shift = 0;
      vm.sign = 1;
      vm.col = cols++;
      vm.neg_col = cols++;
    }
  }
  const int structural = cols;

  const int m = static_cast<int>(rows.size());
  // Column layout: structural | slack/surplus | artificial.
  std::vector<std::vector<Rat>> lhs(m, std::vector<Rat>(structural, Rat(0)));
  std::vector<Rat> rhs(m, Rat(0));
  std::vector<Relation> rels(m);
  for (int r = 0; r < m; ++r) {
    Rat b = rows[r].rhs;
    for (int i = 0; i < n; ++i) {
      const Rat& coef = rows[r].coeffs[i];
      if (coef == 0) continue;
      const VarMap& vm = vars[i];
      b -= coef * vm.shift;
      lhs[r][vm.col] += vm.sign * coef;
      if (vm.neg_col >= 0) lhs[r][vm.neg_col] -= coef;
    }
    rels[r] = rows[r].rel;
    if (b < 0) {
      for (Rat& v : lhs[r]) v = -v;
      b = -b;
      if (rels[r] == Relation::less_equal)
        rels[r] = Relation::greater_equal;
      else if (rels[r] == Relation::greater_equal)
        rels[r] = Relation::less_equal;
    }
    rhs[r] = std::move(b);
  }

  int slack_count = 0, artificial_count = 0;
  for (int r = 0; r < m; ++r) {
    if (rels[r] != Relation::equal) ++slack_count;
    if (rels[r] != Relation::less_equal) ++artificial_count;
  }

  Tableau t;
  const int total = structural + slack_count + artificial_count;
  t.a.assign(m, std::vector<Rat>(total, Rat(0)));
  t.rhs = rhs;
  t.basis.assign(m, -1);
  int next_slack = structural;
  int next_art = structural + slack_count;
  const int first_art = next_art;
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < structural; ++c) t.a[r][c] = lhs[r][c];
    if (rels[r] == Relation::less_equal) {
      t.a[r][next_slack] = 1;
      t.basis[r] = next_slack++;
    } else if (rels[r] == Relation::greater_equal) {
      t.a[r][next_slack++] = -1;
      t.a[r][next_art] = 1;
      t.basis[r] = next_art++;
    } else {
      t.a[r][next_art] = 1;
      t.basis[r] = next_art++;
    }
  }

  std::vector<bool> allowed(total, true);
  if (artificial_count > 0) {
    std::vector<Rat> phase1(total, Rat(0));
    for (int c = first_art; c < total; ++c) phase1[c] = 1;
    run_simplex(t, phase1, allowed);  // bounded below by zero

    Rat infeas = 0;
    for (int r = 0; r < m; ++r)
      if (t.basis[r] >= first_art) infeas += t.rhs[r];
    if (infeas != 0) return {Status::infeasible, Rat(0), {}};

    // Drive leftover artificials out of the basis; an all-zero row over the
    // real columns is redundant and gets dropped.
    for (int r = t.rows() - 1; r >= 0; --r) {
      if (t.basis[r] < first_art) continue;
      int col = -1;
      for (int c = 0; c < first_art && col < 0; ++c)
        if (t.a[r][c] != 0) col = c;
      if (col >= 0) {
        t.pivot(r, col);
      } else {
        t.a.erase(t.a.begin() + r);
        t.rhs.erase(t.rhs.begin() + r);
        t.basis.erase(t.basis.begin() + r);
      }
    }
    for (int c = first_art; c < total; ++c) allowed[c] = false;
  }

  std::vector<Rat> cost(total, Rat(0));
  const bool maximize = program.sense == Sense::maximize;
  for (int i = 0; i < n; ++i) {
    Rat c = program.objective[i];
    if (maximize) c = -c;
    const VarMap& vm = vars[i];
    cost[vm.col] += vm.sign * c;
    if (vm.neg_col >= 0) cost[vm.neg_col] -= c;
  }
  if (!run_simplex(t, cost, allowed)) return {Status::unbounded, Rat(0), {}};

  std::vector<Rat> z(total, Rat(0));
  for (int r = 0; r < t.rows(); ++r) z[t.basis[r]] = t.rhs[r];
  Solution sol;
  sol.status = Status::optimal;
  sol.point.resize(n);
  for (int i = 0; i < n; ++i) {
    const VarMap& vm = vars[i];
    sol.point[i] = vm.shift + vm.sign * z[vm.col];
    if (vm.neg_col >= 0) sol.point[i] -= z[vm.neg_col];
  }
  sol.value = 0;
  for (int i = 0; i < n; ++i) sol.value += program.objective[i] * sol.point[i];
  return sol;
}

}  // namespace tropmed::lp
