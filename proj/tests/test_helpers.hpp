#pragma once

#include "tropmed/tree_gen.hpp"
#include "tropmed/tropical.hpp"

#include <random>
#include <vector>

namespace tropmed::testing {

// Deterministic source of small exact rationals and instances.
struct Rng {
  std::mt19937_64 engine;

  explicit Rng(std::uint64_t seed) : engine(seed) {}

  long long int_in(long long lo, long long hi) {
    return lo + static_cast<long long>(
                    uniform_below(engine, static_cast<std::uint64_t>(hi - lo + 1)));
  }

  Rat rat(long long num_bound = 12, long long den_bound = 6) {
    return Rat(int_in(-num_bound, num_bound), int_in(1, den_bound));
  }

  std::vector<Rat> vec(int n) {
    std::vector<Rat> v(n);
    for (Rat& c : v) c = rat();
    return v;
  }

  TropicalPoint point(int n) { return TropicalPoint(vec(n)); }

  SiteMatrix sites(int m, int n) {
    std::vector<std::vector<Rat>> rows(m);
    for (auto& row : rows) row = vec(n);
    return SiteMatrix(std::move(rows));
  }
};

// The five-site configuration used throughout: its Fermat-Weber point is
// (9,-6,-3) with optimal value 72.
inline SiteMatrix golden_sites() {
  auto q = [](long long v) { return Rat(v); };
  return SiteMatrix({{q(14), q(-7), q(-7)},
                     {q(13), q(-14), q(1)},
                     {q(11), q(-13), q(2)},
                     {q(10), q(1), q(-11)},
                     {q(3), q(-3), q(0)}});
}

// v_ij = (i-1)(j-1); the Fermat-Weber set is a cube of dimension
// gcd(m,n)-1.
inline SiteMatrix staircase_sites(int m, int n) {
  std::vector<std::vector<Rat>> rows(m, std::vector<Rat>(n));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) rows[i][j] = Rat(i * j);
  return SiteMatrix(std::move(rows));
}

inline constexpr const char* kTreeT1 = "(D:10,(C:4,(B:2,A:2):2):6);";
inline constexpr const char* kTreeT2 = "(A:10,(B:4,(C:2,D:2):2):6);";
inline constexpr const char* kTreeT3 = "(A:10,((B:4,C:4):3,D:7):3);";
inline constexpr const char* kMedianT1T2 = "(A:10,D:10,(B:4,C:4):6);";

inline constexpr const char* kNineLeafA =
    "(A:8,((B:2,(C:1,D:1):1):5,((E:1,F:1):3,(G:2,(H:1,I:1):1):2):3):1);";
inline constexpr const char* kNineLeafB =
    "((A:3,(C:2,(B:1,D:1):1):1):5,((E:1,F:1):3,(G:2,(H:1,I:1):1):2):4);";
inline constexpr const char* kNineLeafC =
    "((A:2,(C:1,D:1):1):6,(E:2,(F:1,B:1):1):6,(G:2,H:2,I:2):6);";

}  // namespace tropmed::testing
