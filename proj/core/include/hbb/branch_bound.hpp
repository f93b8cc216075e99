#pragma once

/// Exact branch-and-bound solvers. bb_generic fixes one variable per level
/// over a binary tree; kp_bb enumerates knapsack subsets depth first in
/// index order; tsp_bb grows partial paths best first by accumulated cost.

#include <cstdint>
#include <optional>
#include <vector>

#include "hbb/problem.hpp"

namespace hbb {

struct SearchStats {
  std::int64_t branch_events = 0;      // nodes created below the root
  std::int64_t bound_updates = 0;      // incumbent improvements
  std::int64_t pruned_by_bound = 0;
  std::int64_t pruned_infeasible = 0;
};

struct BbResult {
  BitSolution best;
  SearchStats stats;
  bool proven_optimal = false;
  // Incumbent objectives in the order they were recorded; strictly
  // decreasing. kp_bb seeds the list with the empty knapsack at 0.
  std::vector<double> incumbents;
  std::optional<Tour> tour;  // set by tsp_bb
};

struct BbOptions {
  int var_cap = 32;           // bb_generic and kp_bb refuse larger instances
  int city_cap = 12;          // tsp_bb refuses larger instances
  // Subtrees whose optimistic bound cannot strictly improve the incumbent
  // are skipped. Turning this off changes stats, never the optimum.
  bool bound_pruning = true;
};

BbResult bb_generic(const BlopInstance& inst, const BbOptions& opts = {});
BbResult kp_bb(const KpInstance& inst, const BbOptions& opts = {});
BbResult tsp_bb(const TspInstance& inst, const BbOptions& opts = {});

// Branches explored by kp_bb on a unit-weight instance with integer
// capacity w: sum over k = 1..w of C(n, k). Throws std::overflow_error when
// the count does not fit in 64 bits.
std::int64_t kp_bb_branch_count(int n, int w);

}  // namespace hbb
