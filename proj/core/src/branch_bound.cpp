#include "hbb/branch_bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

namespace hbb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct GenericSearch {
  const BlopInstance& inst;
  const BbOptions& opts;
  BbResult out;
  BitVec fixed;
  double incumbent = kInf;
  BitVec incumbent_bits;
  std::vector<double> lhs;       // row activity of the fixed prefix
  std::vector<double> neg_tail;  // sum of negative objective coefficients from index i on
  // min_tail[r][i] = smallest coefficient of row r among variables i..n-1,
  // +inf for the empty suffix. A violated <= row with min_tail >= 0 can
  // never recover, which is the only infeasibility prune applied inside
  // the tree; leaves are checked exactly.
  std::vector<std::vector<double>> min_tail;

  explicit GenericSearch(const BlopInstance& i, const BbOptions& o)
      : inst(i), opts(o) {
    const int n = inst.num_vars();
    const int m = inst.num_rows();
    fixed.assign(n, 0);
    lhs.assign(m, 0.0);
    min_tail.assign(m, std::vector<double>(n + 1, kInf));
    for (int r = 0; r < m; ++r)
      for (int v = n - 1; v >= 0; --v)
        min_tail[r][v] = std::min(min_tail[r][v + 1], inst.a[r][v]);
    neg_tail.assign(n + 1, 0.0);
    for (int v = n - 1; v >= 0; --v)
      neg_tail[v] = neg_tail[v + 1] + std::min(0.0, inst.c[v]);
  }

  bool subtree_infeasible(int depth) const {
    for (int r = 0; r < inst.num_rows(); ++r)
      if (inst.sense[r] == RowSense::kLessEqual &&
          lhs[r] > inst.b[r] + kFeasTol && min_tail[r][depth] >= 0.0)
        return true;
    return false;
  }

  bool leaf_feasible() const {
    for (int r = 0; r < inst.num_rows(); ++r) {
      if (inst.sense[r] == RowSense::kLessEqual) {
        if (lhs[r] > inst.b[r] + kFeasTol) return false;
      } else {
        if (std::abs(lhs[r] - inst.b[r]) > kFeasTol) return false;
      }
    }
    return true;
  }

  void visit(int depth, double z) {
    if (depth > 0) ++out.stats.branch_events;
    if (depth == inst.num_vars()) {
      if (!leaf_feasible()) {
        ++out.stats.pruned_infeasible;
        return;
      }
      if (z < incumbent) {
        incumbent = z;
        incumbent_bits = fixed;
        out.incumbents.push_back(z);
        ++out.stats.bound_updates;
      }
      return;
    }
    if (subtree_infeasible(depth)) {
      ++out.stats.pruned_infeasible;
      return;
    }
    // The bound relaxes all constraints: fixed cost plus every negative
    // coefficient still free. A subtree that can at best tie is skipped.
    if (opts.bound_pruning && z + neg_tail[depth] >= incumbent) {
      ++out.stats.pruned_by_bound;
      return;
    }
    for (int bit = 0; bit <= 1; ++bit) {
      fixed[depth] = static_cast<std::uint8_t>(bit);
      if (bit)
        for (int r = 0; r < inst.num_rows(); ++r) lhs[r] += inst.a[r][depth];
      visit(depth + 1, bit ? z + inst.c[depth] : z);
      if (bit)
        for (int r = 0; r < inst.num_rows(); ++r) lhs[r] -= inst.a[r][depth];
    }
    fixed[depth] = 0;
  }
};

}  // namespace

BbResult bb_generic(const BlopInstance& inst, const BbOptions& opts) {
  inst.validate();
  if (inst.num_vars() > opts.var_cap)
    throw budget_error("bb_generic: instance has " +
                       std::to_string(inst.num_vars()) +
                       " variables, cap is " + std::to_string(opts.var_cap));
  GenericSearch search(inst, opts);
  search.visit(0, 0.0);
  BbResult out = std::move(search.out);
  if (search.incumbent < kInf) {
    out.best.bits = search.incumbent_bits;
    out.best.objective = search.incumbent;
    out.best.feasible = true;
    out.proven_optimal = true;
  } else {
    // No feasible point exists; report the all-zero assignment unproven.
    out.best.bits.assign(inst.num_vars(), 0);
    out.best.objective = evaluate_blop(inst, out.best.bits).objective;
    out.best.feasible = false;
    out.proven_optimal = false;
  }
  return out;
}

namespace {

struct KnapsackSearch {
  const KpInstance& inst;
  BbResult out;
  BitVec chosen;
  double incumbent = 0.0;  // empty knapsack
  BitVec incumbent_bits;

  explicit KnapsackSearch(const KpInstance& i) : inst(i) {
    chosen.assign(inst.num_items(), 0);
    incumbent_bits = chosen;
    out.incumbents.push_back(0.0);
  }

  // Branch l adds item l to the current load; earlier free items stay out,
  // so each node is a distinct feasible subset. Positive values mean every
  // node improves on its ancestors, leaving nothing for a cost bound to cut.
  void visit(int first_free, double z, double w) {
    if (z < incumbent) {
      incumbent = z;
      incumbent_bits = chosen;
      out.incumbents.push_back(z);
      ++out.stats.bound_updates;
    }
    for (int l = first_free; l < inst.num_items(); ++l) {
      if (w + inst.weights[l] > inst.capacity + kFeasTol) {
        ++out.stats.pruned_infeasible;
        continue;
      }
      ++out.stats.branch_events;
      chosen[l] = 1;
      visit(l + 1, z - inst.values[l], w + inst.weights[l]);
      chosen[l] = 0;
    }
  }
};

}  // namespace

BbResult kp_bb(const KpInstance& inst, const BbOptions& opts) {
  inst.validate();
  if (inst.num_items() > opts.var_cap)
    throw budget_error("kp_bb: instance has " +
                       std::to_string(inst.num_items()) + " items, cap is " +
                       std::to_string(opts.var_cap));
  KnapsackSearch search(inst);
  search.visit(0, 0.0, 0.0);
  BbResult out = std::move(search.out);
  out.best.bits = search.incumbent_bits;
  out.best.objective = search.incumbent;
  out.best.feasible = true;
  out.proven_optimal = true;
  return out;
}

namespace {

struct PathNode {
  double cost = 0.0;
  std::vector<int> path;
};

// Cheapest accumulated cost first; ties open the lexicographically
// smallest partial path.
struct PathOrder {
  bool operator()(const PathNode& x, const PathNode& y) const {
    if (x.cost != y.cost) return x.cost > y.cost;
    return x.path > y.path;
  }
};

}  // namespace

BbResult tsp_bb(const TspInstance& inst, const BbOptions& opts) {
  inst.validate();
  const int n = inst.num_cities();
  if (n > opts.city_cap)
    throw budget_error("tsp_bb: instance has " + std::to_string(n) +
                       " cities, cap is " + std::to_string(opts.city_cap));
  BbResult out;
  double incumbent = kInf;
  std::vector<int> incumbent_order;

  std::priority_queue<PathNode, std::vector<PathNode>, PathOrder> frontier;
  frontier.push(PathNode{0.0, {0}});
  bool root = true;
  while (!frontier.empty()) {
    PathNode node = frontier.top();
    frontier.pop();
    if (!root) ++out.stats.branch_events;
    root = false;
    if (opts.bound_pruning && node.cost >= incumbent) {
      ++out.stats.pruned_by_bound;
      continue;
    }
    std::vector<bool> visited(n, false);
    for (int c : node.path) visited[c] = true;
    const int last = node.path.back();
    if (static_cast<int>(node.path.size()) == n - 1) {
      // One city left: closing through it fixes the whole tour.
      for (int v = 1; v < n; ++v) {
        if (visited[v]) continue;
        const double total = node.cost + inst.cost[last][v] + inst.cost[v][0];
        ++out.stats.branch_events;
        if (total < incumbent) {
          incumbent = total;
          incumbent_order = node.path;
          incumbent_order.push_back(v);
          out.incumbents.push_back(total);
          ++out.stats.bound_updates;
        }
      }
      continue;
    }
    for (int v = 1; v < n; ++v) {
      if (visited[v]) continue;
      PathNode child;
      child.cost = node.cost + inst.cost[last][v];
      child.path = node.path;
      child.path.push_back(v);
      frontier.push(std::move(child));
    }
  }

  out.best.feasible = true;
  out.proven_optimal = true;
  Tour tour;
  tour.order = incumbent_order;
  out.best.bits = tour_edge_bits(tour, n);
  out.best.objective = incumbent;
  out.tour = std::move(tour);
  return out;
}

std::int64_t kp_bb_branch_count(int n, int w) {
  if (n < 1 || w < 1 || w > n)
    throw input_error("kp_bb_branch_count: need 1 <= w_cap <= n");
  // Running binomial: C(n,k) = C(n,k-1) * (n-k+1) / k, exact at each step.
  std::int64_t total = 0;
  std::int64_t binom = 1;
  for (int k = 1; k <= w; ++k) {
    if (binom > std::numeric_limits<std::int64_t>::max() / (n - k + 1))
      throw std::overflow_error("kp_bb_branch_count: 64-bit overflow");
    binom = binom * (n - k + 1) / k;
    if (total > std::numeric_limits<std::int64_t>::max() - binom)
      throw std::overflow_error("kp_bb_branch_count: 64-bit overflow");
    total += binom;
  }
  return total;
}

}  // namespace hbb
