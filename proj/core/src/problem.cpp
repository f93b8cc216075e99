#include "hbb/problem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace hbb {

std::string bits_to_string(const BitVec& bits) {
  std::string out(bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i)
    if (bits[i]) out[i] = '1';
  return out;
}

BitVec bits_from_string(const std::string& text) {
  BitVec out(text.size(), 0);
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '1')
      out[i] = 1;
    else if (text[i] != '0')
      throw input_error("bit string may only contain 0 and 1");
  }
  return out;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  // SplitMix64 finalizer over base + (index+1) * golden gamma.
  std::uint64_t z = base + (index + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

bool finite(double v) { return std::isfinite(v); }

}  // namespace

void BlopInstance::validate() const {
  if (c.empty()) throw input_error("blop: empty objective");
  const std::size_t n = c.size();
  if (a.size() != b.size() || a.size() != sense.size())
    throw input_error("blop: A, b and sense must have one entry per row");
  for (const auto& row : a)
    if (row.size() != n)
      throw input_error("blop: constraint row width does not match objective");
  for (double v : c)
    if (!finite(v)) throw input_error("blop: non-finite objective coefficient");
  for (const auto& row : a)
    for (double v : row)
      if (!finite(v)) throw input_error("blop: non-finite constraint coefficient");
  for (double v : b)
    if (!finite(v)) throw input_error("blop: non-finite right-hand side");
}

void KpInstance::validate() const {
  if (values.empty()) throw input_error("kp: no items");
  if (values.size() != weights.size())
    throw input_error("kp: values and weights differ in length");
  for (double v : values)
    if (!finite(v) || v <= 0.0) throw input_error("kp: values must be positive");
  for (double w : weights)
    if (!finite(w) || w <= 0.0) throw input_error("kp: weights must be positive");
  // Zero capacity is legal: it describes a residual subproblem whose load
  // is already exhausted, where the empty selection is the only option.
  if (!finite(capacity) || capacity < 0.0)
    throw input_error("kp: capacity must be nonnegative");
}

void TspInstance::validate() const {
  const int n = num_cities();
  if (n < 3) throw input_error("tsp: need at least 3 cities");
  for (const auto& row : cost)
    if (static_cast<int>(row.size()) != n)
      throw input_error("tsp: cost matrix must be square");
  for (int i = 0; i < n; ++i) {
    if (cost[i][i] != 0.0) throw input_error("tsp: diagonal must be zero");
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (!finite(cost[i][j]) || cost[i][j] < 0.0)
        throw input_error("tsp: off-diagonal costs must be finite and nonnegative");
    }
  }
}

Evaluation evaluate_blop(const BlopInstance& inst, const BitVec& bits) {
  inst.validate();
  if (static_cast<int>(bits.size()) != inst.num_vars())
    throw input_error("evaluate_blop: bit vector length mismatch");
  Evaluation out;
  out.objective = 0.0;
  for (int i = 0; i < inst.num_vars(); ++i)
    if (bits[i]) out.objective += inst.c[i];
  out.feasible = true;
  for (int r = 0; r < inst.num_rows(); ++r) {
    double lhs = 0.0;
    for (int i = 0; i < inst.num_vars(); ++i)
      if (bits[i]) lhs += inst.a[r][i];
    if (inst.sense[r] == RowSense::kLessEqual) {
      if (lhs > inst.b[r] + kFeasTol) out.feasible = false;
    } else {
      if (std::abs(lhs - inst.b[r]) > kFeasTol) out.feasible = false;
    }
  }
  return out;
}

KpInstance kp_toy(int n, double capacity) {
  if (n < 1) throw input_error("kp_toy: need at least one item");
  if (capacity < 1.0 || capacity > static_cast<double>(n))
    throw input_error("kp_toy: capacity must lie in [1, n]");
  KpInstance inst;
  inst.values.resize(n);
  inst.weights.assign(n, 1.0);
  std::iota(inst.values.begin(), inst.values.end(), 1.0);
  inst.capacity = capacity;
  return inst;
}

TspInstance tsp_toy(int n) {
  if (n < 3) throw input_error("tsp_toy: need at least 3 cities");
  TspInstance inst;
  inst.cost.assign(n, std::vector<double>(n, 0.0));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      inst.cost[u][v] = static_cast<double>(((v - u) % n + n) % n);
  return inst;
}

BlopInstance kp_to_blop(const KpInstance& inst) {
  inst.validate();
  BlopInstance out;
  out.c.resize(inst.num_items());
  for (int i = 0; i < inst.num_items(); ++i) out.c[i] = -inst.values[i];
  out.a.push_back(inst.weights);
  out.b.push_back(inst.capacity);
  out.sense.push_back(RowSense::kLessEqual);
  return out;
}

double kp_weight(const KpInstance& inst, const BitVec& items) {
  if (items.size() != inst.weights.size())
    throw input_error("kp_weight: bit vector length mismatch");
  double w = 0.0;
  for (std::size_t i = 0; i < items.size(); ++i)
    if (items[i]) w += inst.weights[i];
  return w;
}

double kp_objective(const KpInstance& inst, const BitVec& items) {
  if (items.size() != inst.values.size())
    throw input_error("kp_objective: bit vector length mismatch");
  double z = 0.0;
  for (std::size_t i = 0; i < items.size(); ++i)
    if (items[i]) z -= inst.values[i];
  return z;
}

double tour_cost(const TspInstance& inst, const Tour& tour) {
  const int n = inst.num_cities();
  if (static_cast<int>(tour.order.size()) != n)
    throw input_error("tour_cost: tour must visit every city once");
  std::vector<bool> seen(n, false);
  for (int city : tour.order) {
    if (city < 0 || city >= n || seen[city])
      throw input_error("tour_cost: tour is not a permutation of the cities");
    seen[city] = true;
  }
  double total = 0.0;
  for (int k = 0; k < n; ++k)
    total += inst.cost[tour.order[k]][tour.order[(k + 1) % n]];
  return total;
}

namespace {

// Row/column one-hot test shared by both matrix readings.
bool is_permutation_matrix(const BitVec& bits, int n) {
  for (int i = 0; i < n; ++i) {
    int row = 0, col = 0;
    for (int k = 0; k < n; ++k) {
      row += bits[i * n + k] ? 1 : 0;
      col += bits[k * n + i] ? 1 : 0;
    }
    if (row != 1 || col != 1) return false;
  }
  return true;
}

}  // namespace

bool validate_tour(const TspInstance& inst, const BitVec& assignment,
                   TourEncoding encoding) {
  const int n = inst.num_cities();
  if (static_cast<int>(assignment.size()) != n * n)
    throw input_error("validate_tour: assignment must hold n*n bits");
  if (!is_permutation_matrix(assignment, n)) return false;
  if (encoding == TourEncoding::kCityByStep) {
    // One city per step and one step per city already forces a single
    // closed cycle through all cities.
    return true;
  }
  // Edge reading: follow successors from city 0; a tour returns there after
  // exactly n hops with no earlier repeat (a fixed point is a self-loop).
  std::vector<int> next(n, -1);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (assignment[u * n + v]) next[u] = v;
  int at = 0;
  for (int step = 0; step < n; ++step) {
    at = next[at];
    if (at == 0) return step == n - 1;
  }
  return false;
}

BitVec tour_position_bits(const Tour& tour, int n) {
  BitVec bits(static_cast<std::size_t>(n) * n, 0);
  for (int k = 0; k < n; ++k) bits[tour.order[k] * n + k] = 1;
  return bits;
}

BitVec tour_edge_bits(const Tour& tour, int n) {
  BitVec bits(static_cast<std::size_t>(n) * n, 0);
  for (int k = 0; k < n; ++k)
    bits[tour.order[k] * n + tour.order[(k + 1) % n]] = 1;
  return bits;
}

std::optional<Tour> tour_from_position_bits(const BitVec& bits, int n) {
  if (static_cast<int>(bits.size()) != n * n) return std::nullopt;
  if (!is_permutation_matrix(bits, n)) return std::nullopt;
  std::vector<int> by_step(n, -1);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (bits[i * n + k]) by_step[k] = i;
  int depot_step = 0;
  while (by_step[depot_step] != 0) ++depot_step;
  Tour tour;
  tour.order.resize(n);
  for (int k = 0; k < n; ++k) tour.order[k] = by_step[(depot_step + k) % n];
  return tour;
}

}  // namespace hbb
