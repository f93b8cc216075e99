#pragma once

/// Problem instances: binary linear programs, knapsack and traveling
/// salesman, plus the toy families used by the experiments. Everything is
/// phrased as minimization; knapsack values enter the objective negated.

#include <cstdint>
#include <optional>
#include <vector>

#include "hbb/types.hpp"

namespace hbb {

enum class RowSense : std::uint8_t { kLessEqual, kEqual };

// min c.x  subject to  A x (<=|=) b,  x in {0,1}^n.
struct BlopInstance {
  std::vector<double> c;
  std::vector<std::vector<double>> a;  // row major, one vector per constraint
  std::vector<double> b;
  std::vector<RowSense> sense;

  int num_vars() const { return static_cast<int>(c.size()); }
  int num_rows() const { return static_cast<int>(b.size()); }
  void validate() const;  // throws input_error on shape mismatch
};

// min -v.x  subject to  w.x <= capacity. values and weights stay positive.
struct KpInstance {
  std::vector<double> values;
  std::vector<double> weights;
  double capacity = 0.0;

  int num_items() const { return static_cast<int>(values.size()); }
  void validate() const;
};

// Directed tour cost matrix. cost[u][v] is the price of edge u -> v;
// the diagonal is zero, off-diagonal entries are finite and nonnegative.
struct TspInstance {
  std::vector<std::vector<double>> cost;

  int num_cities() const { return static_cast<int>(cost.size()); }
  void validate() const;
};

struct Evaluation {
  double objective = 0.0;
  bool feasible = false;
};

struct BitSolution {
  BitVec bits;
  double objective = 0.0;
  bool feasible = false;
};

// Visit order over all cities; order[0] is the depot.
struct Tour {
  std::vector<int> order;
};

Evaluation evaluate_blop(const BlopInstance& inst, const BitVec& bits);

// n unit-weight items with values 1..n and the given capacity. Optimum takes
// the floor(capacity) most valuable items.
KpInstance kp_toy(int n, double capacity);

// Cyclic toy costs: cost[u][v] = (v - u) mod n, so the ascending tour
// 0,1,...,n-1 is optimal with cost n.
TspInstance tsp_toy(int n);

BlopInstance kp_to_blop(const KpInstance& inst);

double kp_weight(const KpInstance& inst, const BitVec& items);
double kp_objective(const KpInstance& inst, const BitVec& items);  // -v.x

double tour_cost(const TspInstance& inst, const Tour& tour);

// Two readings of an n x n binary assignment matrix:
//  - kCityByStep: bit (i, k) means city i is visited at step k. One-hot rows
//    and columns are necessary and sufficient; the induced step sequence is
//    always a single closed cycle.
//  - kEdgeByPair: bit (u, v) selects edge u -> v. One-hot rows and columns
//    make the matrix a permutation; it is a tour only when the permutation
//    decomposes into a single n-cycle (no fixed points, no subtours).
enum class TourEncoding : std::uint8_t { kCityByStep, kEdgeByPair };

bool validate_tour(const TspInstance& inst, const BitVec& assignment,
                   TourEncoding encoding = TourEncoding::kCityByStep);

// Row-major flattening with bit (i, k) at index i*n + k.
BitVec tour_position_bits(const Tour& tour, int n);
BitVec tour_edge_bits(const Tour& tour, int n);

// Decodes a city-by-step matrix and rotates the result so the depot (city 0)
// comes first. Returns nullopt when the matrix is not one-hot.
std::optional<Tour> tour_from_position_bits(const BitVec& bits, int n);

}  // namespace hbb
