#pragma once

/// Penalty reformulations. A constrained binary program becomes an
/// unconstrained quadratic by paying lambda * residual^2 per constraint;
/// inequality rows get power-of-two slack bits first. The Ising form
/// substitutes s = x - 1/2 (spins +-1/2) with an exact offset.

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hbb/problem.hpp"

namespace hbb {

// Decode hint for samplers that can exploit problem shape. kTspPosition is
// only set when the penalty weight provably dominates every edge cost, so
// the model's global minima are exactly the optimal valid tours.
enum class QuboStructure : std::uint8_t { kGeneric, kKnapsack, kTspPosition };

struct QuboModel {
  int num_bits = 0;
  std::vector<double> linear;
  std::map<std::pair<int, int>, double> quadratic;  // keys i < j only
  double offset = 0.0;
  std::vector<std::string> var_names;
  QuboStructure structure = QuboStructure::kGeneric;
  int structure_n = 0;  // city count when structure == kTspPosition

  // Normalizes the key to i < j, rejects i == j and any duplicate of an
  // existing key (also in mirrored form).
  void add_quadratic(int i, int j, double value);
  void accumulate_quadratic(int i, int j, double value);  // += semantics
};

struct IsingModel {
  int num_spins = 0;
  std::vector<double> h;
  std::map<std::pair<int, int>, double> j;  // keys i < j only
  double offset = 0.0;
};

// Slack bits needed to cover the integer range 0..bound: ceil(log2(bound+1)).
int slack_bit_count(double bound);

// General reduction: objective c.x plus one squared penalty per row. Each
// <= row with bound b contributes slack_bit_count(b) extra bits with
// coefficients 1, 2, 4, ... Equality rows take no slack.
QuboModel blop_to_qubo(const BlopInstance& inst,
                       const std::vector<double>& lambdas);

// Knapsack special case. Without an explicit lambda the penalty is
// max(values) + 1, which is the smallest integer weight that makes every
// capacity violation cost more than the best value it could add.
QuboModel kp_qubo(const KpInstance& inst, std::optional<double> lambda = {});

int kp_qubo_bits(const KpInstance& inst);  // items + slack bits

// City-by-step encoding on n^2 bits: objective sums cost[i][j] over
// consecutive steps (cyclically), one penalty per city and per step.
// Default lambda is max cost + 1 and must exceed every edge cost.
QuboModel tsp_qubo(const TspInstance& inst, std::optional<double> lambda = {});

IsingModel qubo_to_ising(const QuboModel& q);

double eval_qubo(const QuboModel& q, const BitVec& bits);
double eval_ising(const IsingModel& m, const std::vector<double>& spins);
std::vector<double> spins_from_bits(const BitVec& bits);  // x -> x - 1/2

}  // namespace hbb
