#pragma once

/// Truncated branch and bound: classical branching runs until the residual
/// subproblem fits the qubit budget, then the residual is encoded as a QUBO
/// and handed to a sampler. Sampled candidates are checked classically;
/// infeasible reads are logged and never touch the incumbent.
///
/// Call accounting: classical_calls counts every node the classical loop
/// processes (the root included) plus incumbent updates made by classical
/// leaf completions. Incumbent updates caused by sampler results belong to
/// the quantum call that produced them, so a budget that covers the whole
/// problem yields classical_calls == quantum_calls == 1.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hbb/branch_bound.hpp"
#include "hbb/problem.hpp"
#include "hbb/samplers.hpp"

namespace hbb {

struct HybridConfig {
  // For knapsack this is the qubit count directly. For TSP the budget is
  // expressed in cities M (M*M qubits); hybrid_tsp uses floor(sqrt(.)).
  int max_qubits = 29;
  SamplerKind sampler = SamplerKind::kExact;
  SamplerParams params;
  int runs = 20;              // consumed by experiment drivers, not here
  bool keep_samples = false;  // retain full SampleSets in the call log
};

struct QuantumCallRecord {
  std::string descriptor;  // human-readable subproblem summary
  int num_bits = 0;
  double best_energy = 0.0;
  std::optional<double> best_feasible_objective;  // full-problem objective
  std::int64_t feasible_reads = 0;
  std::int64_t total_reads = 0;
  bool updated_incumbent = false;
  // Enough structure to rebuild the residual: knapsack keeps the index of
  // the first free item and the remaining capacity, TSP keeps the fixed
  // path prefix.
  double prefix_objective = 0.0;
  int next_index = 0;
  double residual_capacity = 0.0;
  std::vector<int> prefix_path;
  std::optional<SampleSet> samples;  // present when keep_samples is set
};

struct HybridTrace {
  std::int64_t classical_calls = 0;
  std::int64_t quantum_calls = 0;
  BitSolution best;
  std::optional<Tour> tour;  // set by hybrid_tsp
  std::vector<QuantumCallRecord> per_call_log;
  std::vector<double> incumbents;  // strictly decreasing
  std::uint64_t seed = 0;
};

// Depth-first knapsack branching; branch k includes item k and excludes all
// earlier free items. The budget test uses the residual capacity. Requires
// max_qubits >= slack_bit_count(capacity) + 1 so that at least one item fits.
HybridTrace hybrid_kp(const KpInstance& inst, const HybridConfig& cfg);
HybridTrace hybrid_kp(const KpInstance& inst, const HybridConfig& cfg,
                      const Sampler& sampler);

// Best-first path branching (ties opened in lexicographic path order). A
// node with M cities left (current city plus unvisited ones) is delegated as
// an M-city residual whose return column points back at the depot. Requires
// a budget of at least 3 cities. A residual is submitted only when its
// optimistic completion could still beat the incumbent.
HybridTrace hybrid_tsp(const TspInstance& inst, const HybridConfig& cfg);
HybridTrace hybrid_tsp(const TspInstance& inst, const HybridConfig& cfg,
                       const Sampler& sampler);

struct CallCountRow {
  int budget = 0;
  std::int64_t classical_calls = 0;
  std::int64_t quantum_calls = 0;
  double best_objective = 0.0;
};

struct CallCountStudy {
  std::vector<CallCountRow> rows;
  // Reference line: branch events plus incumbent updates of the fully
  // classical solver on the same instance.
  std::int64_t kp_bb_calls = 0;
};

CallCountStudy call_count_study(const KpInstance& inst,
                                const std::vector<int>& budgets,
                                const HybridConfig& cfg);

}  // namespace hbb
