#include <cmath>

#include "doctest.h"
#include "hbb/branch_bound.hpp"
#include "hbb/hybrid.hpp"
#include "hbb/problem.hpp"
#include "hbb/qubo.hpp"
#include "hbb/samplers.hpp"
#include "oracles.hpp"

using namespace hbb;

namespace {

// Sampler that never produces anything useful: one all-zero read. Used to
// exercise the paths that must survive a useless annealer.
struct DudSampler : Sampler {
  SampleSet sample(const QuboModel& q, const SamplerParams&) const override {
    SampleSet set;
    SampleEntry e;
    e.bits.assign(q.num_bits, 0);
    e.energy = eval_qubo(q, e.bits);
    e.occurrences = 1;
    set.entries.push_back(std::move(e));
    set.total_reads = 1;
    set.sampler_id = "dud";
    return set;
  }
  std::string id() const override { return "dud"; }
};

}  // namespace

TEST_SUITE("hybrid") {

TEST_CASE("full budget is a single exchange") {
  const KpInstance kp = kp_toy(8, 3.0);
  HybridConfig cfg;
  cfg.max_qubits = kp_qubo_bits(kp);  // 10
  const HybridTrace kp_trace = hybrid_kp(kp, cfg);
  CHECK(kp_trace.classical_calls == 1);
  CHECK(kp_trace.quantum_calls == 1);
  CHECK(kp_trace.best.objective == -21.0);
  CHECK(kp_trace.best.feasible);

  HybridConfig tsp_cfg;
  tsp_cfg.max_qubits = 25;  // five cities squared
  const HybridTrace tsp_trace = hybrid_tsp(tsp_toy(5), tsp_cfg);
  CHECK(tsp_trace.classical_calls == 1);
  CHECK(tsp_trace.quantum_calls == 1);
  CHECK(tsp_trace.best.objective == 5.0);
  REQUIRE(tsp_trace.tour.has_value());
  CHECK(tour_cost(tsp_toy(5), *tsp_trace.tour) == 5.0);
}

TEST_CASE("exact sampler preserves optimality across budgets") {
  const KpInstance kp = kp_toy(10, 5.0);
  const double opt = kp_bb(kp).best.objective;  // -40
  CHECK(opt == -40.0);
  const int bottom = slack_bit_count(kp.capacity) + 1;  // 4
  for (int budget = bottom; budget <= kp_qubo_bits(kp); ++budget) {
    HybridConfig cfg;
    cfg.max_qubits = budget;
    const HybridTrace trace = hybrid_kp(kp, cfg);
    CHECK(trace.best.objective == opt);
    CHECK(trace.best.feasible);
    CHECK(kp_weight(kp, trace.best.bits) <= kp.capacity + kFeasTol);
    CHECK(kp_objective(kp, trace.best.bits) == trace.best.objective);
  }

  const TspInstance tsp = tsp_toy(5);
  for (int cities = 3; cities <= 5; ++cities) {
    HybridConfig cfg;
    cfg.max_qubits = cities * cities;
    const HybridTrace trace = hybrid_tsp(tsp, cfg);
    CHECK(trace.best.objective == 5.0);
    REQUIRE(trace.tour.has_value());
    CHECK(tour_cost(tsp, *trace.tour) == 5.0);
  }
}

TEST_CASE("budgets below the floor are refused") {
  // kp_toy(8,3) carries 2 slack bits, so the smallest usable budget is 3.
  HybridConfig cfg;
  cfg.max_qubits = 2;
  CHECK_THROWS_AS(hybrid_kp(kp_toy(8, 3.0), cfg), budget_error);
  cfg.max_qubits = 3;
  CHECK(hybrid_kp(kp_toy(8, 3.0), cfg).best.objective == -21.0);

  HybridConfig tsp_cfg;
  tsp_cfg.max_qubits = 8;  // floor(sqrt(8)) = 2 cities, below the minimum 3
  CHECK_THROWS_AS(hybrid_tsp(tsp_toy(5), tsp_cfg), budget_error);
  tsp_cfg.max_qubits = 9;
  CHECK(hybrid_tsp(tsp_toy(5), tsp_cfg).best.objective == 5.0);
}

TEST_CASE("call log retains residual structure") {
  const KpInstance kp = kp_toy(8, 3.0);
  HybridConfig cfg;
  cfg.max_qubits = 6;
  cfg.keep_samples = true;
  const HybridTrace trace = hybrid_kp(kp, cfg);
  CHECK(trace.best.objective == -21.0);
  REQUIRE(!trace.per_call_log.empty());
  CHECK(trace.quantum_calls ==
        static_cast<std::int64_t>(trace.per_call_log.size()));
  for (const QuantumCallRecord& rec : trace.per_call_log) {
    CHECK(rec.num_bits <= cfg.max_qubits);
    REQUIRE(rec.samples.has_value());
    CHECK(rec.total_reads == rec.samples->total_reads);
    CHECK(rec.feasible_reads <= rec.total_reads);
    CHECK(!rec.descriptor.empty());

    // The stored coordinates rebuild the exact residual that was sampled.
    KpInstance residual;
    residual.values.assign(kp.values.begin() + rec.next_index,
                           kp.values.end());
    residual.weights.assign(kp.weights.begin() + rec.next_index,
                            kp.weights.end());
    residual.capacity = rec.residual_capacity;
    CHECK(kp_qubo_bits(residual) == rec.num_bits);
  }

  for (std::size_t i = 1; i < trace.incumbents.size(); ++i)
    CHECK(trace.incumbents[i] < trace.incumbents[i - 1]);
}

TEST_CASE("classical calls shrink as the budget grows") {
  const KpInstance kp = kp_toy(12, 6.0);
  HybridConfig cfg;
  cfg.sampler = SamplerKind::kExact;
  const std::vector<int> budgets = {4, 6, 8, 10, 12, 14, 15};
  const CallCountStudy study = call_count_study(kp, budgets, cfg);
  REQUIRE(study.rows.size() == budgets.size());
  for (std::size_t i = 0; i < study.rows.size(); ++i) {
    CHECK(study.rows[i].budget == budgets[i]);
    CHECK(study.rows[i].best_objective == -57.0);
    if (i > 0)
      CHECK(study.rows[i].classical_calls <= study.rows[i - 1].classical_calls);
  }
  CHECK(study.rows.back().classical_calls == 1);
  CHECK(study.rows.back().quantum_calls == 1);

  const BbResult classical = kp_bb(kp);
  CHECK(study.kp_bb_calls ==
        classical.stats.branch_events + classical.stats.bound_updates);
}

TEST_CASE("useless sampler results never break soundness") {
  // The dud sampler returns the empty knapsack for every residual; the
  // incumbent must then come from classical leaf completions alone.
  const KpInstance kp = kp_toy(6, 3.0);
  HybridConfig cfg;
  cfg.max_qubits = 4;
  const DudSampler dud;
  const HybridTrace trace = hybrid_kp(kp, cfg, dud);
  CHECK(trace.best.feasible);
  CHECK(kp_weight(kp, trace.best.bits) <= kp.capacity + kFeasTol);
  // All-zero residual reads project to "take the branched prefix only";
  // the best prefix alone reaches -15 here via the classical-leaf rule or
  // prefix-projection, and never exceeds the true optimum.
  CHECK(trace.best.objective <= 0.0);
  CHECK(trace.best.objective >= kp_bb(kp).best.objective);
}

TEST_CASE("tour rescue still returns a tour when every read is junk") {
  const TspInstance tsp = tsp_toy(5);
  HybridConfig cfg;
  cfg.max_qubits = 9;  // three-city residuals
  const DudSampler dud;
  const HybridTrace trace = hybrid_tsp(tsp, cfg, dud);
  REQUIRE(trace.tour.has_value());
  CHECK(static_cast<int>(trace.tour->order.size()) == 5);
  CHECK(trace.tour->order[0] == 0);
  CHECK(trace.best.feasible);
  CHECK(trace.best.objective == tour_cost(tsp, *trace.tour));
  CHECK(trace.best.objective >= 5.0);  // never better than the optimum
}

TEST_CASE("traces are reproducible run to run") {
  const KpInstance kp = kp_toy(10, 5.0);
  HybridConfig cfg;
  cfg.max_qubits = 8;
  cfg.sampler = SamplerKind::kSa;
  cfg.params.num_reads = 80;
  cfg.params.num_sweeps = 80;
  cfg.params.seed = 123;
  const HybridTrace a = hybrid_kp(kp, cfg);
  const HybridTrace b = hybrid_kp(kp, cfg);
  CHECK(a.classical_calls == b.classical_calls);
  CHECK(a.quantum_calls == b.quantum_calls);
  CHECK(a.best.objective == b.best.objective);
  CHECK(a.best.bits == b.best.bits);
  CHECK(a.incumbents == b.incumbents);
  REQUIRE(a.per_call_log.size() == b.per_call_log.size());
  for (std::size_t i = 0; i < a.per_call_log.size(); ++i) {
    CHECK(a.per_call_log[i].best_energy == b.per_call_log[i].best_energy);
    CHECK(a.per_call_log[i].num_bits == b.per_call_log[i].num_bits);
  }
  CHECK(a.seed == cfg.params.seed);
}

TEST_CASE("tour hybrid stays frugal on the ten-city toy") {
  HybridConfig cfg;
  cfg.max_qubits = 36;  // six-city residuals
  const HybridTrace trace = hybrid_tsp(tsp_toy(10), cfg);
  CHECK(trace.best.objective == 10.0);
  REQUIRE(trace.tour.has_value());
  CHECK(tour_cost(tsp_toy(10), *trace.tour) == 10.0);
  CHECK(trace.quantum_calls <= 50);
}

}  // TEST_SUITE
