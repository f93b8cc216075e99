#include "hbb/hybrid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "hbb/qubo.hpp"

namespace hbb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t call_seed(const HybridConfig& cfg, std::int64_t call_index) {
  return derive_seed(cfg.params.seed, static_cast<std::uint64_t>(call_index));
}

struct KpHybrid {
  const KpInstance& inst;
  const HybridConfig& cfg;
  const Sampler& sampler;
  HybridTrace out;
  BitVec chosen;
  double incumbent = 0.0;  // empty knapsack, always feasible
  BitVec incumbent_bits;
  std::vector<int> by_density;  // item indices, densest first

  KpHybrid(const KpInstance& i, const HybridConfig& c, const Sampler& s)
      : inst(i), cfg(c), sampler(s) {
    const int n = inst.num_items();
    chosen.assign(n, 0);
    incumbent_bits = chosen;
    by_density.resize(n);
    for (int l = 0; l < n; ++l) by_density[l] = l;
    std::stable_sort(by_density.begin(), by_density.end(), [&](int x, int y) {
      return inst.values[x] * inst.weights[y] >
             inst.values[y] * inst.weights[x];
    });
  }

  // Fractional-relaxation value of the residual: free items taken by
  // density until the leftover capacity runs out. Upper-bounds every 0/1
  // completion, so pruning on it never discards an improving residual.
  double completion_bound(int j, double cap) const {
    double gain = 0.0;
    for (const int idx : by_density) {
      if (cap <= kFeasTol) break;
      if (idx < j) continue;
      const double take = std::min(inst.weights[idx], cap);
      gain += take * inst.values[idx] / inst.weights[idx];
      cap -= take;
    }
    return gain;
  }

  // One sampler query for the residual problem made of items j.. with the
  // leftover capacity. The best capacity-respecting read, judged by its
  // projected objective, competes with the incumbent.
  void delegate(int j, double z, double residual_capacity) {
    KpInstance residual;
    residual.values.assign(inst.values.begin() + j, inst.values.end());
    residual.weights.assign(inst.weights.begin() + j, inst.weights.end());
    residual.capacity = residual_capacity;
    const QuboModel q = kp_qubo(residual);

    SamplerParams params = cfg.params;
    params.seed = call_seed(cfg, out.quantum_calls);
    const SampleSet samples = sampler.sample(q, params);

    QuantumCallRecord rec;
    rec.num_bits = q.num_bits;
    rec.descriptor = "kp residual: items " + std::to_string(j) + ".." +
                     std::to_string(inst.num_items() - 1) + ", capacity " +
                     std::to_string(residual_capacity);
    rec.prefix_objective = z;
    rec.next_index = j;
    rec.residual_capacity = residual_capacity;
    rec.total_reads = samples.total_reads;
    rec.best_energy = samples.best().energy;

    const int n_res = residual.num_items();
    const BitVec* best_bits = nullptr;
    double best_obj = kInf;
    for (const auto& entry : samples.entries) {
      double weight = 0.0;
      double obj = 0.0;
      for (int l = 0; l < n_res; ++l)
        if (entry.bits[l]) {
          weight += residual.weights[l];
          obj -= residual.values[l];
        }
      if (weight > residual.capacity + kFeasTol) continue;
      rec.feasible_reads += entry.occurrences;
      if (obj < best_obj) {
        best_obj = obj;
        best_bits = &entry.bits;
      }
    }
    if (best_bits != nullptr) {
      rec.best_feasible_objective = z + best_obj;
      if (z + best_obj < incumbent) {
        incumbent = z + best_obj;
        incumbent_bits = chosen;
        for (int l = 0; l < n_res; ++l)
          if ((*best_bits)[l]) incumbent_bits[j + l] = 1;
        out.incumbents.push_back(incumbent);
        rec.updated_incumbent = true;
      }
    }
    if (cfg.keep_samples) rec.samples = samples;
    ++out.quantum_calls;
    out.per_call_log.push_back(std::move(rec));
  }

  void node(int j, double z, double w) {
    ++out.classical_calls;
    const int n = inst.num_items();
    const double residual_capacity = std::max(0.0, inst.capacity - w);
    if (j < n &&
        (n - j) + slack_bit_count(residual_capacity) <= cfg.max_qubits) {
      // Residuals whose optimistic completion cannot beat the incumbent
      // are never submitted.
      if (z - completion_bound(j, residual_capacity) >= incumbent) return;
      delegate(j, z, residual_capacity);
      return;
    }
    bool branched = false;
    for (int l = j; l < n; ++l) {
      if (w + inst.weights[l] > inst.capacity + kFeasTol) continue;
      branched = true;
      chosen[l] = 1;
      node(l + 1, z - inst.values[l], w + inst.weights[l]);
      chosen[l] = 0;
    }
    if (!branched && z < incumbent) {
      // Classical leaf: too wide to delegate, nothing left to add. Its own
      // prefix is the only candidate in this cell.
      incumbent = z;
      incumbent_bits = chosen;
      out.incumbents.push_back(z);
      ++out.classical_calls;
    }
  }
};

}  // namespace

HybridTrace hybrid_kp(const KpInstance& inst, const HybridConfig& cfg,
                      const Sampler& sampler) {
  inst.validate();
  const int needed = slack_bit_count(inst.capacity) + 1;
  if (cfg.max_qubits < needed)
    throw budget_error("hybrid_kp: budget of " +
                       std::to_string(cfg.max_qubits) + " qubits cannot fit " +
                       "a single item; need at least " +
                       std::to_string(needed));
  KpHybrid search(inst, cfg, sampler);
  search.out.seed = cfg.params.seed;
  search.node(0, 0.0, 0.0);
  HybridTrace out = std::move(search.out);
  out.best.bits = search.incumbent_bits;
  out.best.objective = search.incumbent;
  out.best.feasible = true;
  return out;
}

HybridTrace hybrid_kp(const KpInstance& inst, const HybridConfig& cfg) {
  return hybrid_kp(inst, cfg, *make_sampler(cfg.sampler));
}

namespace {

struct TspNode {
  double cost = 0.0;
  std::vector<int> path;
};

struct TspNodeOrder {
  bool operator()(const TspNode& x, const TspNode& y) const {
    if (x.cost != y.cost) return x.cost > y.cost;
    return x.path > y.path;
  }
};

struct TspHybrid {
  const TspInstance& inst;
  const HybridConfig& cfg;
  const Sampler& sampler;
  const int n;
  const int m_cities;  // residual city budget
  double min_edge = kInf;
  HybridTrace out;
  double incumbent = kInf;

  // First residual ever submitted, kept as the rescue problem: if no read
  // of any call decodes to a valid tour, it is solved exactly so the
  // returned solution is still a tour.
  bool have_first = false;
  TspNode first_node;
  TspInstance first_residual;
  std::vector<int> first_cities;

  TspHybrid(const TspInstance& i, const HybridConfig& c, const Sampler& s,
            int m)
      : inst(i), cfg(c), sampler(s), n(i.num_cities()), m_cities(m) {
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v)
        if (u != v) min_edge = std::min(min_edge, inst.cost[u][v]);
  }

  // Residual cities: the current endpoint first, then the unvisited ones in
  // ascending label order. Column 0 is rewired to point at the depot, so a
  // cyclic residual tour prices exactly the completion of the prefix.
  std::pair<TspInstance, std::vector<int>> residual_of(
      const TspNode& node) const {
    std::vector<int> cities;
    cities.push_back(node.path.back());
    std::vector<bool> visited(n, false);
    for (int c : node.path) visited[c] = true;
    for (int v = 0; v < n; ++v)
      if (!visited[v]) cities.push_back(v);
    const int m = static_cast<int>(cities.size());
    TspInstance residual;
    residual.cost.assign(m, std::vector<double>(m, 0.0));
    for (int a = 0; a < m; ++a)
      for (int b = 0; b < m; ++b) {
        if (a == b) continue;
        residual.cost[a][b] =
            b == 0 ? inst.cost[cities[a]][0] : inst.cost[cities[a]][cities[b]];
      }
    return {std::move(residual), std::move(cities)};
  }

  void adopt(const TspNode& node, const std::vector<int>& cities,
             const Tour& residual_tour, double total) {
    incumbent = total;
    Tour full;
    full.order = node.path;
    for (std::size_t k = 1; k < residual_tour.order.size(); ++k)
      full.order.push_back(cities[residual_tour.order[k]]);
    out.best.bits = tour_edge_bits(full, n);
    out.best.objective = total;
    out.best.feasible = true;
    out.tour = std::move(full);
    out.incumbents.push_back(total);
  }

  void delegate(const TspNode& node) {
    auto [residual, cities] = residual_of(node);
    const int m = static_cast<int>(cities.size());
    if (!have_first) {
      have_first = true;
      first_node = node;
      first_residual = residual;
      first_cities = cities;
    }
    const QuboModel q = tsp_qubo(residual);

    SamplerParams params = cfg.params;
    params.seed = call_seed(cfg, out.quantum_calls);
    const SampleSet samples = sampler.sample(q, params);

    QuantumCallRecord rec;
    rec.num_bits = q.num_bits;
    {
      std::string p;
      for (int c : node.path) p += (p.empty() ? "" : "-") + std::to_string(c);
      rec.descriptor =
          "tsp residual: " + std::to_string(m) + " cities after " + p;
    }
    rec.prefix_objective = node.cost;
    rec.prefix_path = node.path;
    rec.total_reads = samples.total_reads;
    rec.best_energy = samples.best().energy;

    std::optional<Tour> best_tour;
    double best_total = kInf;
    for (const auto& entry : samples.entries) {
      const auto tour = tour_from_position_bits(entry.bits, m);
      if (!tour) continue;
      rec.feasible_reads += entry.occurrences;
      const double total = node.cost + tour_cost(residual, *tour);
      if (total < best_total) {
        best_total = total;
        best_tour = *tour;
      }
    }
    if (best_tour) {
      rec.best_feasible_objective = best_total;
      if (best_total < incumbent) {
        adopt(node, cities, *best_tour, best_total);
        rec.updated_incumbent = true;
      }
    }
    if (cfg.keep_samples) rec.samples = samples;
    ++out.quantum_calls;
    out.per_call_log.push_back(std::move(rec));
  }

  void run() {
    std::priority_queue<TspNode, std::vector<TspNode>, TspNodeOrder> frontier;
    frontier.push(TspNode{0.0, {0}});
    while (!frontier.empty()) {
      TspNode node = frontier.top();
      frontier.pop();
      ++out.classical_calls;
      if (node.cost >= incumbent) continue;
      const int fixed = static_cast<int>(node.path.size());
      const int residual_m = n - fixed + 1;
      if (residual_m <= m_cities) {
        // The cheapest completion still crosses residual_m edges.
        if (node.cost + residual_m * min_edge >= incumbent) continue;
        delegate(node);
        continue;
      }
      std::vector<bool> visited(n, false);
      for (int c : node.path) visited[c] = true;
      for (int v = 1; v < n; ++v) {
        if (visited[v]) continue;
        TspNode child;
        child.cost = node.cost + inst.cost[node.path.back()][v];
        child.path = node.path;
        child.path.push_back(v);
        frontier.push(std::move(child));
      }
    }
    if (incumbent == kInf) {
      // Every read of every call failed the tour check. Solve the first
      // residual exactly rather than return a non-tour.
      BbOptions opts;
      opts.city_cap = std::max(opts.city_cap, first_residual.num_cities());
      const BbResult rescue = tsp_bb(first_residual, opts);
      adopt(first_node, first_cities, *rescue.tour,
            first_node.cost + rescue.best.objective);
    }
  }
};

}  // namespace

HybridTrace hybrid_tsp(const TspInstance& inst, const HybridConfig& cfg,
                       const Sampler& sampler) {
  inst.validate();
  int m = 0;
  while (static_cast<std::int64_t>(m + 1) * (m + 1) <= cfg.max_qubits) ++m;
  m = std::min(m, inst.num_cities());
  if (m < 3)
    throw budget_error("hybrid_tsp: budget of " +
                       std::to_string(cfg.max_qubits) +
                       " qubits covers only " + std::to_string(m) +
                       " cities; the tour encoding needs at least 3");
  TspHybrid search(inst, cfg, sampler, m);
  search.out.seed = cfg.params.seed;
  search.run();
  HybridTrace out = std::move(search.out);
  return out;
}

HybridTrace hybrid_tsp(const TspInstance& inst, const HybridConfig& cfg) {
  return hybrid_tsp(inst, cfg, *make_sampler(cfg.sampler));
}

CallCountStudy call_count_study(const KpInstance& inst,
                                const std::vector<int>& budgets,
                                const HybridConfig& cfg) {
  CallCountStudy study;
  const BbResult classical = kp_bb(inst);
  study.kp_bb_calls =
      classical.stats.branch_events + classical.stats.bound_updates;
  for (int budget : budgets) {
    HybridConfig one = cfg;
    one.max_qubits = budget;
    const HybridTrace trace = hybrid_kp(inst, one);
    study.rows.push_back({budget, trace.classical_calls, trace.quantum_calls,
                          trace.best.objective});
  }
  return study;
}

}  // namespace hbb
