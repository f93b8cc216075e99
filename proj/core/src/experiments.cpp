#include "hbb/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "hbb/metrics.hpp"
#include "hbb/spectrum.hpp"

namespace hbb {

namespace {

using Json = nlohmann::ordered_json;

// Baseline repetitions draw from a seed stream far away from the hybrid run
// stream so the two never alias.
constexpr std::uint64_t kBaselineStream = std::uint64_t{1} << 32;

Json parse_json(const std::string& text, const char* what) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw input_error(std::string(what) + ": malformed JSON");
  return j;
}

std::vector<int> int_vector(const Json& v, const char* key) {
  if (!v.is_array())
    throw input_error(std::string("experiment config: field '") + key +
                      "' must be an array of integers");
  std::vector<int> out;
  out.reserve(v.size());
  for (const Json& x : v) {
    if (!x.is_number_integer())
      throw input_error(std::string("experiment config: field '") + key +
                        "' must hold integers only");
    out.push_back(x.get<int>());
  }
  return out;
}

ExperimentConfig default_config(const std::string& id) {
  const auto& ids = experiment_ids();
  if (std::find(ids.begin(), ids.end(), id) == ids.end())
    throw input_error("experiment: unknown id '" + id + "'");
  ExperimentConfig cfg;
  cfg.id = id;
  // The call-count study cares about counts, not solution polish, and its
  // widest residual exceeds the exhaustive sampler's cap, so it defaults to
  // a lighter annealing effort than the metric studies.
  if (id == "calls-vs-budget") {
    cfg.params.num_reads = 200;
    cfg.params.num_sweeps = 200;
  }
  return cfg;
}

KpInstance kp_instance_for(const ExperimentConfig& cfg, KpInstance fallback) {
  if (!cfg.instance) return fallback;
  if (const auto* kp = std::get_if<KpInstance>(&*cfg.instance)) return *kp;
  throw input_error(cfg.id + ": needs a knapsack instance");
}

TspInstance tsp_instance_for(const ExperimentConfig& cfg,
                             TspInstance fallback) {
  if (!cfg.instance) return fallback;
  if (const auto* tsp = std::get_if<TspInstance>(&*cfg.instance)) return *tsp;
  throw input_error(cfg.id + ": needs a tour instance");
}

// Ground energies of delegated residuals, solved exhaustively once and
// shared across runs and budgets; identical prefixes recur constantly.
struct KpGroundCache {
  const KpInstance* inst = nullptr;
  std::map<std::pair<int, double>, double> ground;

  double operator()(const QuantumCallRecord& rec) {
    const auto key = std::make_pair(rec.next_index, rec.residual_capacity);
    if (const auto it = ground.find(key); it != ground.end())
      return it->second;
    KpInstance residual;
    residual.values.assign(inst->values.begin() + rec.next_index,
                           inst->values.end());
    residual.weights.assign(inst->weights.begin() + rec.next_index,
                            inst->weights.end());
    residual.capacity = rec.residual_capacity;
    const double g = sample_exact(kp_qubo(residual)).best().energy;
    ground.emplace(key, g);
    return g;
  }
};

// Mirrors the residual the hybrid solver submits: city 0 is the current
// endpoint and its return column points back at the depot.
TspInstance tsp_residual(const TspInstance& inst,
                         const std::vector<int>& prefix) {
  const int n = inst.num_cities();
  std::vector<char> used(static_cast<std::size_t>(n), 0);
  for (const int c : prefix) used[static_cast<std::size_t>(c)] = 1;
  std::vector<int> cities;
  cities.push_back(prefix.back());
  for (int c = 0; c < n; ++c)
    if (used[static_cast<std::size_t>(c)] == 0) cities.push_back(c);

  const int m = static_cast<int>(cities.size());
  TspInstance residual;
  residual.cost.assign(static_cast<std::size_t>(m),
                       std::vector<double>(static_cast<std::size_t>(m), 0.0));
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (a == b) continue;
      const int from = cities[static_cast<std::size_t>(a)];
      residual.cost[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          b == 0 ? inst.cost[static_cast<std::size_t>(from)][0]
                 : inst.cost[static_cast<std::size_t>(from)]
                           [static_cast<std::size_t>(
                               cities[static_cast<std::size_t>(b)])];
    }
  }
  return residual;
}

struct TspGroundCache {
  const TspInstance* inst = nullptr;
  std::map<std::vector<int>, double> ground;

  double operator()(const QuantumCallRecord& rec) {
    if (const auto it = ground.find(rec.prefix_path); it != ground.end())
      return it->second;
    const double g =
        sample_exact(tsp_qubo(tsp_residual(*inst, rec.prefix_path)))
            .best()
            .energy;
    ground.emplace(rec.prefix_path, g);
    return g;
  }
};

// Ground-state frequency over every read of every call in one run.
template <typename GroundFn>
double run_p0(const HybridTrace& trace, GroundFn&& ground_of) {
  double hits = 0.0;
  std::int64_t total = 0;
  for (const QuantumCallRecord& rec : trace.per_call_log) {
    const SampleSet& set = rec.samples.value();
    hits += p0_estimate(set, ground_of(rec)) *
            static_cast<double>(set.total_reads);
    total += set.total_reads;
  }
  return total > 0 ? hits / static_cast<double>(total) : 0.0;
}

struct MetricRow {
  MeanVar delta_v;
  MeanVar w_tilde;
  MeanVar ham;
  MeanVar p0;
};

const std::vector<std::string>& kp_metric_columns() {
  static const std::vector<std::string> cols = {
      "delta_v_mean", "delta_v_var", "w_tilde_mean", "w_tilde_var",
      "hamming_mean", "hamming_var", "p0_mean",      "p0_var"};
  return cols;
}

void append_metric_cells(std::vector<std::string>& row, const MetricRow& m) {
  for (const MeanVar* mv : {&m.delta_v, &m.w_tilde, &m.ham, &m.p0}) {
    row.push_back(fmt_num(mv->mean));
    row.push_back(fmt_num(mv->variance));
  }
}

MetricRow kp_hybrid_row(const KpInstance& inst, const BbResult& opt,
                        int budget, const ExperimentConfig& cfg,
                        std::uint64_t series_seed, KpGroundCache& cache) {
  std::vector<double> dv;
  std::vector<double> wt;
  std::vector<double> hm;
  std::vector<double> p0;
  for (int r = 0; r < cfg.runs; ++r) {
    HybridConfig hc;
    hc.max_qubits = budget;
    hc.sampler = cfg.sampler;
    hc.params = cfg.params;
    hc.params.seed = derive_seed(series_seed, static_cast<std::uint64_t>(r));
    hc.keep_samples = true;
    const HybridTrace trace = hybrid_kp(inst, hc);
    dv.push_back(delta_v(trace.best.objective, opt.best.objective));
    wt.push_back(w_tilde(kp_weight(inst, trace.best.bits), inst.capacity));
    hm.push_back(static_cast<double>(hamming(trace.best.bits, opt.best.bits)));
    p0.push_back(run_p0(trace, cache));
  }
  return {aggregate(dv), aggregate(wt), aggregate(hm), aggregate(p0)};
}

MetricRow kp_baseline_row(const KpInstance& inst, const BbResult& opt,
                          const QuboModel& full, double full_ground,
                          const ExperimentConfig& cfg, std::uint64_t seed) {
  const int n = inst.num_items();
  std::vector<double> dv;
  std::vector<double> wt;
  std::vector<double> hm;
  std::vector<double> p0;
  for (int r = 0; r < cfg.runs; ++r) {
    const SampleSet draws = sample_random(full, cfg.params.num_reads,
                                          derive_seed(seed, r));
    const SampleEntry& champion = draws.entries.front();
    const BitVec items(champion.bits.begin(), champion.bits.begin() + n);
    dv.push_back(delta_v(kp_objective(inst, items), opt.best.objective));
    wt.push_back(w_tilde(kp_weight(inst, items), inst.capacity));
    hm.push_back(static_cast<double>(hamming(items, opt.best.bits)));
    p0.push_back(p0_estimate(draws, full_ground));
  }
  return {aggregate(dv), aggregate(wt), aggregate(hm), aggregate(p0)};
}

std::vector<std::filesystem::path> write_outputs(const ExperimentConfig& cfg,
                                                 const CsvTable& table,
                                                 PlotKind kind,
                                                 const Json* sidecar = nullptr) {
  const std::filesystem::path csv = cfg.out_dir / (cfg.id + ".csv");
  table.save(csv);
  const std::filesystem::path svg = cfg.out_dir / (cfg.id + ".svg");
  emit_plot(csv, kind, svg);
  std::vector<std::filesystem::path> out{csv, svg};
  if (sidecar != nullptr) {
    const std::filesystem::path side = cfg.out_dir / (cfg.id + "-fit.json");
    write_text_file(side, sidecar->dump(2) + "\n");
    out.push_back(side);
  }
  return out;
}

std::vector<std::filesystem::path> run_calls_vs_budget(
    const ExperimentConfig& cfg) {
  const KpInstance inst = kp_instance_for(cfg, kp_toy(25, 10));
  const int top = kp_qubo_bits(inst);
  const int bottom = slack_bit_count(inst.capacity) + 1;
  std::vector<int> budgets = cfg.budgets;
  if (budgets.empty())
    for (int b = std::max(bottom, top - 15); b <= top; ++b)
      budgets.push_back(b);

  HybridConfig hc;
  hc.max_qubits = top;
  hc.sampler = cfg.sampler;
  hc.params = cfg.params;
  hc.params.seed = cfg.seed;
  const CallCountStudy study = call_count_study(inst, budgets, hc);

  CsvTable t;
  t.header = {"budget", "classical_calls", "quantum_calls", "best_objective",
              "kp_bb_calls"};
  for (const CallCountRow& row : study.rows)
    t.rows.push_back({fmt_int(row.budget), fmt_int(row.classical_calls),
                      fmt_int(row.quantum_calls), fmt_num(row.best_objective),
                      fmt_int(study.kp_bb_calls)});
  return write_outputs(cfg, t, PlotKind::kCalls);
}

std::vector<std::filesystem::path> run_kp_metrics_vs_m(
    const ExperimentConfig& cfg) {
  const KpInstance inst = kp_instance_for(cfg, kp_toy(12, 6));
  const BbResult opt = kp_bb(inst);
  const QuboModel full = kp_qubo(inst);
  const int top = full.num_bits;
  const int bottom = slack_bit_count(inst.capacity) + 1;
  std::vector<int> budgets = cfg.budgets;
  if (budgets.empty())
    for (int b = std::max(bottom, top - 2); b <= top; ++b)
      budgets.push_back(b);

  KpGroundCache cache{&inst, {}};
  const double full_ground = sample_exact(full).best().energy;
  cache.ground.emplace(std::make_pair(0, inst.capacity), full_ground);
  const MetricRow baseline =
      kp_baseline_row(inst, opt, full, full_ground, cfg,
                      derive_seed(cfg.seed, kBaselineStream));

  CsvTable t;
  t.header = {"budget"};
  for (const std::string& c : kp_metric_columns()) t.header.push_back(c);
  for (const std::string& c : kp_metric_columns())
    t.header.push_back("baseline_" + c);
  for (std::size_t i = 0; i < budgets.size(); ++i) {
    const MetricRow row = kp_hybrid_row(inst, opt, budgets[i], cfg,
                                        derive_seed(cfg.seed, i), cache);
    std::vector<std::string> cells{fmt_int(budgets[i])};
    append_metric_cells(cells, row);
    append_metric_cells(cells, baseline);
    t.rows.push_back(std::move(cells));
  }
  return write_outputs(cfg, t, PlotKind::kKpMetrics);
}

std::vector<std::filesystem::path> run_kp_metrics_vs_n(
    const ExperimentConfig& cfg) {
  if (cfg.instance)
    throw input_error(
        "kp-metrics-vs-N: sizes come from the toy family; a fixed instance "
        "does not apply");
  std::vector<int> sizes = cfg.sizes;
  if (sizes.empty()) sizes = {6, 8, 10, 12};

  CsvTable t;
  t.header = {"n", "budget"};
  for (const std::string& c : kp_metric_columns()) t.header.push_back(c);
  for (const std::string& c : kp_metric_columns())
    t.header.push_back("baseline_" + c);

  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const int n = sizes[i];
    const double cap =
        cfg.capacity >= 0.0 ? cfg.capacity : std::floor(n / 2.0);
    const KpInstance inst = kp_toy(n, cap);
    const BbResult opt = kp_bb(inst);
    const QuboModel full = kp_qubo(inst);
    KpGroundCache cache{&inst, {}};
    const double ground = sample_exact(full).best().energy;
    cache.ground.emplace(std::make_pair(0, inst.capacity), ground);

    const MetricRow row = kp_hybrid_row(inst, opt, full.num_bits, cfg,
                                        derive_seed(cfg.seed, i), cache);
    const MetricRow baseline =
        kp_baseline_row(inst, opt, full, ground, cfg,
                        derive_seed(cfg.seed, kBaselineStream + i));
    std::vector<std::string> cells{fmt_int(n), fmt_int(full.num_bits)};
    append_metric_cells(cells, row);
    append_metric_cells(cells, baseline);
    t.rows.push_back(std::move(cells));
  }
  return write_outputs(cfg, t, PlotKind::kKpMetrics);
}

std::vector<std::filesystem::path> run_tsp_metrics_vs_m(
    const ExperimentConfig& cfg) {
  const TspInstance inst = tsp_instance_for(cfg, tsp_toy(6));
  const int n = inst.num_cities();
  const BbResult opt = tsp_bb(inst);
  std::vector<int> budgets = cfg.budgets;
  if (budgets.empty())
    for (int b = 3; b <= n; ++b) budgets.push_back(b);

  TspGroundCache cache{&inst, {}};
  std::vector<double> base_ct;
  for (const Tour& tour : sample_random_tour_baseline(
           inst, cfg.runs, derive_seed(cfg.seed, kBaselineStream)))
    base_ct.push_back(c_tilde(tour_cost(inst, tour), opt.best.objective));
  const MeanVar baseline = aggregate(base_ct);

  CsvTable t;
  t.header = {"budget",  "c_tilde_mean",          "c_tilde_var",
              "p0_mean", "p0_var",                "baseline_c_tilde_mean",
              "baseline_c_tilde_var"};
  for (std::size_t i = 0; i < budgets.size(); ++i) {
    const std::uint64_t series_seed = derive_seed(cfg.seed, i);
    std::vector<double> ct;
    std::vector<double> p0;
    for (int r = 0; r < cfg.runs; ++r) {
      HybridConfig hc;
      hc.max_qubits = budgets[i] * budgets[i];
      hc.sampler = cfg.sampler;
      hc.params = cfg.params;
      hc.params.seed = derive_seed(series_seed, static_cast<std::uint64_t>(r));
      hc.keep_samples = true;
      const HybridTrace trace = hybrid_tsp(inst, hc);
      ct.push_back(c_tilde(trace.best.objective, opt.best.objective));
      p0.push_back(run_p0(trace, cache));
    }
    const MeanVar ct_agg = aggregate(ct);
    const MeanVar p0_agg = aggregate(p0);
    t.rows.push_back({fmt_int(budgets[i]), fmt_num(ct_agg.mean),
                      fmt_num(ct_agg.variance), fmt_num(p0_agg.mean),
                      fmt_num(p0_agg.variance), fmt_num(baseline.mean),
                      fmt_num(baseline.variance)});
  }
  return write_outputs(cfg, t, PlotKind::kTspMetrics);
}

std::vector<std::filesystem::path> run_sweeps_study(
    const ExperimentConfig& cfg) {
  if (cfg.instance)
    throw input_error(
        "sweeps-study: sizes come from the toy family; a fixed instance does "
        "not apply");
  std::vector<int> sizes = cfg.sizes;
  if (sizes.empty()) sizes = {4, 6, 8};
  std::vector<int> grid = cfg.sweep_grid;
  if (grid.empty()) grid = {10, 30, 100, 300, 1000};

  CsvTable t;
  t.header = {"n",      "num_bits",        "sweeps",         "p0_mean",
              "p0_var", "min_energy_mean", "min_energy_var"};
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const int n = sizes[i];
    const double cap =
        cfg.capacity >= 0.0 ? cfg.capacity : std::floor(n / 2.0);
    const KpInstance inst = kp_toy(n, cap);
    const QuboModel qubo = kp_qubo(inst);
    const double ground = sample_exact(qubo).best().energy;
    const std::uint64_t series_seed = derive_seed(cfg.seed, i);

    for (std::size_t g = 0; g < grid.size(); ++g) {
      std::vector<double> p0s;
      std::vector<double> mins;
      for (int r = 0; r < cfg.runs; ++r) {
        SamplerParams params = cfg.params;
        params.num_sweeps = grid[g];
        params.seed = derive_seed(derive_seed(series_seed, g),
                                  static_cast<std::uint64_t>(r));
        const SampleSet set = sample_sa(qubo, params);
        p0s.push_back(p0_estimate(set, ground));
        mins.push_back(set.entries.front().energy);
      }
      const MeanVar p0_agg = aggregate(p0s);
      const MeanVar min_agg = aggregate(mins);
      t.rows.push_back({fmt_int(n), fmt_int(qubo.num_bits), fmt_int(grid[g]),
                        fmt_num(p0_agg.mean), fmt_num(p0_agg.variance),
                        fmt_num(min_agg.mean), fmt_num(min_agg.variance)});
    }
  }
  return write_outputs(cfg, t, PlotKind::kSweeps);
}

std::vector<std::filesystem::path> run_gap_scaling(
    const ExperimentConfig& cfg) {
  if (cfg.instance)
    throw input_error(
        "gap-scaling: sizes come from the toy family; a fixed instance does "
        "not apply");
  const double w_cap = cfg.capacity >= 0.0 ? cfg.capacity : 3.0;
  std::vector<int> sizes = cfg.sizes;
  if (sizes.empty()) sizes = {5, 6, 7, 8, 9};

  const auto family = [w_cap](int total_bits) {
    const int slack = slack_bit_count(w_cap);
    const int items = total_bits - slack;
    if (items < 1)
      throw input_error("gap-scaling: size " + std::to_string(total_bits) +
                        " leaves no item bits after " + std::to_string(slack) +
                        " slack bits");
    return qubo_to_ising(kp_qubo(kp_toy(items, w_cap)));
  };
  const GapScalingStudy study =
      gap_scaling_study(family, sizes, Schedule::linear(), cfg.grid_points);

  CsvTable t;
  t.header = {"m", "min_gap", "argmin_s"};
  for (std::size_t i = 0; i < study.sizes.size(); ++i)
    t.rows.push_back({fmt_int(study.sizes[i]), fmt_num(study.min_gaps[i]),
                      fmt_num(study.argmin_s[i])});

  Json fit;
  fit["exponent"] = study.fit.exponent;
  fit["prefactor"] = study.fit.prefactor;
  fit["r_squared"] = study.fit.r_squared;
  return write_outputs(cfg, t, PlotKind::kGap, &fit);
}

}  // namespace

const std::vector<std::string>& experiment_ids() {
  static const std::vector<std::string> ids = {
      "calls-vs-budget", "kp-metrics-vs-M", "kp-metrics-vs-N",
      "tsp-metrics-vs-M", "sweeps-study",   "gap-scaling"};
  return ids;
}

ExperimentConfig experiment_config_from_json(const std::string& json_text) {
  const Json j = parse_json(json_text, "experiment config");
  if (!j.is_object())
    throw input_error("experiment config: expected a JSON object");
  const auto id_it = j.find("id");
  if (id_it == j.end() || !id_it->is_string())
    throw input_error("experiment config: missing string field 'id'");
  ExperimentConfig cfg = default_config(id_it->get<std::string>());

  for (const auto& [key, val] : j.items()) {
    if (key == "id") continue;
    if (key == "instance") {
      cfg.instance = parse_instance(val.dump());
    } else if (key == "budgets") {
      cfg.budgets = int_vector(val, "budgets");
    } else if (key == "sizes") {
      cfg.sizes = int_vector(val, "sizes");
    } else if (key == "sweep_grid") {
      cfg.sweep_grid = int_vector(val, "sweep_grid");
    } else if (key == "capacity") {
      if (!val.is_number())
        throw input_error("experiment config: field 'capacity' must be a number");
      cfg.capacity = val.get<double>();
    } else if (key == "runs") {
      if (!val.is_number_integer())
        throw input_error("experiment config: field 'runs' must be an integer");
      cfg.runs = val.get<int>();
    } else if (key == "sampler") {
      if (!val.is_string())
        throw input_error("experiment config: field 'sampler' must be a string");
      cfg.sampler = sampler_kind_from_name(val.get<std::string>());
    } else if (key == "reads") {
      if (!val.is_number_integer())
        throw input_error("experiment config: field 'reads' must be an integer");
      cfg.params.num_reads = val.get<int>();
    } else if (key == "sweeps") {
      if (!val.is_number_integer())
        throw input_error("experiment config: field 'sweeps' must be an integer");
      cfg.params.num_sweeps = val.get<int>();
    } else if (key == "beta_initial") {
      if (!val.is_number())
        throw input_error(
            "experiment config: field 'beta_initial' must be a number");
      cfg.params.beta_initial = val.get<double>();
    } else if (key == "beta_final") {
      if (!val.is_number())
        throw input_error(
            "experiment config: field 'beta_final' must be a number");
      cfg.params.beta_final = val.get<double>();
    } else if (key == "seed") {
      if (!val.is_number_integer() ||
          (val.is_number_integer() && !val.is_number_unsigned() &&
           val.get<std::int64_t>() < 0))
        throw input_error(
            "experiment config: field 'seed' must be a nonnegative integer");
      cfg.seed = val.get<std::uint64_t>();
    } else if (key == "out_dir") {
      if (!val.is_string())
        throw input_error("experiment config: field 'out_dir' must be a string");
      cfg.out_dir = val.get<std::string>();
    } else if (key == "grid_points") {
      if (!val.is_number_integer())
        throw input_error(
            "experiment config: field 'grid_points' must be an integer");
      cfg.grid_points = val.get<int>();
    } else {
      throw input_error("experiment config: unknown key '" + key + "'");
    }
  }
  return cfg;
}

std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& cfg) {
  if (cfg.runs < 1)
    throw input_error("experiment: runs must be positive");
  if (cfg.id == "calls-vs-budget") return run_calls_vs_budget(cfg);
  if (cfg.id == "kp-metrics-vs-M") return run_kp_metrics_vs_m(cfg);
  if (cfg.id == "kp-metrics-vs-N") return run_kp_metrics_vs_n(cfg);
  if (cfg.id == "tsp-metrics-vs-M") return run_tsp_metrics_vs_m(cfg);
  if (cfg.id == "sweeps-study") return run_sweeps_study(cfg);
  if (cfg.id == "gap-scaling") return run_gap_scaling(cfg);
  throw input_error("experiment: unknown id '" + cfg.id + "'");
}

}  // namespace hbb
