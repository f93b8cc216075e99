// Command-line front end. Subcommands map onto the library one to one:
// solve-* run a single instance, experiment reproduces a study, gap-scan
// probes the annealing spectrum, export-qubo and plot move artifacts.
//
// Exit codes: 0 ok, 2 malformed input, 3 budget refusal, 4 anything else.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hbb/branch_bound.hpp"
#include "hbb/experiments.hpp"
#include "hbb/hybrid.hpp"
#include "hbb/io.hpp"
#include "hbb/qubo.hpp"
#include "hbb/samplers.hpp"
#include "hbb/spectrum.hpp"

namespace {

using Json = nlohmann::ordered_json;
using hbb::input_error;

const char* yn(bool b) { return b ? "yes" : "no"; }

std::string join_ints(const std::vector<int>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(xs[i]);
  }
  return out;
}

std::pair<int, double> parse_toy_pair(const std::string& text,
                                      const char* who) {
  int n = 0;
  double w = 0.0;
  char tail = 0;
  if (std::sscanf(text.c_str(), "%d,%lf%c", &n, &w, &tail) != 2)
    throw input_error(std::string(who) +
                      ": --toy expects \"N,W\" (for example 25,10)");
  return {n, w};
}

hbb::KpInstance kp_from_flags(const std::string& toy, const std::string& file,
                              const char* who) {
  if (!toy.empty() && !file.empty())
    throw input_error(std::string(who) +
                      ": give either --toy or --instance, not both");
  if (!toy.empty()) {
    const auto [n, w] = parse_toy_pair(toy, who);
    return hbb::kp_toy(n, w);
  }
  if (!file.empty()) {
    const hbb::Instance inst = hbb::load_instance(file);
    if (const auto* kp = std::get_if<hbb::KpInstance>(&inst)) return *kp;
    throw input_error(std::string(who) + ": " + file +
                      " does not hold a knapsack instance");
  }
  throw input_error(std::string(who) +
                    ": an instance is required (--toy or --instance)");
}

hbb::TspInstance tsp_from_flags(int toy_n, const std::string& file,
                                const char* who) {
  if (toy_n > 0 && !file.empty())
    throw input_error(std::string(who) +
                      ": give either --toy or --instance, not both");
  if (toy_n > 0) return hbb::tsp_toy(toy_n);
  if (!file.empty()) {
    const hbb::Instance inst = hbb::load_instance(file);
    if (const auto* tsp = std::get_if<hbb::TspInstance>(&inst)) return *tsp;
    throw input_error(std::string(who) + ": " + file +
                      " does not hold a tour instance");
  }
  throw input_error(std::string(who) +
                    ": an instance is required (--toy or --instance)");
}

// Options shared by the three solve subcommands.
struct SolveFlags {
  std::string toy;
  int toy_n = 0;
  std::string instance;
  std::string method = "bb";
  int budget = 0;         // knapsack qubit budget; 0 means the full problem
  int cities_budget = 0;  // tour city budget; 0 means all cities
  std::string sampler = "exact";
  int reads = 1000;
  int sweeps = 1000;
  std::uint64_t seed = 1;
  double lambda = 0.0;  // 0 means the model's automatic penalty
  std::string out;
};

std::optional<double> lambda_opt(double lambda) {
  if (lambda == 0.0) return std::nullopt;
  return lambda;
}

hbb::SamplerParams params_from(const SolveFlags& f) {
  hbb::SamplerParams p;
  p.num_reads = f.reads;
  p.num_sweeps = f.sweeps;
  p.seed = f.seed;
  return p;
}

Json stats_json(const hbb::SearchStats& s) {
  Json j;
  j["branch_events"] = s.branch_events;
  j["bound_updates"] = s.bound_updates;
  j["pruned_by_bound"] = s.pruned_by_bound;
  j["pruned_infeasible"] = s.pruned_infeasible;
  return j;
}

Json bb_report(const hbb::BbResult& r) {
  Json j;
  j["objective"] = r.best.objective;
  j["bits"] = hbb::bits_to_string(r.best.bits);
  j["feasible"] = r.best.feasible;
  j["proven_optimal"] = r.proven_optimal;
  j["stats"] = stats_json(r.stats);
  j["incumbents"] = r.incumbents;
  if (r.tour) j["tour"] = r.tour->order;
  return j;
}

Json hybrid_report(const hbb::HybridTrace& t) {
  Json j;
  j["objective"] = t.best.objective;
  j["bits"] = hbb::bits_to_string(t.best.bits);
  j["feasible"] = t.best.feasible;
  j["classical_calls"] = t.classical_calls;
  j["quantum_calls"] = t.quantum_calls;
  j["incumbents"] = t.incumbents;
  j["seed"] = t.seed;
  if (t.tour) j["tour"] = t.tour->order;
  Json calls = Json::array();
  for (const hbb::QuantumCallRecord& rec : t.per_call_log) {
    Json c;
    c["descriptor"] = rec.descriptor;
    c["num_bits"] = rec.num_bits;
    c["best_energy"] = rec.best_energy;
    if (rec.best_feasible_objective)
      c["best_feasible_objective"] = *rec.best_feasible_objective;
    c["feasible_reads"] = rec.feasible_reads;
    c["total_reads"] = rec.total_reads;
    c["updated_incumbent"] = rec.updated_incumbent;
    calls.push_back(std::move(c));
  }
  j["calls"] = std::move(calls);
  return j;
}

Json sampler_report(const hbb::SampleSet& set, double objective,
                    bool feasible) {
  const hbb::SampleEntry& best = set.best();
  Json j;
  j["sampler_id"] = set.sampler_id;
  j["seed"] = set.seed;
  j["total_reads"] = set.total_reads;
  j["energy"] = best.energy;
  j["objective"] = objective;
  j["feasible"] = feasible;
  j["bits"] = hbb::bits_to_string(best.bits);
  return j;
}

void finish_report(Json& report, const std::string& out) {
  if (!out.empty()) hbb::write_text_file(out, report.dump(2) + "\n");
}

void run_solve_kp(const SolveFlags& f) {
  const hbb::KpInstance inst = kp_from_flags(f.toy, f.instance, "solve-kp");
  Json report;
  report["problem"] = "knapsack";
  report["method"] = f.method;

  if (f.method == "bb") {
    const hbb::BbResult res = hbb::kp_bb(inst);
    std::cout << "z=" << hbb::fmt_num(res.best.objective)
              << " weight=" << hbb::fmt_num(hbb::kp_weight(inst, res.best.bits))
              << " branches=" << res.stats.branch_events
              << " updates=" << res.stats.bound_updates << '\n';
    report.update(bb_report(res));
  } else if (f.method == "hybrid") {
    hbb::HybridConfig hc;
    hc.max_qubits = f.budget > 0 ? f.budget : hbb::kp_qubo_bits(inst);
    hc.sampler = hbb::sampler_kind_from_name(f.sampler);
    hc.params = params_from(f);
    const hbb::HybridTrace tr = hbb::hybrid_kp(inst, hc);
    std::cout << "z=" << hbb::fmt_num(tr.best.objective)
              << " classical_calls=" << tr.classical_calls
              << " quantum_calls=" << tr.quantum_calls << '\n';
    report["budget"] = hc.max_qubits;
    report.update(hybrid_report(tr));
  } else {
    const hbb::QuboModel q = hbb::kp_qubo(inst, lambda_opt(f.lambda));
    const hbb::SampleSet set =
        f.method == "exact" ? hbb::sample_exact(q)
                            : hbb::sample_sa(q, params_from(f));
    const hbb::SampleEntry& best = set.best();
    const hbb::BitVec items(best.bits.begin(),
                            best.bits.begin() + inst.num_items());
    const double z = hbb::kp_objective(inst, items);
    const bool feasible =
        hbb::kp_weight(inst, items) <= inst.capacity + hbb::kFeasTol;
    std::cout << "z=" << hbb::fmt_num(z)
              << " energy=" << hbb::fmt_num(best.energy)
              << " feasible=" << yn(feasible) << '\n';
    report.update(sampler_report(set, z, feasible));
  }
  finish_report(report, f.out);
}

void run_solve_tsp(const SolveFlags& f) {
  const hbb::TspInstance inst =
      tsp_from_flags(f.toy_n, f.instance, "solve-tsp");
  const int n = inst.num_cities();
  Json report;
  report["problem"] = "tsp";
  report["method"] = f.method;

  if (f.method == "bb") {
    const hbb::BbResult res = hbb::tsp_bb(inst);
    std::cout << "cost=" << hbb::fmt_num(res.best.objective)
              << " tour=" << join_ints(res.tour->order)
              << " branches=" << res.stats.branch_events << '\n';
    report.update(bb_report(res));
  } else if (f.method == "hybrid") {
    const int cities = f.cities_budget > 0 ? f.cities_budget : n;
    hbb::HybridConfig hc;
    hc.max_qubits = cities * cities;
    hc.sampler = hbb::sampler_kind_from_name(f.sampler);
    hc.params = params_from(f);
    const hbb::HybridTrace tr = hbb::hybrid_tsp(inst, hc);
    std::cout << "cost=" << hbb::fmt_num(tr.best.objective)
              << " tour=" << join_ints(tr.tour->order)
              << " classical_calls=" << tr.classical_calls
              << " quantum_calls=" << tr.quantum_calls << '\n';
    report["cities_budget"] = cities;
    report.update(hybrid_report(tr));
  } else {
    const hbb::QuboModel q = hbb::tsp_qubo(inst, lambda_opt(f.lambda));
    const hbb::SampleSet set =
        f.method == "exact" ? hbb::sample_exact(q)
                            : hbb::sample_sa(q, params_from(f));
    const hbb::SampleEntry& best = set.best();
    const std::optional<hbb::Tour> tour =
        hbb::tour_from_position_bits(best.bits, n);
    if (tour) {
      const double cost = hbb::tour_cost(inst, *tour);
      std::cout << "cost=" << hbb::fmt_num(cost)
                << " tour=" << join_ints(tour->order)
                << " energy=" << hbb::fmt_num(best.energy) << '\n';
      report.update(sampler_report(set, cost, true));
      report["tour"] = tour->order;
    } else {
      std::cout << "cost=NA feasible=no energy="
                << hbb::fmt_num(best.energy) << '\n';
      report.update(sampler_report(set, 0.0, false));
    }
  }
  finish_report(report, f.out);
}

void run_solve_blop(const SolveFlags& f) {
  if (f.instance.empty())
    throw input_error("solve-blop: --instance is required");
  const hbb::Instance loaded = hbb::load_instance(f.instance);
  const auto* blop = std::get_if<hbb::BlopInstance>(&loaded);
  if (blop == nullptr)
    throw input_error("solve-blop: " + f.instance +
                      " does not hold a binary linear program");
  Json report;
  report["problem"] = "blop";
  report["method"] = f.method;

  if (f.method == "bb") {
    const hbb::BbResult res = hbb::bb_generic(*blop);
    std::cout << "z=" << hbb::fmt_num(res.best.objective)
              << " bits=" << hbb::bits_to_string(res.best.bits)
              << " feasible=" << yn(res.best.feasible) << '\n';
    report.update(bb_report(res));
  } else {
    if (f.lambda <= 0.0)
      throw input_error(
          "solve-blop: --lambda > 0 is required for qubo-backed methods");
    const std::vector<double> lambdas(
        static_cast<std::size_t>(blop->num_rows()), f.lambda);
    const hbb::QuboModel q = hbb::blop_to_qubo(*blop, lambdas);
    const hbb::SampleSet set =
        f.method == "exact" ? hbb::sample_exact(q)
                            : hbb::sample_sa(q, params_from(f));
    const hbb::SampleEntry& best = set.best();
    const hbb::BitVec vars(best.bits.begin(),
                           best.bits.begin() + blop->num_vars());
    const hbb::Evaluation eval = hbb::evaluate_blop(*blop, vars);
    std::cout << "z=" << hbb::fmt_num(eval.objective)
              << " bits=" << hbb::bits_to_string(vars)
              << " feasible=" << yn(eval.feasible) << '\n';
    report.update(sampler_report(set, eval.objective, eval.feasible));
  }
  finish_report(report, f.out);
}

struct ExperimentFlags {
  std::string id;
  std::string config;
  std::uint64_t seed = 0;
  int runs = 0;
  int reads = 0;
  int sweeps = 0;
  std::string sampler;
  std::string out_dir;
  int grid_points = 0;
  double capacity = 0.0;
};

struct GapFlags {
  std::string kp_toy;
  std::string model;
  std::string schedule;
  int grid_points = 201;
  bool bound = false;
  std::string out_dir = ".";
};

struct ExportFlags {
  std::string kp_toy;
  int tsp_toy = 0;
  std::string instance;
  double lambda = 0.0;
  bool ising = false;
  std::string out;
};

struct PlotFlags {
  std::string csv;
  std::string kind;
  std::string out;
};

void run_gap_scan(const GapFlags& f) {
  const int sources = (f.kp_toy.empty() ? 0 : 1) + (f.model.empty() ? 0 : 1);
  if (sources != 1)
    throw input_error("gap-scan: give exactly one of --kp-toy or --model");
  hbb::IsingModel m;
  if (!f.kp_toy.empty()) {
    const auto [n, w] = parse_toy_pair(f.kp_toy, "gap-scan");
    m = hbb::qubo_to_ising(hbb::kp_qubo(hbb::kp_toy(n, w)));
  } else {
    m = hbb::load_ising(f.model);
  }
  const hbb::Schedule sched = f.schedule.empty()
                                  ? hbb::Schedule::linear()
                                  : hbb::load_schedule(f.schedule);
  const hbb::GapScan scan = hbb::gap_scan(m, sched, f.grid_points);

  hbb::CsvTable t;
  t.header = {"s", "gap", "ground"};
  for (std::size_t i = 0; i < scan.s_values.size(); ++i)
    t.rows.push_back({hbb::fmt_num(scan.s_values[i]),
                      hbb::fmt_num(scan.gap[i]),
                      hbb::fmt_num(scan.ground[i])});
  const std::filesystem::path csv =
      std::filesystem::path(f.out_dir) / "gap-scan.csv";
  t.save(csv);

  std::cout << "min_gap=" << hbb::fmt_num(scan.min_gap)
            << " argmin_s=" << hbb::fmt_num(scan.argmin_s)
            << " spins=" << m.num_spins;
  if (f.bound) {
    const hbb::AdiabaticBound b =
        hbb::adiabatic_bound(m, sched, f.grid_points);
    if (b.degenerate_at)
      std::cout << " bound=inf (degenerate at s="
                << hbb::fmt_num(*b.degenerate_at) << ")";
    else
      std::cout << " bound=" << hbb::fmt_num(b.value);
  }
  std::cout << " -> " << csv.string() << '\n';
}

void run_export_qubo(const ExportFlags& f) {
  const int sources = (f.kp_toy.empty() ? 0 : 1) + (f.tsp_toy > 0 ? 1 : 0) +
                      (f.instance.empty() ? 0 : 1);
  if (sources != 1)
    throw input_error(
        "export-qubo: give exactly one of --kp-toy, --tsp-toy, --instance");

  hbb::QuboModel q;
  if (!f.kp_toy.empty()) {
    const auto [n, w] = parse_toy_pair(f.kp_toy, "export-qubo");
    q = hbb::kp_qubo(hbb::kp_toy(n, w), lambda_opt(f.lambda));
  } else if (f.tsp_toy > 0) {
    q = hbb::tsp_qubo(hbb::tsp_toy(f.tsp_toy), lambda_opt(f.lambda));
  } else {
    const hbb::Instance inst = hbb::load_instance(f.instance);
    if (const auto* kp = std::get_if<hbb::KpInstance>(&inst)) {
      q = hbb::kp_qubo(*kp, lambda_opt(f.lambda));
    } else if (const auto* tsp = std::get_if<hbb::TspInstance>(&inst)) {
      q = hbb::tsp_qubo(*tsp, lambda_opt(f.lambda));
    } else {
      const auto& blop = std::get<hbb::BlopInstance>(inst);
      if (f.lambda <= 0.0)
        throw input_error(
            "export-qubo: --lambda > 0 is required for a general binary "
            "linear program");
      q = hbb::blop_to_qubo(
          blop, std::vector<double>(static_cast<std::size_t>(blop.num_rows()),
                                    f.lambda));
    }
  }

  const std::string text =
      f.ising ? hbb::ising_to_json(hbb::qubo_to_ising(q)) : hbb::qubo_to_json(q);
  if (f.out.empty()) {
    std::cout << text << '\n';
  } else {
    hbb::write_text_file(f.out, text + "\n");
    std::cout << "bits=" << q.num_bits << " terms=" << q.quadratic.size()
              << " -> " << f.out << '\n';
  }
}

void run_plot(const PlotFlags& f) {
  const hbb::PlotKind kind = hbb::plot_kind_from_name(f.kind);
  std::filesystem::path out = f.out;
  if (out.empty())
    out = std::filesystem::path(f.csv).replace_extension(".svg");
  hbb::emit_plot(f.csv, kind, out);
  std::cout << "wrote " << out.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hybrid classical-quantum branch and bound toolkit"};
  app.require_subcommand(1);

  SolveFlags kp;
  SolveFlags tsp;
  SolveFlags blop;
  ExperimentFlags exp;
  GapFlags gap;
  ExportFlags expq;
  PlotFlags plot;

  const auto add_sampler_flags = [](CLI::App* sub, SolveFlags& f) {
    sub->add_option("--sampler", f.sampler, "sampler for --method hybrid")
        ->check(CLI::IsMember({"exact", "sa", "random"}));
    sub->add_option("--reads", f.reads, "reads per sampler call");
    sub->add_option("--sweeps", f.sweeps, "annealing sweeps per read");
    sub->add_option("--seed", f.seed, "rng seed");
    sub->add_option("--out", f.out, "write a JSON report here");
  };

  CLI::App* s_kp = app.add_subcommand("solve-kp", "solve a knapsack instance");
  s_kp->add_option("--toy", kp.toy, "toy instance \"N,W\"");
  s_kp->add_option("--instance", kp.instance, "instance JSON file");
  s_kp->add_option("--method", kp.method, "bb | hybrid | exact | sa")
      ->check(CLI::IsMember({"bb", "hybrid", "exact", "sa"}));
  s_kp->add_option("--budget", kp.budget,
                   "qubit budget for --method hybrid (0 = full problem)");
  s_kp->add_option("--lambda", kp.lambda, "penalty weight (0 = automatic)");
  add_sampler_flags(s_kp, kp);
  s_kp->callback([&kp] { run_solve_kp(kp); });

  CLI::App* s_tsp = app.add_subcommand("solve-tsp", "solve a tour instance");
  s_tsp->add_option("--toy", tsp.toy_n, "toy instance size n");
  s_tsp->add_option("--instance", tsp.instance, "instance JSON file");
  s_tsp->add_option("--method", tsp.method, "bb | hybrid | exact | sa")
      ->check(CLI::IsMember({"bb", "hybrid", "exact", "sa"}));
  s_tsp->add_option("--cities-budget", tsp.cities_budget,
                    "city budget for --method hybrid (0 = all cities)");
  s_tsp->add_option("--lambda", tsp.lambda, "penalty weight (0 = automatic)");
  add_sampler_flags(s_tsp, tsp);
  s_tsp->callback([&tsp] { run_solve_tsp(tsp); });

  CLI::App* s_blop =
      app.add_subcommand("solve-blop", "solve a binary linear program");
  s_blop->add_option("--instance", blop.instance, "instance JSON file");
  s_blop->add_option("--method", blop.method, "bb | exact | sa")
      ->check(CLI::IsMember({"bb", "exact", "sa"}));
  s_blop->add_option("--lambda", blop.lambda,
                     "penalty weight per row (required for exact/sa)");
  add_sampler_flags(s_blop, blop);
  s_blop->callback([&blop] { run_solve_blop(blop); });

  CLI::App* s_exp =
      app.add_subcommand("experiment", "run a reproducible study");
  s_exp->add_option("--id", exp.id, "experiment id (see --help-ids)");
  s_exp->add_option("--config", exp.config, "JSON config file");
  CLI::Option* o_seed = s_exp->add_option("--seed", exp.seed, "rng seed");
  CLI::Option* o_runs = s_exp->add_option("--runs", exp.runs, "repetitions");
  CLI::Option* o_reads =
      s_exp->add_option("--reads", exp.reads, "reads per sampler call");
  CLI::Option* o_sweeps =
      s_exp->add_option("--sweeps", exp.sweeps, "annealing sweeps per read");
  CLI::Option* o_sampler =
      s_exp->add_option("--sampler", exp.sampler, "exact | sa | random")
          ->check(CLI::IsMember({"exact", "sa", "random"}));
  CLI::Option* o_out =
      s_exp->add_option("--out-dir", exp.out_dir, "output directory");
  CLI::Option* o_grid = s_exp->add_option("--grid-points", exp.grid_points,
                                          "schedule grid resolution");
  CLI::Option* o_cap = s_exp->add_option("--capacity", exp.capacity,
                                         "toy capacity override");
  bool list_ids = false;
  s_exp->add_flag("--help-ids", list_ids, "list experiment ids and exit");
  s_exp->callback([&] {
    if (list_ids) {
      for (const std::string& id : hbb::experiment_ids())
        std::cout << id << '\n';
      return;
    }
    Json j = Json::object();
    if (!exp.config.empty()) {
      j = Json::parse(hbb::read_text_file(exp.config), nullptr, false);
      if (j.is_discarded() || !j.is_object())
        throw input_error("experiment: " + exp.config +
                          " is not a JSON object");
    }
    if (!exp.id.empty()) j["id"] = exp.id;
    if (!j.contains("id"))
      throw input_error(
          "experiment: no id given (use --id or a config file with an "
          "\"id\" field)");
    if (o_seed->count() > 0) j["seed"] = exp.seed;
    if (o_runs->count() > 0) j["runs"] = exp.runs;
    if (o_reads->count() > 0) j["reads"] = exp.reads;
    if (o_sweeps->count() > 0) j["sweeps"] = exp.sweeps;
    if (o_sampler->count() > 0) j["sampler"] = exp.sampler;
    if (o_out->count() > 0) j["out_dir"] = exp.out_dir;
    if (o_grid->count() > 0) j["grid_points"] = exp.grid_points;
    if (o_cap->count() > 0) j["capacity"] = exp.capacity;

    const hbb::ExperimentConfig cfg =
        hbb::experiment_config_from_json(j.dump());
    const std::vector<std::filesystem::path> paths = hbb::run_experiment(cfg);
    std::cout << "wrote:";
    for (const std::filesystem::path& p : paths) std::cout << ' ' << p.string();
    std::cout << '\n';
  });

  CLI::App* s_gap =
      app.add_subcommand("gap-scan", "scan the annealing spectral gap");
  s_gap->add_option("--kp-toy", gap.kp_toy, "knapsack toy \"N,W\"");
  s_gap->add_option("--model", gap.model, "qubo/ising model JSON file");
  s_gap->add_option("--schedule", gap.schedule,
                    "schedule file (default: linear ramp)");
  s_gap->add_option("--grid-points", gap.grid_points, "points on s in [0,1]");
  s_gap->add_flag("--bound", gap.bound, "also print the adiabatic time bound");
  s_gap->add_option("--out-dir", gap.out_dir, "output directory");
  s_gap->callback([&gap] { run_gap_scan(gap); });

  CLI::App* s_expq =
      app.add_subcommand("export-qubo", "write a model as JSON");
  s_expq->add_option("--kp-toy", expq.kp_toy, "knapsack toy \"N,W\"");
  s_expq->add_option("--tsp-toy", expq.tsp_toy, "tour toy size n");
  s_expq->add_option("--instance", expq.instance, "instance JSON file");
  s_expq->add_option("--lambda", expq.lambda, "penalty weight (0 = automatic)");
  s_expq->add_flag("--ising", expq.ising, "export the spin form instead");
  s_expq->add_option("--out", expq.out, "output file (default: stdout)");
  s_expq->callback([&expq] { run_export_qubo(expq); });

  CLI::App* s_plot = app.add_subcommand("plot", "render an experiment CSV");
  s_plot->add_option("--csv", plot.csv, "experiment CSV file")->required();
  s_plot
      ->add_option("--kind", plot.kind,
                   "calls | kp-metrics | tsp-metrics | gap | sweeps")
      ->required();
  s_plot->add_option("--out", plot.out, "output SVG (default: csv with .svg)");
  s_plot->callback([&plot] { run_plot(plot); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const hbb::budget_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const hbb::input_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
