#pragma once

/// Reproducible experiment drivers. Each experiment writes one CSV (plus an
/// SVG rendering and, for fits, a JSON sidecar) into out_dir. Reruns with
/// the same config and seed produce byte-identical CSVs.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "hbb/hybrid.hpp"
#include "hbb/io.hpp"

namespace hbb {

struct ExperimentConfig {
  std::string id;
  std::optional<Instance> instance;  // experiment-specific toy by default
  std::vector<int> budgets;          // qubits (kp) or cities (tsp)
  std::vector<int> sizes;            // kp-metrics-vs-N, sweeps-study, gap-scaling
  std::vector<int> sweep_grid;       // sweeps-study
  double capacity = -1.0;            // family capacity; < 0 means default
  int runs = 20;
  SamplerKind sampler = SamplerKind::kSa;
  SamplerParams params;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = ".";
  int grid_points = 201;  // gap scans
};

const std::vector<std::string>& experiment_ids();

ExperimentConfig experiment_config_from_json(const std::string& json_text);

// Runs the experiment named by cfg.id and returns the written file paths.
std::vector<std::filesystem::path> run_experiment(const ExperimentConfig& cfg);

enum class PlotKind : std::uint8_t {
  kCalls,       // calls-vs-budget: counts vs budget, log y, baseline rule
  kKpMetrics,   // stacked error-bar panels vs budget with baseline bands
  kTspMetrics,  // same layout for tour metrics
  kGap,         // log-log scatter with the fitted power law
  kSweeps,      // p0 vs sweep count, one series per instance size
};

PlotKind plot_kind_from_name(const std::string& name);
const char* plot_kind_name(PlotKind kind);

// Renders a CSV produced by run_experiment into a self-contained SVG.
std::filesystem::path emit_plot(const std::filesystem::path& csv_path,
                                PlotKind kind,
                                const std::filesystem::path& out_svg);

}  // namespace hbb
