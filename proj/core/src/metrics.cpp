#include "hbb/metrics.hpp"

#include <cmath>

namespace hbb {

double delta_v(double z_approx, double z_opt) {
  if (z_opt == 0.0)
    throw input_error("delta_v: undefined for a zero optimum");
  return (z_approx - z_opt) / z_opt;
}

double w_tilde(double weight, double capacity) {
  if (!(capacity > 0.0))
    throw input_error("w_tilde: capacity must be positive");
  return weight / capacity;
}

int hamming(const BitVec& a, const BitVec& b) {
  if (a.size() != b.size())
    throw input_error("hamming: bitstring lengths differ");
  int d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]) ? 1 : 0;
  return d;
}

double c_tilde(double cost_approx, double cost_opt) {
  if (!(cost_opt > 0.0))
    throw input_error("c_tilde: optimal cost must be positive");
  return cost_approx / cost_opt;
}

double p0_estimate(const SampleSet& samples, double ground_energy) {
  if (samples.total_reads < 1)
    throw input_error("p0_estimate: sample set is empty");
  std::int64_t hits = 0;
  for (const auto& e : samples.entries)
    if (std::abs(e.energy - ground_energy) <= 1e-9) hits += e.occurrences;
  return static_cast<double>(hits) / static_cast<double>(samples.total_reads);
}

MeanVar aggregate(std::span<const double> xs) {
  if (xs.empty()) throw input_error("aggregate: no values");
  MeanVar mv;
  for (double x : xs) mv.mean += x;
  mv.mean /= static_cast<double>(xs.size());
  for (double x : xs) {
    const double d = x - mv.mean;
    mv.variance += d * d;
  }
  mv.variance /= static_cast<double>(xs.size());
  return mv;
}

}  // namespace hbb
