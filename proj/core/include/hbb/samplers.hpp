#pragma once

/// Samplers stand in for a quantum annealer. All of them return a SampleSet:
/// deduplicated reads sorted by ascending energy (ties by bitstring), with
/// energies that match eval_qubo exactly.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "hbb/problem.hpp"
#include "hbb/qubo.hpp"

namespace hbb {

struct SampleEntry {
  BitVec bits;
  double energy = 0.0;
  std::int64_t occurrences = 0;
};

struct SampleSet {
  std::vector<SampleEntry> entries;
  std::int64_t total_reads = 0;  // equals the sum of occurrences
  std::string sampler_id;
  std::uint64_t seed = 0;  // the seed the reads were drawn under

  const SampleEntry& best() const;  // lowest energy; throws if empty
};

struct SamplerParams {
  int num_reads = 1000;
  int num_sweeps = 1000;      // one sweep = num_bits single-bit proposals
  double beta_initial = 0.1;  // geometric ramp across sweeps
  double beta_final = 10.0;
  std::uint64_t seed = 0;
};

// Exhaustive ground-truth sampler. Generic models are enumerated over all
// 2^M bitstrings (M <= 24). City-by-step models too wide for that are
// enumerated over tours instead (up to 10 cities), which reaches the same
// minima because penalties dominate edge costs. Every global minimizer is
// returned with occurrences 1; total_reads is the number of minimizers.
SampleSet sample_exact(const QuboModel& q);

// Independent restarts of single-flip Metropolis with a geometric
// temperature ramp. Restart r consumes derive_seed(params.seed, r), so the
// merged result is independent of restart execution order.
SampleSet sample_sa(const QuboModel& q, const SamplerParams& params);

// num_draws uniform bitstrings, deduplicated.
SampleSet sample_random(const QuboModel& q, int num_draws, std::uint64_t seed);

// Repetition r draws num_draws uniform bitstrings with the same stream as
// sample_random(q, num_draws, derive_seed(seed, r)) and keeps the champion:
// lowest energy, ties broken toward the lexicographically smaller bitstring.
std::vector<SampleSet> sample_random_baseline(const QuboModel& q,
                                              int num_draws, int repetitions,
                                              std::uint64_t seed);

// Uniform random tours with the depot fixed at city 0.
std::vector<Tour> sample_random_tour_baseline(const TspInstance& inst,
                                              int repetitions,
                                              std::uint64_t seed);

enum class SamplerKind : std::uint8_t { kExact, kSa, kRandom };

const char* sampler_kind_name(SamplerKind kind);
SamplerKind sampler_kind_from_name(const std::string& name);

// Anything that maps a model to a SampleSet can play the annealer role;
// a remote-hardware client would implement the same interface.
class Sampler {
 public:
  virtual ~Sampler() = default;
  virtual SampleSet sample(const QuboModel& q,
                           const SamplerParams& params) const = 0;
  virtual std::string id() const = 0;
};

std::unique_ptr<Sampler> make_sampler(SamplerKind kind);

}  // namespace hbb
