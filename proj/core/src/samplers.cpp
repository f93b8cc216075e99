#include "hbb/samplers.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <random>

namespace hbb {

namespace {

// Flat adjacency over the quadratic terms, one (neighbor, coefficient) list
// per bit. Lets single-flip moves update local fields in O(degree).
struct Adjacency {
  std::vector<int> offsets;
  std::vector<int> neighbor;
  std::vector<double> coeff;

  explicit Adjacency(const QuboModel& q) {
    const int m = q.num_bits;
    std::vector<int> degree(m, 0);
    for (const auto& [key, _] : q.quadratic) {
      ++degree[key.first];
      ++degree[key.second];
    }
    offsets.assign(m + 1, 0);
    for (int i = 0; i < m; ++i) offsets[i + 1] = offsets[i] + degree[i];
    neighbor.resize(offsets[m]);
    coeff.resize(offsets[m]);
    std::vector<int> cursor(offsets.begin(), offsets.end() - 1);
    for (const auto& [key, val] : q.quadratic) {
      neighbor[cursor[key.first]] = key.second;
      coeff[cursor[key.first]++] = val;
      neighbor[cursor[key.second]] = key.first;
      coeff[cursor[key.second]++] = val;
    }
  }
};

// Local field acc[i] = linear_i + sum of q_ij over set neighbors j, so the
// energy change of flipping bit i is +-acc[i] depending on its state.
std::vector<double> local_fields(const QuboModel& q, const Adjacency& adj,
                                 const BitVec& bits) {
  std::vector<double> acc = q.linear;
  for (int i = 0; i < q.num_bits; ++i)
    for (int t = adj.offsets[i]; t < adj.offsets[i + 1]; ++t)
      if (bits[adj.neighbor[t]]) acc[i] += adj.coeff[t];
  return acc;
}

void apply_flip(int i, BitVec& bits, std::vector<double>& acc,
                const Adjacency& adj) {
  bits[i] ^= 1;
  const double sign = bits[i] ? 1.0 : -1.0;
  for (int t = adj.offsets[i]; t < adj.offsets[i + 1]; ++t)
    acc[adj.neighbor[t]] += sign * adj.coeff[t];
}

SampleSet finalize(std::map<BitVec, std::int64_t> counts, const QuboModel& q,
                   std::string id, std::uint64_t seed) {
  SampleSet out;
  out.sampler_id = std::move(id);
  out.seed = seed;
  out.entries.reserve(counts.size());
  for (auto& [bits, occ] : counts) {
    SampleEntry e;
    e.energy = eval_qubo(q, bits);
    e.bits = bits;
    e.occurrences = occ;
    out.total_reads += occ;
    out.entries.push_back(std::move(e));
  }
  std::stable_sort(out.entries.begin(), out.entries.end(),
                   [](const SampleEntry& a, const SampleEntry& b) {
                     if (a.energy != b.energy) return a.energy < b.energy;
                     return a.bits < b.bits;
                   });
  return out;
}

// Walks all 2^M states in Gray-code order, invoking fn(bits, energy) per
// state. The running energy drifts by at most a few ulps per step; callers
// re-evaluate candidates exactly.
template <typename Fn>
void gray_walk(const QuboModel& q, const Adjacency& adj, Fn&& fn) {
  const int m = q.num_bits;
  BitVec bits(m, 0);
  std::vector<double> acc = local_fields(q, adj, bits);
  double energy = q.offset;
  fn(bits, energy);
  const std::uint64_t states = 1ULL << m;
  for (std::uint64_t t = 1; t < states; ++t) {
    const int i = std::countr_zero(t);
    energy += bits[i] ? -acc[i] : acc[i];
    apply_flip(i, bits, acc, adj);
    fn(bits, energy);
  }
}

SampleSet exact_by_enumeration(const QuboModel& q) {
  const Adjacency adj(q);
  double scale = std::abs(q.offset) + 1.0;
  for (double l : q.linear) scale += std::abs(l);
  for (const auto& [_, v] : q.quadratic) scale += std::abs(v);
  const double slack = 1e-6 * scale;

  double rough_min = std::numeric_limits<double>::infinity();
  gray_walk(q, adj, [&](const BitVec&, double e) {
    rough_min = std::min(rough_min, e);
  });

  // Second pass re-evaluates every near-minimal state exactly; only exact
  // ties with the exact minimum survive.
  double exact_min = std::numeric_limits<double>::infinity();
  std::vector<BitVec> minimizers;
  gray_walk(q, adj, [&](const BitVec& bits, double e) {
    if (e > rough_min + slack) return;
    const double exact = eval_qubo(q, bits);
    if (exact < exact_min) {
      exact_min = exact;
      minimizers.clear();
    }
    if (exact == exact_min) minimizers.push_back(bits);
  });

  std::map<BitVec, std::int64_t> counts;
  for (auto& bits : minimizers) counts.emplace(std::move(bits), 1);
  return finalize(std::move(counts), q, "exact", 0);
}

// Position-encoded models wider than the enumeration cap: every global
// minimizer is a rotation of an optimal depot-anchored cycle, so walking the
// (n-1)! cycles reaches the same minima as the full 2^(n^2) sweep.
SampleSet exact_by_tours(const QuboModel& q) {
  const int n = q.structure_n;
  if (n > 10)
    throw budget_error("sample_exact: tour enumeration capped at 10 cities, "
                       "model describes " + std::to_string(n));
  // Edge costs read back from the objective coupling between step 0 and
  // step 1; one-hot penalties never touch city-to-city pairs for n >= 3.
  const auto edge = [&](int i, int j) {
    const int a = i * n + 0;
    const int b = j * n + 1;
    const auto it =
        q.quadratic.find({std::min(a, b), std::max(a, b)});
    return it == q.quadratic.end() ? 0.0 : it->second;
  };
  std::vector<std::vector<double>> cost(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) cost[i][j] = edge(i, j);

  std::vector<int> rest(n - 1);
  std::iota(rest.begin(), rest.end(), 1);
  double best = std::numeric_limits<double>::infinity();
  std::vector<std::vector<int>> best_cycles;
  do {
    double c = cost[rest.back()][0];
    int prev = 0;
    for (int v : rest) {
      c += cost[prev][v];
      prev = v;
    }
    if (c < best - 1e-9) {
      best = c;
      best_cycles.clear();
    }
    if (c <= best + 1e-9) {
      std::vector<int> cycle;
      cycle.reserve(n);
      cycle.push_back(0);
      cycle.insert(cycle.end(), rest.begin(), rest.end());
      best_cycles.push_back(std::move(cycle));
    }
  } while (std::next_permutation(rest.begin(), rest.end()));

  // All n rotations of each optimal cycle are distinct minimizing
  // bitstrings; energies come from exact re-evaluation.
  double exact_min = std::numeric_limits<double>::infinity();
  std::vector<std::pair<BitVec, double>> candidates;
  for (const auto& cycle : best_cycles)
    for (int r = 0; r < n; ++r) {
      Tour t;
      t.order.resize(n);
      for (int k = 0; k < n; ++k) t.order[k] = cycle[(r + k) % n];
      BitVec bits = tour_position_bits(t, n);
      const double e = eval_qubo(q, bits);
      exact_min = std::min(exact_min, e);
      candidates.emplace_back(std::move(bits), e);
    }
  std::map<BitVec, std::int64_t> counts;
  for (auto& [bits, e] : candidates)
    if (e == exact_min) counts.emplace(std::move(bits), 1);
  return finalize(std::move(counts), q, "exact", 0);
}

void check_params(const SamplerParams& p) {
  if (p.num_reads < 1) throw input_error("sampler params: num_reads must be >= 1");
  if (p.num_sweeps < 0) throw input_error("sampler params: num_sweeps must be >= 0");
  if (!(p.beta_initial > 0.0))
    throw input_error("sampler params: beta_initial must be positive");
  if (p.beta_final < p.beta_initial)
    throw input_error("sampler params: beta_final must be >= beta_initial");
}

}  // namespace

const SampleEntry& SampleSet::best() const {
  if (entries.empty()) throw input_error("sample set is empty");
  return entries.front();
}

SampleSet sample_exact(const QuboModel& q) {
  if (q.num_bits <= 24) return exact_by_enumeration(q);
  if (q.structure == QuboStructure::kTspPosition && q.structure_n >= 3 &&
      q.num_bits == q.structure_n * q.structure_n)
    return exact_by_tours(q);
  throw budget_error("sample_exact: " + std::to_string(q.num_bits) +
                     " bits exceeds the enumeration cap of 24");
}

SampleSet sample_sa(const QuboModel& q, const SamplerParams& params) {
  if (q.num_bits < 1) throw input_error("sample_sa: model has no bits");
  check_params(params);
  const int m = q.num_bits;
  const Adjacency adj(q);

  std::vector<double> betas(params.num_sweeps);
  if (params.num_sweeps == 1) {
    betas[0] = params.beta_final;
  } else if (params.num_sweeps > 1) {
    const double ratio = params.beta_final / params.beta_initial;
    for (int s = 0; s < params.num_sweeps; ++s)
      betas[s] = params.beta_initial *
                 std::pow(ratio, static_cast<double>(s) /
                                     (params.num_sweeps - 1));
  }

  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> pick(0, m - 1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::map<BitVec, std::int64_t> counts;
  BitVec bits(m);
  for (int r = 0; r < params.num_reads; ++r) {
    std::mt19937_64 rng(derive_seed(params.seed, static_cast<std::uint64_t>(r)));
    for (int i = 0; i < m; ++i) bits[i] = static_cast<std::uint8_t>(coin(rng));
    std::vector<double> acc = local_fields(q, adj, bits);
    for (double beta : betas)
      for (int step = 0; step < m; ++step) {
        const int i = pick(rng);
        const double delta = bits[i] ? -acc[i] : acc[i];
        if (delta <= 0.0 || unit(rng) < std::exp(-beta * delta))
          apply_flip(i, bits, acc, adj);
      }
    ++counts[bits];
  }
  SampleSet out = finalize(std::move(counts), q, "sa", params.seed);
  return out;
}

SampleSet sample_random(const QuboModel& q, int num_draws,
                        std::uint64_t seed) {
  if (q.num_bits < 1) throw input_error("sample_random: model has no bits");
  if (num_draws < 1) throw input_error("sample_random: num_draws must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coin(0, 1);
  std::map<BitVec, std::int64_t> counts;
  BitVec bits(q.num_bits);
  for (int d = 0; d < num_draws; ++d) {
    for (int i = 0; i < q.num_bits; ++i)
      bits[i] = static_cast<std::uint8_t>(coin(rng));
    ++counts[bits];
  }
  return finalize(std::move(counts), q, "random", seed);
}

std::vector<SampleSet> sample_random_baseline(const QuboModel& q,
                                              int num_draws, int repetitions,
                                              std::uint64_t seed) {
  if (repetitions < 1)
    throw input_error("sample_random_baseline: repetitions must be >= 1");
  std::vector<SampleSet> out;
  out.reserve(repetitions);
  for (int r = 0; r < repetitions; ++r) {
    const std::uint64_t sub = derive_seed(seed, static_cast<std::uint64_t>(r));
    const SampleSet draws = sample_random(q, num_draws, sub);
    SampleSet champion;
    champion.sampler_id = "random-baseline";
    champion.seed = sub;
    SampleEntry e = draws.best();  // lowest energy, lex-smallest on ties
    e.occurrences = 1;
    champion.total_reads = 1;
    champion.entries.push_back(std::move(e));
    out.push_back(std::move(champion));
  }
  return out;
}

std::vector<Tour> sample_random_tour_baseline(const TspInstance& inst,
                                              int repetitions,
                                              std::uint64_t seed) {
  inst.validate();
  if (repetitions < 1)
    throw input_error("sample_random_tour_baseline: repetitions must be >= 1");
  const int n = inst.num_cities();
  std::vector<Tour> out;
  out.reserve(repetitions);
  for (int r = 0; r < repetitions; ++r) {
    std::mt19937_64 rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    Tour t;
    t.order.resize(n);
    std::iota(t.order.begin(), t.order.end(), 0);
    std::shuffle(t.order.begin() + 1, t.order.end(), rng);
    out.push_back(std::move(t));
  }
  return out;
}

const char* sampler_kind_name(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::kExact: return "exact";
    case SamplerKind::kSa: return "sa";
    case SamplerKind::kRandom: return "random";
  }
  throw input_error("unknown sampler kind");
}

SamplerKind sampler_kind_from_name(const std::string& name) {
  if (name == "exact") return SamplerKind::kExact;
  if (name == "sa") return SamplerKind::kSa;
  if (name == "random") return SamplerKind::kRandom;
  throw input_error("unknown sampler '" + name + "', expected exact|sa|random");
}

namespace {

class ExactSampler final : public Sampler {
 public:
  SampleSet sample(const QuboModel& q, const SamplerParams&) const override {
    return sample_exact(q);
  }
  std::string id() const override { return "exact"; }
};

class SaSampler final : public Sampler {
 public:
  SampleSet sample(const QuboModel& q,
                   const SamplerParams& params) const override {
    return sample_sa(q, params);
  }
  std::string id() const override { return "sa"; }
};

class RandomSampler final : public Sampler {
 public:
  SampleSet sample(const QuboModel& q,
                   const SamplerParams& params) const override {
    return sample_random(q, params.num_reads, params.seed);
  }
  std::string id() const override { return "random"; }
};

}  // namespace

std::unique_ptr<Sampler> make_sampler(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::kExact: return std::make_unique<ExactSampler>();
    case SamplerKind::kSa: return std::make_unique<SaSampler>();
    case SamplerKind::kRandom: return std::make_unique<RandomSampler>();
  }
  throw input_error("unknown sampler kind");
}

}  // namespace hbb
