#pragma once

/// Solution quality measures used by the experiment drivers.

#include <span>

#include "hbb/samplers.hpp"
#include "hbb/types.hpp"

namespace hbb {

// Relative objective error (z_approx - z_opt) / z_opt. Signed: with negative
// optima a worse (larger) z_approx gives a negative value. z_opt must be
// nonzero.
double delta_v(double z_approx, double z_opt);

// Load factor weight / capacity; > 1 flags a capacity violation.
double w_tilde(double weight, double capacity);

// Number of differing positions; lengths must match.
int hamming(const BitVec& a, const BitVec& b);

// Tour cost ratio cost_approx / cost_opt; >= 1 for feasible tours when the
// optimum is positive.
double c_tilde(double cost_approx, double cost_opt);

// Fraction of reads whose energy is within 1e-9 of ground_energy.
double p0_estimate(const SampleSet& samples, double ground_energy);

struct MeanVar {
  double mean = 0.0;
  double variance = 0.0;  // population variance (divisor n)
};

MeanVar aggregate(std::span<const double> xs);

}  // namespace hbb
