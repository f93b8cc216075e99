#pragma once

/// Small-system annealing spectra. The interpolating Hamiltonian is
///   H(s) = -A(s) * sum_i sigma_x_i + B(s) * (offset + sum_i h_i S_z_i
///          + sum_{i<j} J_ij S_z_i S_z_j)
/// where S_z has eigenvalues +-1/2, matching the spin convention of the
/// Ising transform, while the transverse term uses the full Pauli sigma_x.
/// Matrices are dense and real symmetric; sizes are capped well below what
/// dense diagonalization can stomach.

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "hbb/qubo.hpp"

namespace hbb {

struct SchedulePoint {
  double s = 0.0;
  double a = 0.0;
  double b = 0.0;
};

// Piecewise-linear A(s), B(s) on [0, 1]. Knots must start at s = 0, end at
// s = 1, be strictly increasing, stay nonnegative, and satisfy A(0) > 0.
class Schedule {
 public:
  explicit Schedule(std::vector<SchedulePoint> points);

  static Schedule linear();                      // A = 1 - s, B = s
  static Schedule constant(double a, double b);  // flat (test helper)

  double a(double s) const;
  double b(double s) const;
  const std::vector<SchedulePoint>& points() const { return points_; }

 private:
  std::vector<SchedulePoint> points_;
};

// Dense 2^M x 2^M matrix; M <= 12. Basis state index carries bit i of the
// configuration in its i-th binary digit, with bit 1 meaning spin +1/2.
Eigen::MatrixXd build_annealing_hamiltonian(const IsingModel& m,
                                            const Schedule& sched, double s);

struct GapScan {
  std::vector<double> s_values;
  std::vector<double> gap;     // to the first level distinct from the ground
  std::vector<double> ground;  // lowest eigenvalue per grid point
  double min_gap = 0.0;
  double argmin_s = 0.0;
  int matrix_dim = 0;
};

// Uniform grid over s in [0, 1]. Levels within 1e-9 of the ground energy
// count as degenerate; a fully degenerate spectrum reports gap 0.
GapScan gap_scan(const IsingModel& m, const Schedule& sched,
                 int grid_points = 201);

struct PowerLawFit {
  double exponent = 0.0;   // slope of log(gap) vs log(size)
  double prefactor = 0.0;  // gap at size 1 under the fit
  double r_squared = 0.0;
};

// Least squares on (log size, log gap); every gap must be positive.
PowerLawFit fit_power_law(
    const std::vector<std::pair<double, double>>& size_gap);

struct GapScalingStudy {
  std::vector<int> sizes;  // spin counts actually produced by the family
  std::vector<double> min_gaps;
  std::vector<double> argmin_s;
  PowerLawFit fit;
};

GapScalingStudy gap_scaling_study(
    const std::function<IsingModel(int)>& family, const std::vector<int>& sizes,
    const Schedule& sched, int grid_points = 201);

struct AdiabaticBound {
  double value = 0.0;
  // Set when some grid point has a (numerically) zero gap; value is then
  // infinity and the bound is reported as unbounded at this s.
  std::optional<double> degenerate_at;
};

// max over the grid of |<e0| dH/ds |e1>| / gap(s)^2 with the schedule
// derivatives taken by central finite differences (one-sided at the ends).
// M <= 10 since eigenvectors are needed at every grid point.
AdiabaticBound adiabatic_bound(const IsingModel& m, const Schedule& sched,
                               int grid_points = 201);

}  // namespace hbb
