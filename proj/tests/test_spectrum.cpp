#include <cmath>
#include <utility>
#include <vector>

#include "doctest.h"
#include "hbb/problem.hpp"
#include "hbb/qubo.hpp"
#include "hbb/spectrum.hpp"

using namespace hbb;

namespace {

// One spin in a unit longitudinal field: the workhorse closed-form case.
IsingModel single_spin() {
  IsingModel m;
  m.num_spins = 1;
  m.h = {1.0};
  return m;
}

// Gap of the single-spin crossing under the linear schedule.
double single_spin_gap(double s) {
  return 2.0 * std::sqrt((1.0 - s) * (1.0 - s) + s * s / 4.0);
}

}  // namespace

TEST_SUITE("spectrum") {

TEST_CASE("schedules interpolate between their knots") {
  const Schedule lin = Schedule::linear();
  CHECK(lin.a(0.0) == 1.0);
  CHECK(lin.b(0.0) == 0.0);
  CHECK(lin.a(1.0) == 0.0);
  CHECK(lin.b(1.0) == 1.0);
  CHECK(lin.a(0.5) == doctest::Approx(0.5));
  CHECK(lin.b(0.25) == doctest::Approx(0.25));

  const Schedule flat = Schedule::constant(2.0, 3.0);
  CHECK(flat.a(0.7) == 2.0);
  CHECK(flat.b(0.1) == 3.0);

  const Schedule custom(
      {{0.0, 1.0, 0.0}, {0.5, 0.2, 0.9}, {1.0, 0.0, 1.0}});
  CHECK(custom.a(0.25) == doctest::Approx(0.6));
  CHECK(custom.b(0.75) == doctest::Approx(0.95));

  CHECK_THROWS_AS(Schedule({}), input_error);
  CHECK_THROWS_AS(Schedule({{0.2, 1.0, 0.0}, {1.0, 0.0, 1.0}}), input_error);
  CHECK_THROWS_AS(Schedule({{0.0, 1.0, 0.0}, {0.9, 0.0, 1.0}}), input_error);
  CHECK_THROWS_AS(
      Schedule({{0.0, 1.0, 0.0}, {0.5, 1.0, 0.5}, {0.5, 0.5, 0.5},
                {1.0, 0.0, 1.0}}),
      input_error);
  CHECK_THROWS_AS(Schedule({{0.0, 0.0, 0.0}, {1.0, 0.0, 1.0}}), input_error);
  CHECK_THROWS_AS(Schedule({{0.0, 1.0, -0.1}, {1.0, 0.0, 1.0}}), input_error);
}

TEST_CASE("annealing matrix matches the hand expansion") {
  const IsingModel m = single_spin();
  const Schedule lin = Schedule::linear();
  const double s = 0.3;
  const Eigen::MatrixXd h = build_annealing_hamiltonian(m, lin, s);
  REQUIRE(h.rows() == 2);
  // Basis: index 0 is spin -1/2, index 1 is spin +1/2.
  CHECK(h(0, 0) == doctest::Approx(-0.5 * s));
  CHECK(h(1, 1) == doctest::Approx(0.5 * s));
  CHECK(h(0, 1) == doctest::Approx(-(1.0 - s)));
  CHECK(h(1, 0) == h(0, 1));

  // Two coupled spins, checked entry by entry against the definition.
  IsingModel two;
  two.num_spins = 2;
  two.h = {1.0, -2.0};
  two.j[{0, 1}] = 4.0;
  two.offset = 0.25;
  const double a = lin.a(s);
  const double b = lin.b(s);
  const Eigen::MatrixXd h2 = build_annealing_hamiltonian(two, lin, s);
  REQUIRE(h2.rows() == 4);
  for (int idx = 0; idx < 4; ++idx) {
    const double s0 = (idx & 1) ? 0.5 : -0.5;
    const double s1 = (idx & 2) ? 0.5 : -0.5;
    const double diag =
        b * (0.25 + 1.0 * s0 - 2.0 * s1 + 4.0 * s0 * s1);
    CHECK(h2(idx, idx) == doctest::Approx(diag));
  }
  CHECK(h2(0, 1) == doctest::Approx(-a));  // flip of spin 0
  CHECK(h2(0, 2) == doctest::Approx(-a));  // flip of spin 1
  CHECK(h2(0, 3) == 0.0);                  // double flips never couple
  CHECK(h2(1, 2) == 0.0);

  CHECK_THROWS_AS(build_annealing_hamiltonian(m, lin, -0.1), input_error);
  CHECK_THROWS_AS(build_annealing_hamiltonian(m, lin, 1.1), input_error);
}

TEST_CASE("single spin crossing has the closed-form gap") {
  const GapScan scan = gap_scan(single_spin(), Schedule::linear(), 201);
  REQUIRE(scan.s_values.size() == 201);
  REQUIRE(scan.gap.size() == 201);
  CHECK(scan.matrix_dim == 2);

  for (int k = 0; k < 201; k += 20)
    CHECK(scan.gap[k] ==
          doctest::Approx(single_spin_gap(scan.s_values[k])).epsilon(1e-9));

  // Minimum 2/sqrt(5) at s = 4/5; the 201-point grid hits 0.8 exactly.
  CHECK(std::abs(scan.min_gap - 2.0 / std::sqrt(5.0)) <= 1e-9);
  CHECK(scan.argmin_s == doctest::Approx(0.8));

  // The ground level at the endpoints: -A at s=0, -B/2 at s=1.
  CHECK(scan.ground.front() == doctest::Approx(-1.0));
  CHECK(scan.ground.back() == doctest::Approx(-0.5));
}

TEST_CASE("degenerate spectra report zero gap") {
  // No classical part at all: the gap is 2A(s), closing exactly at s = 1.
  IsingModel flat;
  flat.num_spins = 2;
  flat.h = {0.0, 0.0};
  const GapScan scan = gap_scan(flat, Schedule::linear(), 11);
  REQUIRE(scan.gap.size() == 11);
  for (std::size_t k = 0; k < scan.gap.size(); ++k)
    CHECK(scan.gap[k] ==
          doctest::Approx(2.0 * (1.0 - scan.s_values[k])).epsilon(1e-9));
  CHECK(scan.min_gap == doctest::Approx(0.0));
  CHECK(scan.argmin_s == doctest::Approx(1.0));
}

TEST_CASE("scan size caps and grid validation") {
  IsingModel big;
  big.num_spins = 13;
  big.h.assign(13, 1.0);
  CHECK_THROWS_AS(gap_scan(big, Schedule::linear()), budget_error);
  CHECK_THROWS_AS(gap_scan(single_spin(), Schedule::linear(), 1), input_error);

  IsingModel mismatched;
  mismatched.num_spins = 2;
  mismatched.h = {1.0};
  CHECK_THROWS_AS(gap_scan(mismatched, Schedule::linear()), input_error);
}

TEST_CASE("power-law fit recovers planted exponents") {
  std::vector<std::pair<double, double>> pts;
  for (int m = 5; m <= 9; ++m)
    pts.emplace_back(m, 3.0 * std::pow(m, -2.0));
  const PowerLawFit fit = fit_power_law(pts);
  CHECK(fit.exponent == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(fit.prefactor == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));

  std::vector<std::pair<double, double>> flat;
  for (int m = 2; m <= 6; ++m) flat.emplace_back(m, 0.7);
  const PowerLawFit zero = fit_power_law(flat);
  CHECK(zero.exponent == doctest::Approx(0.0));
  CHECK(zero.prefactor == doctest::Approx(0.7));

  CHECK_THROWS_AS(fit_power_law({{1.0, 1.0}}), input_error);
  CHECK_THROWS_AS(fit_power_law({{1.0, 1.0}, {2.0, 0.0}}), input_error);
  CHECK_THROWS_AS(fit_power_law({{1.0, 1.0}, {2.0, -0.5}}), input_error);
}

TEST_CASE("scaling study wires sizes through the family") {
  // Independent unit-field spins: the lowest excitation is one flipped
  // spin, so every size shares the single-spin minimum gap and the fitted
  // exponent vanishes.
  const auto family = [](int size) {
    IsingModel m;
    m.num_spins = size;
    m.h.assign(size, 1.0);
    return m;
  };
  const std::vector<int> sizes = {1, 2, 3, 4};
  const GapScalingStudy study =
      gap_scaling_study(family, sizes, Schedule::linear(), 101);
  REQUIRE(study.sizes == sizes);
  REQUIRE(study.min_gaps.size() == 4);
  for (const double g : study.min_gaps)
    CHECK(g == doctest::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-6));
  CHECK(study.fit.exponent == doctest::Approx(0.0).epsilon(1e-6));
  CHECK(study.fit.r_squared >= 0.0);
}

TEST_CASE("adiabatic bound matches the two-level closed form") {
  // For H(s) = -(1-s) sigma_x + (s/2) sigma_z the matrix element of dH/ds
  // between the two levels is 1/(2|h|) with |h| = sqrt((1-s)^2 + s^2/4),
  // and the bound max_s |<0|dH|1>| / gap^2 = max_s 1/(8|h|^3) peaks at
  // s = 4/5 with value 5*sqrt(5)/8.
  const AdiabaticBound bound =
      adiabatic_bound(single_spin(), Schedule::linear(), 201);
  REQUIRE_FALSE(bound.degenerate_at.has_value());
  CHECK(bound.value ==
        doctest::Approx(5.0 * std::sqrt(5.0) / 8.0).epsilon(1e-6));

  // A frozen schedule never drives transitions: dH/ds = 0 everywhere.
  const AdiabaticBound still =
      adiabatic_bound(single_spin(), Schedule::constant(1.0, 1.0), 51);
  CHECK(still.value == 0.0);

  // The linear schedule closes the single-spin gap at s = 1 when h = 0.
  IsingModel hless;
  hless.num_spins = 1;
  hless.h = {0.0};
  const AdiabaticBound degenerate =
      adiabatic_bound(hless, Schedule::linear(), 101);
  REQUIRE(degenerate.degenerate_at.has_value());
  CHECK(*degenerate.degenerate_at == doctest::Approx(1.0));
  CHECK(std::isinf(degenerate.value));
}

TEST_CASE("gap scans agree with the qubo reduction end to end") {
  // At s = 1 the spectrum is the classical Ising spectrum, so the scan's
  // final ground energy equals the exhaustive QUBO minimum.
  const QuboModel q = kp_qubo(kp_toy(4, 2.0));
  const IsingModel ising = qubo_to_ising(q);
  const GapScan scan = gap_scan(ising, Schedule::linear(), 21);
  CHECK(scan.ground.back() == doctest::Approx(-7.0));
}

}  // TEST_SUITE
