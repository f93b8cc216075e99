#include <algorithm>
#include <random>

#include "doctest.h"
#include "hbb/problem.hpp"
#include "hbb/types.hpp"
#include "oracles.hpp"

using namespace hbb;

TEST_SUITE("problem") {

TEST_CASE("toy knapsack lists values 1..n with unit weights") {
  const KpInstance inst = kp_toy(5, 2.0);
  REQUIRE(inst.num_items() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(inst.values[i] == doctest::Approx(i + 1));
    CHECK(inst.weights[i] == 1.0);
  }
  CHECK(inst.capacity == 2.0);

  CHECK_THROWS_AS(kp_toy(0, 1.0), input_error);
  CHECK_THROWS_AS(kp_toy(5, 0.0), input_error);
  CHECK_THROWS_AS(kp_toy(5, 6.0), input_error);
}

TEST_CASE("knapsack evaluation sums the chosen items") {
  const KpInstance inst = kp_toy(4, 2.0);
  CHECK(kp_objective(inst, {0, 0, 1, 1}) == -7.0);
  CHECK(kp_weight(inst, {0, 0, 1, 1}) == 2.0);
  CHECK(kp_objective(inst, {0, 0, 0, 0}) == 0.0);
  CHECK_THROWS_AS(kp_objective(inst, {1, 0}), input_error);
  CHECK_THROWS_AS(kp_weight(inst, {1, 0}), input_error);
}

TEST_CASE("toy tour costs are cyclic gaps") {
  const TspInstance inst = tsp_toy(4);
  CHECK(inst.cost[0][1] == 1.0);
  CHECK(inst.cost[1][0] == 3.0);
  CHECK(inst.cost[3][0] == 1.0);
  CHECK(inst.cost[2][2] == 0.0);

  for (int n = 3; n <= 7; ++n) {
    Tour ascending;
    for (int i = 0; i < n; ++i) ascending.order.push_back(i);
    CHECK(tour_cost(tsp_toy(n), ascending) == doctest::Approx(n));
  }
  // Any step backwards pays the long way round.
  CHECK(tour_cost(tsp_toy(3), Tour{{0, 2, 1}}) == doctest::Approx(6.0));

  CHECK_THROWS_AS(tsp_toy(2), input_error);
  CHECK_THROWS_AS(tour_cost(tsp_toy(3), Tour{{0, 1, 1}}), input_error);
  CHECK_THROWS_AS(tour_cost(tsp_toy(3), Tour{{0, 1}}), input_error);
}

TEST_CASE("blop evaluation respects row senses") {
  BlopInstance inst;
  inst.c = {-1.0, -2.0, 1.0};
  inst.a = {{1.0, 1.0, 0.0}, {0.0, 1.0, 1.0}};
  inst.b = {1.0, 1.0};
  inst.sense = {RowSense::kLessEqual, RowSense::kEqual};
  inst.validate();

  const Evaluation ok = evaluate_blop(inst, {1, 0, 1});
  CHECK(ok.feasible);
  CHECK(ok.objective == doctest::Approx(0.0));

  CHECK_FALSE(evaluate_blop(inst, {1, 1, 0}).feasible);  // <= row at 2
  CHECK_FALSE(evaluate_blop(inst, {1, 0, 0}).feasible);  // = row at 0
  CHECK(evaluate_blop(inst, {0, 1, 0}).feasible);

  CHECK_THROWS_AS(evaluate_blop(inst, {1, 0}), input_error);

  BlopInstance ragged = inst;
  ragged.a[1].pop_back();
  CHECK_THROWS_AS(ragged.validate(), input_error);
}

TEST_CASE("knapsack as a blop has matching optima") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const KpInstance kp = oracle::random_kp(rng, 12);
    const BlopInstance blop = kp_to_blop(kp);
    REQUIRE(blop.num_vars() == kp.num_items());
    REQUIRE(blop.num_rows() == 1);
    CHECK(blop.sense[0] == RowSense::kLessEqual);

    const auto kp_best = oracle::brute_force_kp(kp);
    const auto blop_best = oracle::brute_force_blop(blop);
    REQUIRE(blop_best.feasible);
    CHECK(blop_best.objective == kp_best.objective);
  }
}

TEST_CASE("position and edge encodings round-trip tours") {
  const TspInstance inst = tsp_toy(5);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    Tour tour;
    tour.order = {0, 1, 2, 3, 4};
    std::shuffle(tour.order.begin() + 1, tour.order.end(), rng);

    const BitVec pos = tour_position_bits(tour, 5);
    CHECK(validate_tour(inst, pos, TourEncoding::kCityByStep));
    const auto back = tour_from_position_bits(pos, 5);
    REQUIRE(back.has_value());
    CHECK(back->order == tour.order);

    const BitVec edges = tour_edge_bits(tour, 5);
    CHECK(validate_tour(inst, edges, TourEncoding::kEdgeByPair));
  }
}

TEST_CASE("subtours and broken one-hots are rejected") {
  const TspInstance inst = tsp_toy(4);

  // Two 2-cycles: a permutation matrix but not a single tour.
  BitVec edges(16, 0);
  edges[0 * 4 + 1] = 1;
  edges[1 * 4 + 0] = 1;
  edges[2 * 4 + 3] = 1;
  edges[3 * 4 + 2] = 1;
  CHECK_FALSE(validate_tour(inst, edges, TourEncoding::kEdgeByPair));

  // The same matrix read city-by-step is a valid assignment.
  CHECK(validate_tour(inst, edges, TourEncoding::kCityByStep));

  BitVec empty(16, 0);
  CHECK_FALSE(validate_tour(inst, empty, TourEncoding::kCityByStep));
  CHECK_FALSE(tour_from_position_bits(empty, 4).has_value());

  BitVec doubled = tour_position_bits(Tour{{0, 1, 2, 3}}, 4);
  doubled[1 * 4 + 2] = 1;  // second mark in row 1
  CHECK_FALSE(validate_tour(inst, doubled, TourEncoding::kCityByStep));

  CHECK_THROWS_AS(validate_tour(inst, BitVec(15, 0)), input_error);
}

TEST_CASE("bit strings round-trip through text") {
  const BitVec bits = {1, 0, 0, 1, 1};
  CHECK(bits_to_string(bits) == "10011");
  CHECK(bits_from_string("10011") == bits);
  CHECK(bits_from_string("").empty());
  CHECK_THROWS_AS(bits_from_string("10x1"), input_error);
}

TEST_CASE("seed derivation separates indices and stays stable") {
  CHECK(derive_seed(1, 0) == derive_seed(1, 0));
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 0) != derive_seed(2, 0));
  // A run/repetition grid never collides in practice; spot-check a block.
  std::vector<std::uint64_t> seen;
  for (std::uint64_t base = 0; base < 8; ++base)
    for (std::uint64_t idx = 0; idx < 64; ++idx)
      seen.push_back(derive_seed(base, idx));
  std::sort(seen.begin(), seen.end());
  CHECK(std::adjacent_find(seen.begin(), seen.end()) == seen.end());
}

TEST_CASE("instance validation rejects malformed data") {
  KpInstance kp = kp_toy(3, 2.0);
  kp.values[1] = 0.0;
  CHECK_THROWS_AS(kp.validate(), input_error);
  kp = kp_toy(3, 2.0);
  kp.weights[0] = -1.0;
  CHECK_THROWS_AS(kp.validate(), input_error);
  kp = kp_toy(3, 2.0);
  kp.capacity = -0.5;
  CHECK_THROWS_AS(kp.validate(), input_error);
  kp.capacity = 0.0;  // zero capacity is a legal residual state
  CHECK_NOTHROW(kp.validate());

  TspInstance tsp = tsp_toy(3);
  tsp.cost[1][1] = 2.0;
  CHECK_THROWS_AS(tsp.validate(), input_error);
  tsp = tsp_toy(3);
  tsp.cost[0][2] = -1.0;
  CHECK_THROWS_AS(tsp.validate(), input_error);
  tsp = tsp_toy(3);
  tsp.cost[2].pop_back();
  CHECK_THROWS_AS(tsp.validate(), input_error);
}

}  // TEST_SUITE
