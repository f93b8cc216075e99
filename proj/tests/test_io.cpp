#include <cmath>
#include <cstdlib>
#include <string>
#include <variant>

#include "doctest.h"
#include "hbb/io.hpp"
#include "hbb/problem.hpp"
#include "hbb/qubo.hpp"
#include "hbb/samplers.hpp"
#include "oracles.hpp"
#include "temp_dir.hpp"

using namespace hbb;

TEST_SUITE("io") {

TEST_CASE("instances round-trip through json") {
  const KpInstance kp = kp_toy(4, 2.0);
  const Instance kp_back = parse_instance(instance_to_json(kp));
  const auto* kp2 = std::get_if<KpInstance>(&kp_back);
  REQUIRE(kp2 != nullptr);
  CHECK(kp2->values == kp.values);
  CHECK(kp2->weights == kp.weights);
  CHECK(kp2->capacity == kp.capacity);

  const TspInstance tsp = tsp_toy(4);
  const Instance tsp_back = parse_instance(instance_to_json(tsp));
  const auto* tsp2 = std::get_if<TspInstance>(&tsp_back);
  REQUIRE(tsp2 != nullptr);
  CHECK(tsp2->cost == tsp.cost);

  BlopInstance blop;
  blop.c = {-1.0, -2.0};
  blop.a = {{1.0, 1.0}};
  blop.b = {1.0};
  blop.sense = {RowSense::kLessEqual};
  const Instance blop_back = parse_instance(instance_to_json(blop));
  const auto* blop2 = std::get_if<BlopInstance>(&blop_back);
  REQUIRE(blop2 != nullptr);
  CHECK(blop2->c == blop.c);
  CHECK(blop2->a == blop.a);
  CHECK(blop2->sense == blop.sense);
}

TEST_CASE("instance parsing rejects malformed input") {
  CHECK_THROWS_AS(parse_instance("not json"), input_error);
  CHECK_THROWS_AS(parse_instance("[1,2]"), input_error);
  CHECK_THROWS_AS(parse_instance(R"({"type":"sudoku"})"), input_error);
  CHECK_THROWS_AS(parse_instance(R"({"values":[1]})"), input_error);
  // Knapsack with mismatched arrays.
  CHECK_THROWS_AS(
      parse_instance(
          R"({"type":"kp","values":[1,2],"weights":[1],"capacity":1})"),
      input_error);
  // Tour matrix disagreeing with its declared size.
  CHECK_THROWS_AS(
      parse_instance(
          R"({"type":"tsp","n":3,"cost":[[0,1],[1,0]]})"),
      input_error);
  // Unknown constraint sense.
  CHECK_THROWS_AS(
      parse_instance(
          R"({"type":"blop","c":[1],"A":[[1]],"b":[1],"sense":[">="]})"),
      input_error);
}

TEST_CASE("instance files load and save") {
  TempDir tmp;
  const auto path = tmp.path / "inst.json";
  save_instance(kp_toy(5, 3.0), path);
  const Instance loaded = load_instance(path);
  const auto* kp = std::get_if<KpInstance>(&loaded);
  REQUIRE(kp != nullptr);
  CHECK(kp->num_items() == 5);
  CHECK_THROWS_AS(load_instance(tmp.path / "absent.json"), input_error);
}

TEST_CASE("qubo and ising models round-trip through json") {
  const QuboModel q = kp_qubo(kp_toy(4, 2.0));
  const QuboModel q2 = qubo_from_json(qubo_to_json(q));
  CHECK(q2.num_bits == q.num_bits);
  CHECK(q2.linear == q.linear);
  CHECK(q2.quadratic == q.quadratic);
  CHECK(q2.offset == q.offset);
  CHECK(q2.var_names == q.var_names);
  CHECK(q2.structure == q.structure);

  const IsingModel m = qubo_to_ising(q);
  const IsingModel m2 = ising_from_json(ising_to_json(m));
  CHECK(m2.num_spins == m.num_spins);
  CHECK(m2.h == m.h);
  CHECK(m2.j == m.j);
  CHECK(m2.offset == m.offset);

  CHECK_THROWS_AS(qubo_from_json(R"({"type":"ising"})"), input_error);
  CHECK_THROWS_AS(
      qubo_from_json(
          R"({"type":"qubo","num_bits":2,"linear":[0,0],
              "quadratic":[[0,1,1.0],[1,0,2.0]],"offset":0})"),
      input_error);  // duplicate coupling under mirrored keys
}

TEST_CASE("ising files accept qubo input by conversion") {
  TempDir tmp;
  const QuboModel q = kp_qubo(kp_toy(3, 2.0));
  const auto qubo_path = tmp.path / "model-q.json";
  write_text_file(qubo_path, qubo_to_json(q));
  const IsingModel direct = qubo_to_ising(q);
  const IsingModel via_file = load_ising(qubo_path);
  CHECK(via_file.num_spins == direct.num_spins);
  CHECK(via_file.h == direct.h);
  CHECK(via_file.j == direct.j);
  CHECK(via_file.offset == direct.offset);

  const auto ising_path = tmp.path / "model-i.json";
  write_text_file(ising_path, ising_to_json(direct));
  CHECK(load_ising(ising_path).h == direct.h);
}

TEST_CASE("sample sets print stable tables") {
  QuboModel q;
  q.num_bits = 2;
  q.linear = {-1.0, -1.0};
  q.add_quadratic(0, 1, 2.0);
  const SampleSet set = sample_exact(q);
  CHECK(sample_set_to_csv(set) ==
        "bits,energy,occurrences\n01,-1,1\n10,-1,1\n");
  const std::string json = sample_set_to_json(set);
  CHECK(json.find("\"sampler_id\"") != std::string::npos);
  CHECK(json.find("\"01\"") != std::string::npos);
}

TEST_CASE("schedule files parse all accepted shapes") {
  TempDir tmp;
  const auto path = tmp.path / "sched.txt";
  write_text_file(path,
                  "# custom ramp\n"
                  "0 1 0\n"
                  "0.5 0.4 0.6\n"
                  "\n"
                  "1 0 1\n");
  const Schedule sched = load_schedule(path);
  CHECK(sched.a(0.5) == doctest::Approx(0.4));
  CHECK(sched.b(0.25) == doctest::Approx(0.3));

  const auto two_col = tmp.path / "sched2.txt";
  write_text_file(two_col, "0 0\n0.5 0.25\n1 1\n");
  const Schedule mixed = load_schedule(two_col);
  CHECK(mixed.a(0.5) == doctest::Approx(0.75));
  CHECK(mixed.b(0.5) == doctest::Approx(0.25));

  const auto bad = tmp.path / "bad.txt";
  write_text_file(bad, "0 1 0\n0.5 oops 1\n1 0 1\n");
  CHECK_THROWS_AS(load_schedule(bad), input_error);

  const auto unsorted = tmp.path / "unsorted.txt";
  write_text_file(unsorted, "0 1 0\n0.9 0.5 0.5\n0.4 0.2 0.2\n1 0 1\n");
  CHECK_THROWS_AS(load_schedule(unsorted), input_error);

  CHECK_THROWS_AS(load_schedule(tmp.path / "missing.txt"), input_error);
}

TEST_CASE("numbers format tersely and round-trip") {
  CHECK(fmt_num(0.0) == "0");
  CHECK(fmt_num(-0.0) == "0");
  CHECK(fmt_num(-205.0) == "-205");
  CHECK(fmt_num(100.0) == "100");
  CHECK(fmt_num(0.5) == "0.5");
  CHECK(fmt_num(0.1) == "0.1");
  CHECK(fmt_int(0) == "0");
  CHECK(fmt_int(-7) == "-7");

  for (const double v : {1.0 / 3.0, 0.1, 1e-9, -205.0, 2.0 / std::sqrt(5.0)}) {
    const std::string text = fmt_num(v);
    CHECK(std::strtod(text.c_str(), nullptr) == v);
  }
}

TEST_CASE("csv tables reject ragged rows") {
  CsvTable t;
  t.header = {"a", "b"};
  t.rows.push_back({"1", "2"});
  t.rows.push_back({"3", "4"});
  CHECK(t.to_string() == "a,b\n1,2\n3,4\n");

  TempDir tmp;
  const auto path = tmp.path / "t.csv";
  t.save(path);
  CHECK(read_text_file(path) == t.to_string());

  t.rows.push_back({"5"});
  CHECK_THROWS_AS(t.to_string(), std::logic_error);

  CHECK_THROWS_AS(read_text_file(tmp.path / "nope.csv"), input_error);
}

}  // TEST_SUITE
