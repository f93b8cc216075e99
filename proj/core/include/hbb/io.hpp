#pragma once

/// File formats. Instances and models travel as JSON; tabular results as
/// CSV with deterministic number formatting so identical runs produce
/// byte-identical files; annealing schedules as plain numeric text.

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

#include "hbb/problem.hpp"
#include "hbb/qubo.hpp"
#include "hbb/samplers.hpp"
#include "hbb/spectrum.hpp"

namespace hbb {

using Instance = std::variant<KpInstance, TspInstance, BlopInstance>;

// {"type":"kp","values":[...],"weights":[...],"capacity":...}
// {"type":"tsp","n":...,"cost":[[...]]}
// {"type":"blop","c":[...],"A":[[...]],"b":[...],"sense":["<=","="...]}
Instance parse_instance(const std::string& json_text);
Instance load_instance(const std::filesystem::path& path);
std::string instance_to_json(const Instance& inst);
void save_instance(const Instance& inst, const std::filesystem::path& path);

std::string qubo_to_json(const QuboModel& q);
QuboModel qubo_from_json(const std::string& json_text);
std::string ising_to_json(const IsingModel& m);
IsingModel ising_from_json(const std::string& json_text);

// Model files are {"type":"qubo",...} or {"type":"ising",...}; a QUBO is
// converted on load when an Ising model is required.
IsingModel load_ising(const std::filesystem::path& path);

// Columns bits,energy,occurrences in stored (ascending energy) order.
std::string sample_set_to_csv(const SampleSet& s);
std::string sample_set_to_json(const SampleSet& s);

// Rows "s A B"; two-column rows "s f" mean A = 1 - f, B = f. '#' comments
// and blank lines are skipped.
Schedule load_schedule(const std::filesystem::path& path);

// Shortest round-trippable decimal form; integral values print without a
// trailing ".0". Used for every CSV cell and report number.
std::string fmt_num(double v);
std::string fmt_int(std::int64_t v);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::string to_string() const;  // comma separated, \n line endings
  void save(const std::filesystem::path& path) const;
};

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path,
                     const std::string& content);

}  // namespace hbb
