#include "hbb/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>
#include <utility>

#include "json.hpp"

namespace hbb {

namespace {

using Json = nlohmann::ordered_json;

Json parse_json(const std::string& text, const char* what) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded())
    throw input_error(std::string(what) + ": malformed JSON");
  return j;
}

const Json& field(const Json& j, const char* key, const char* ctx) {
  auto it = j.find(key);
  if (it == j.end())
    throw input_error(std::string(ctx) + ": missing field '" + key + "'");
  return *it;
}

double number(const Json& j, const char* key, const char* ctx) {
  const Json& v = field(j, key, ctx);
  if (!v.is_number())
    throw input_error(std::string(ctx) + ": field '" + key +
                      "' must be a number");
  return v.get<double>();
}

std::int64_t integer(const Json& j, const char* key, const char* ctx) {
  const Json& v = field(j, key, ctx);
  if (!v.is_number_integer())
    throw input_error(std::string(ctx) + ": field '" + key +
                      "' must be an integer");
  return v.get<std::int64_t>();
}

std::vector<double> double_vector(const Json& j, const char* key,
                                  const char* ctx) {
  const Json& v = field(j, key, ctx);
  if (!v.is_array())
    throw input_error(std::string(ctx) + ": field '" + key +
                      "' must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const Json& x : v) {
    if (!x.is_number())
      throw input_error(std::string(ctx) + ": field '" + key +
                        "' must hold numbers only");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<std::vector<double>> matrix(const Json& j, const char* key,
                                        const char* ctx) {
  const Json& v = field(j, key, ctx);
  if (!v.is_array())
    throw input_error(std::string(ctx) + ": field '" + key +
                      "' must be an array of rows");
  std::vector<std::vector<double>> out;
  out.reserve(v.size());
  for (const Json& row : v) {
    if (!row.is_array())
      throw input_error(std::string(ctx) + ": field '" + key +
                        "' must hold numeric rows");
    std::vector<double> r;
    r.reserve(row.size());
    for (const Json& x : row) {
      if (!x.is_number())
        throw input_error(std::string(ctx) + ": field '" + key +
                          "' must hold numbers only");
      r.push_back(x.get<double>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

const char* structure_name(QuboStructure s) {
  switch (s) {
    case QuboStructure::kKnapsack:
      return "knapsack";
    case QuboStructure::kTspPosition:
      return "tsp-position";
    case QuboStructure::kGeneric:
      break;
  }
  return "generic";
}

QuboStructure structure_from_name(const std::string& name) {
  if (name == "generic") return QuboStructure::kGeneric;
  if (name == "knapsack") return QuboStructure::kKnapsack;
  if (name == "tsp-position") return QuboStructure::kTspPosition;
  throw input_error("qubo: unknown structure '" + name + "'");
}

Json instance_json(const KpInstance& inst) {
  Json j;
  j["type"] = "kp";
  j["values"] = inst.values;
  j["weights"] = inst.weights;
  j["capacity"] = inst.capacity;
  return j;
}

Json instance_json(const TspInstance& inst) {
  Json j;
  j["type"] = "tsp";
  j["n"] = inst.num_cities();
  j["cost"] = inst.cost;
  return j;
}

Json instance_json(const BlopInstance& inst) {
  Json j;
  j["type"] = "blop";
  j["c"] = inst.c;
  j["A"] = inst.a;
  j["b"] = inst.b;
  Json senses = Json::array();
  for (RowSense s : inst.sense)
    senses.push_back(s == RowSense::kLessEqual ? "<=" : "=");
  j["sense"] = senses;
  return j;
}

}  // namespace

Instance parse_instance(const std::string& json_text) {
  const Json j = parse_json(json_text, "instance");
  if (!j.is_object())
    throw input_error("instance: expected a JSON object");
  const Json& t = field(j, "type", "instance");
  if (!t.is_string())
    throw input_error("instance: field 'type' must be a string");
  const std::string type = t.get<std::string>();

  if (type == "kp") {
    KpInstance inst;
    inst.values = double_vector(j, "values", "kp instance");
    inst.weights = double_vector(j, "weights", "kp instance");
    inst.capacity = number(j, "capacity", "kp instance");
    inst.validate();
    return inst;
  }
  if (type == "tsp") {
    TspInstance inst;
    inst.cost = matrix(j, "cost", "tsp instance");
    if (integer(j, "n", "tsp instance") != inst.num_cities())
      throw input_error(
          "tsp instance: field 'n' disagrees with the cost matrix size");
    inst.validate();
    return inst;
  }
  if (type == "blop") {
    BlopInstance inst;
    inst.c = double_vector(j, "c", "blop instance");
    inst.a = matrix(j, "A", "blop instance");
    inst.b = double_vector(j, "b", "blop instance");
    const Json& senses = field(j, "sense", "blop instance");
    if (!senses.is_array())
      throw input_error("blop instance: field 'sense' must be an array");
    for (const Json& s : senses) {
      if (s == "<=")
        inst.sense.push_back(RowSense::kLessEqual);
      else if (s == "=")
        inst.sense.push_back(RowSense::kEqual);
      else
        throw input_error(
            "blop instance: field 'sense' entries must be \"<=\" or \"=\"");
    }
    inst.validate();
    return inst;
  }
  throw input_error("instance: unknown type '" + type + "'");
}

Instance load_instance(const std::filesystem::path& path) {
  try {
    return parse_instance(read_text_file(path));
  } catch (const input_error& e) {
    throw input_error(path.string() + ": " + e.what());
  }
}

std::string instance_to_json(const Instance& inst) {
  const Json j =
      std::visit([](const auto& x) { return instance_json(x); }, inst);
  return j.dump(2);
}

void save_instance(const Instance& inst, const std::filesystem::path& path) {
  write_text_file(path, instance_to_json(inst) + "\n");
}

std::string qubo_to_json(const QuboModel& q) {
  Json j;
  j["type"] = "qubo";
  j["num_bits"] = q.num_bits;
  j["linear"] = q.linear;
  Json quad = Json::array();
  for (const auto& [key, val] : q.quadratic)
    quad.push_back(Json::array({key.first, key.second, val}));
  j["quadratic"] = quad;
  j["offset"] = q.offset;
  j["var_names"] = q.var_names;
  j["structure"] = structure_name(q.structure);
  j["structure_n"] = q.structure_n;
  return j.dump(2);
}

QuboModel qubo_from_json(const std::string& json_text) {
  const Json j = parse_json(json_text, "qubo");
  if (!j.is_object())
    throw input_error("qubo: expected a JSON object");
  if (field(j, "type", "qubo") != "qubo")
    throw input_error("qubo: field 'type' must be \"qubo\"");

  QuboModel q;
  q.num_bits = static_cast<int>(integer(j, "num_bits", "qubo"));
  q.linear = double_vector(j, "linear", "qubo");
  if (static_cast<int>(q.linear.size()) != q.num_bits)
    throw input_error("qubo: field 'linear' length differs from num_bits");
  q.offset = number(j, "offset", "qubo");

  const Json& quad = field(j, "quadratic", "qubo");
  if (!quad.is_array())
    throw input_error("qubo: field 'quadratic' must be an array of triples");
  for (const Json& term : quad) {
    if (!term.is_array() || term.size() != 3 || !term[0].is_number_integer() ||
        !term[1].is_number_integer() || !term[2].is_number())
      throw input_error("qubo: field 'quadratic' must hold [i, j, value]");
    q.add_quadratic(term[0].get<int>(), term[1].get<int>(),
                    term[2].get<double>());
  }

  if (j.contains("var_names")) {
    const Json& names = j["var_names"];
    if (!names.is_array())
      throw input_error("qubo: field 'var_names' must be an array");
    for (const Json& n : names) {
      if (!n.is_string())
        throw input_error("qubo: field 'var_names' must hold strings");
      q.var_names.push_back(n.get<std::string>());
    }
    if (!q.var_names.empty() &&
        static_cast<int>(q.var_names.size()) != q.num_bits)
      throw input_error("qubo: field 'var_names' length differs from num_bits");
  }
  if (j.contains("structure")) {
    const Json& s = j["structure"];
    if (!s.is_string())
      throw input_error("qubo: field 'structure' must be a string");
    q.structure = structure_from_name(s.get<std::string>());
  }
  if (j.contains("structure_n"))
    q.structure_n = static_cast<int>(integer(j, "structure_n", "qubo"));
  return q;
}

std::string ising_to_json(const IsingModel& m) {
  Json j;
  j["type"] = "ising";
  j["num_spins"] = m.num_spins;
  j["h"] = m.h;
  Json couplings = Json::array();
  for (const auto& [key, val] : m.j)
    couplings.push_back(Json::array({key.first, key.second, val}));
  j["j"] = couplings;
  j["offset"] = m.offset;
  return j.dump(2);
}

IsingModel ising_from_json(const std::string& json_text) {
  const Json j = parse_json(json_text, "ising");
  if (!j.is_object())
    throw input_error("ising: expected a JSON object");
  if (field(j, "type", "ising") != "ising")
    throw input_error("ising: field 'type' must be \"ising\"");

  IsingModel m;
  m.num_spins = static_cast<int>(integer(j, "num_spins", "ising"));
  m.h = double_vector(j, "h", "ising");
  if (static_cast<int>(m.h.size()) != m.num_spins)
    throw input_error("ising: field 'h' length differs from num_spins");
  m.offset = number(j, "offset", "ising");

  const Json& couplings = field(j, "j", "ising");
  if (!couplings.is_array())
    throw input_error("ising: field 'j' must be an array of triples");
  for (const Json& term : couplings) {
    if (!term.is_array() || term.size() != 3 || !term[0].is_number_integer() ||
        !term[1].is_number_integer() || !term[2].is_number())
      throw input_error("ising: field 'j' must hold [i, j, value]");
    const int a = term[0].get<int>();
    const int b = term[1].get<int>();
    if (a == b) throw input_error("ising: coupling on a single spin");
    if (a < 0 || b < 0 || a >= m.num_spins || b >= m.num_spins)
      throw input_error("ising: coupling index out of range");
    const auto key = std::minmax(a, b);
    if (!m.j.emplace(std::pair<int, int>(key.first, key.second),
                     term[2].get<double>())
             .second)
      throw input_error("ising: duplicate coupling");
  }
  return m;
}

IsingModel load_ising(const std::filesystem::path& path) {
  const std::string text = read_text_file(path);
  const Json j = parse_json(text, "model");
  if (!j.is_object())
    throw input_error(path.string() + ": model: expected a JSON object");
  const Json& t = field(j, "type", "model");
  if (t == "ising") return ising_from_json(text);
  if (t == "qubo") return qubo_to_ising(qubo_from_json(text));
  throw input_error(path.string() + ": model: field 'type' must be \"qubo\" or \"ising\"");
}

std::string sample_set_to_csv(const SampleSet& s) {
  CsvTable t;
  t.header = {"bits", "energy", "occurrences"};
  t.rows.reserve(s.entries.size());
  for (const SampleEntry& e : s.entries)
    t.rows.push_back(
        {bits_to_string(e.bits), fmt_num(e.energy), fmt_int(e.occurrences)});
  return t.to_string();
}

std::string sample_set_to_json(const SampleSet& s) {
  Json j;
  j["sampler_id"] = s.sampler_id;
  j["seed"] = s.seed;
  j["total_reads"] = s.total_reads;
  Json entries = Json::array();
  for (const SampleEntry& e : s.entries) {
    Json row;
    row["bits"] = bits_to_string(e.bits);
    row["energy"] = e.energy;
    row["occurrences"] = e.occurrences;
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  return j.dump(2);
}

Schedule load_schedule(const std::filesystem::path& path) {
  std::istringstream in(read_text_file(path));
  std::vector<SchedulePoint> pts;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    std::istringstream row(line);
    std::vector<double> cols;
    double v = 0.0;
    while (row >> v) cols.push_back(v);
    row.clear();
    std::string junk;
    if (row >> junk)
      throw input_error(path.string() + ": line " + std::to_string(line_no) +
                        ": non-numeric column '" + junk + "'");
    if (cols.empty()) continue;
    if (cols.size() == 2)
      pts.push_back({cols[0], 1.0 - cols[1], cols[1]});
    else if (cols.size() == 3)
      pts.push_back({cols[0], cols[1], cols[2]});
    else
      throw input_error(path.string() + ": line " + std::to_string(line_no) +
                        ": need two or three numeric columns");
  }
  try {
    return Schedule(std::move(pts));
  } catch (const input_error& e) {
    throw input_error(path.string() + ": " + e.what());
  }
}

std::string fmt_num(double v) {
  if (v == 0.0) return "0";  // folds -0.0 into one spelling
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string fmt_int(std::int64_t v) { return std::to_string(v); }

std::string CsvTable::to_string() const {
  std::string out;
  const auto append_row = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  append_row(header);
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::logic_error("csv: row width differs from the header");
    append_row(row);
  }
  return out;
}

void CsvTable::save(const std::filesystem::path& path) const {
  write_text_file(path, to_string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot read file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return std::move(buf).str();
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write file: " + path.string());
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace hbb
