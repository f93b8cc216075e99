#include "hbb/qubo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace hbb {

namespace {

std::pair<int, int> ordered_key(int i, int j) {
  return i < j ? std::pair<int, int>{i, j} : std::pair<int, int>{j, i};
}

void check_pair(int i, int j, int num_bits) {
  if (i < 0 || j < 0 || i >= num_bits || j >= num_bits)
    throw input_error("quadratic term index out of range");
  if (i == j)
    throw input_error("diagonal quadratic term; fold it into linear (x^2 = x)");
}

}  // namespace

void QuboModel::add_quadratic(int i, int j, double value) {
  check_pair(i, j, num_bits);
  const auto [ins, fresh] = quadratic.emplace(ordered_key(i, j), value);
  if (!fresh)
    throw input_error("duplicate quadratic term (" + std::to_string(i) + "," +
                      std::to_string(j) + ")");
}

void QuboModel::accumulate_quadratic(int i, int j, double value) {
  check_pair(i, j, num_bits);
  quadratic[ordered_key(i, j)] += value;
}

int slack_bit_count(double bound) {
  if (!(bound >= 0.0))
    throw input_error("slack_bit_count: bound must be nonnegative");
  if (bound >= 9.0e15)
    throw input_error("slack_bit_count: bound too large for binary slack");
  const double rounded = std::round(bound);
  if (std::abs(bound - rounded) <= 1e-9)
    // bits covering integers 0..bound
    return std::bit_width(static_cast<std::uint64_t>(rounded));
  return static_cast<int>(std::ceil(std::log2(bound + 1.0)));
}

QuboModel blop_to_qubo(const BlopInstance& inst,
                       const std::vector<double>& lambdas) {
  inst.validate();
  const int n = inst.num_vars();
  const int m = inst.num_rows();
  if (static_cast<int>(lambdas.size()) != m)
    throw input_error("blop_to_qubo: need one lambda per constraint row");
  for (double lam : lambdas)
    if (!(lam > 0.0)) throw input_error("blop_to_qubo: lambda must be positive");

  std::vector<int> slack_bits(m, 0);
  int total_slack = 0;
  for (int r = 0; r < m; ++r)
    if (inst.sense[r] == RowSense::kLessEqual) {
      if (inst.b[r] < 0.0)
        throw input_error(
            "blop_to_qubo: negative bound on a slack-converted row");
      slack_bits[r] = slack_bit_count(inst.b[r]);
      total_slack += slack_bits[r];
    }

  QuboModel q;
  q.num_bits = n + total_slack;
  q.linear = inst.c;
  q.linear.resize(q.num_bits, 0.0);
  q.var_names.reserve(q.num_bits);
  for (int i = 0; i < n; ++i) q.var_names.push_back("x" + std::to_string(i));

  // Combined coefficient list per row: originals first, then that row's
  // slacks with weights 1, 2, 4, ... Slack indices grow row by row.
  int slack_base = n;
  for (int r = 0; r < m; ++r) {
    std::vector<std::pair<int, double>> terms;
    for (int i = 0; i < n; ++i)
      if (inst.a[r][i] != 0.0) terms.emplace_back(i, inst.a[r][i]);
    for (int t = 0; t < slack_bits[r]; ++t) {
      terms.emplace_back(slack_base + t, std::ldexp(1.0, t));
      q.var_names.push_back("s" + std::to_string(r) + "." + std::to_string(t));
    }
    slack_base += slack_bits[r];

    // lambda * (b - sum g_k z_k)^2 expanded with z^2 = z.
    const double lam = lambdas[r];
    const double b = inst.b[r];
    q.offset += lam * b * b;
    for (const auto& [k, g] : terms) q.linear[k] += lam * (g * g - 2.0 * b * g);
    for (std::size_t p = 0; p < terms.size(); ++p)
      for (std::size_t s = p + 1; s < terms.size(); ++s)
        q.accumulate_quadratic(terms[p].first, terms[s].first,
                               2.0 * lam * terms[p].second * terms[s].second);
  }
  return q;
}

QuboModel kp_qubo(const KpInstance& inst, std::optional<double> lambda) {
  inst.validate();
  const double lam =
      lambda.value_or(*std::max_element(inst.values.begin(),
                                        inst.values.end()) + 1.0);
  if (!(lam > 0.0)) throw input_error("kp_qubo: lambda must be positive");
  QuboModel q = blop_to_qubo(kp_to_blop(inst), {lam});
  q.structure = QuboStructure::kKnapsack;
  return q;
}

int kp_qubo_bits(const KpInstance& inst) {
  inst.validate();
  return inst.num_items() + slack_bit_count(inst.capacity);
}

QuboModel tsp_qubo(const TspInstance& inst, std::optional<double> lambda) {
  inst.validate();
  const int n = inst.num_cities();
  double max_cost = 0.0;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v) max_cost = std::max(max_cost, inst.cost[u][v]);
  const double lam = lambda.value_or(max_cost + 1.0);
  if (!(lam > max_cost))
    throw input_error(
        "tsp_qubo: lambda must exceed the largest edge cost, otherwise "
        "invalid assignments can undercut the optimal tour");

  QuboModel q;
  q.num_bits = n * n;
  q.linear.assign(q.num_bits, 0.0);
  q.var_names.reserve(q.num_bits);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      q.var_names.push_back("x" + std::to_string(i) + "_" + std::to_string(k));
  const auto bit = [n](int city, int step) { return city * n + step; };

  // Travel cost between consecutive steps, wrapping the last step back to
  // the first.
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || inst.cost[i][j] == 0.0) continue;
      for (int k = 0; k < n; ++k)
        q.accumulate_quadratic(bit(i, k), bit(j, (k + 1) % n),
                               inst.cost[i][j]);
    }

  // One-hot penalties: each city takes exactly one step, each step hosts
  // exactly one city. (1 - sum)^2 per constraint.
  const auto one_hot = [&](const std::vector<int>& group) {
    q.offset += lam;
    for (int g : group) q.linear[g] -= lam;
    for (std::size_t p = 0; p < group.size(); ++p)
      for (std::size_t s = p + 1; s < group.size(); ++s)
        q.accumulate_quadratic(group[p], group[s], 2.0 * lam);
  };
  std::vector<int> group(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) group[k] = bit(i, k);
    one_hot(group);
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) group[i] = bit(i, k);
    one_hot(group);
  }

  q.structure = QuboStructure::kTspPosition;
  q.structure_n = n;
  return q;
}

IsingModel qubo_to_ising(const QuboModel& q) {
  IsingModel m;
  m.num_spins = q.num_bits;
  m.h = q.linear;
  m.offset = q.offset;
  for (double l : q.linear) m.offset += 0.5 * l;
  for (const auto& [key, val] : q.quadratic) {
    m.j[key] = val;
    m.h[key.first] += 0.5 * val;
    m.h[key.second] += 0.5 * val;
    m.offset += 0.25 * val;
  }
  return m;
}

double eval_qubo(const QuboModel& q, const BitVec& bits) {
  if (static_cast<int>(bits.size()) != q.num_bits)
    throw input_error("eval_qubo: bitstring length does not match model");
  double e = q.offset;
  for (int i = 0; i < q.num_bits; ++i)
    if (bits[i]) e += q.linear[i];
  for (const auto& [key, val] : q.quadratic)
    if (bits[key.first] && bits[key.second]) e += val;
  return e;
}

double eval_ising(const IsingModel& m, const std::vector<double>& spins) {
  if (static_cast<int>(spins.size()) != m.num_spins)
    throw input_error("eval_ising: spin vector length does not match model");
  double e = m.offset;
  for (int i = 0; i < m.num_spins; ++i) e += m.h[i] * spins[i];
  for (const auto& [key, val] : m.j)
    e += val * spins[key.first] * spins[key.second];
  return e;
}

std::vector<double> spins_from_bits(const BitVec& bits) {
  std::vector<double> s(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) s[i] = bits[i] ? 0.5 : -0.5;
  return s;
}

}  // namespace hbb
