#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hbb {

// Feasibility comparisons treat residuals within kFeasTol as satisfied.
inline constexpr double kFeasTol = 1e-9;

// Malformed input: bad file, inconsistent instance, invalid parameter.
class input_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Request exceeds a size cap or qubit budget.
class budget_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using BitVec = std::vector<std::uint8_t>;

std::string bits_to_string(const BitVec& bits);
BitVec bits_from_string(const std::string& text);

// Deterministic child-seed derivation (SplitMix64 over base + index).
// Children are independent of evaluation order, so concurrent and
// sequential schedules produce identical streams.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace hbb
