#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "rcdfs/discrete_table.hpp"

// Synthetic tables with planted structure.
namespace rcdfs::synth {

// C = F1 xor F2 over a balanced design (features 0 and 1), plus `noise`
// independent uniform binary features drawn from `seed`.
DiscreteTable xor_table(std::uint64_t seed, std::size_t rows = 256, std::size_t noise = 8);

// 400 rows. Feature 0 nearly determines the class, feature 1 is an exact
// copy of feature 0, and feature 2 is independent of feature 0 and carries a
// little extra class information. Fully deterministic.
DiscreteTable duplicate_table();

// Ternary X0, X1, X2 (features 0-2) with class [3*X0 + 2*X1 + X2 >= 3];
// features 3-7 are copies of X0 with 10% of cells changed to another value;
// the rest are uniform ternary noise.
DiscreteTable planted_table(std::uint64_t seed, std::size_t rows = 500, std::size_t features = 30);

// Dispatch by name: "xor", "duplicate" or "planted".
DiscreteTable by_name(const std::string& name, std::uint64_t seed);

}  // namespace rcdfs::synth
