#pragma once

#include <cstddef>
#include <vector>

#include "rcdfs/discrete_table.hpp"
#include "rcdfs/selection.hpp"

namespace rcdfs {

// Top-delta features by I(F;C).
SelectionTrace mim_rank(const DiscreteTable& table, std::size_t delta, bool verbose = false);

// Greedy I(F;C) - mean over S of I(F;Fs).
SelectionTrace mrmr_select(const DiscreteTable& table, std::size_t delta, bool verbose = false);

// Greedy min over S of I(F;C|Fs); the first pick uses I(F;C).
SelectionTrace cmim_select(const DiscreteTable& table, std::size_t delta, bool verbose = false);

// Fast correlation-based filter. Output size is determined by the data: a
// feature F2 is removed by a higher-ranked survivor F1 when
// SU(F1;F2) >= SU(F2;C). Features with SU(F;C) <= gamma are dropped first.
SelectionTrace fcbf_select(const DiscreteTable& table, double gamma);

// ReliefF on discrete codes (diff = 0 when codes match, else 1). Samples
// min(sample, n_rows) distinct rows with the seeded generator.
std::vector<double> relieff_weights(const DiscreteTable& table, std::size_t neighbors,
                                    std::size_t sample, std::uint64_t seed);
SelectionTrace relieff_rank(const DiscreteTable& table, const MethodConfig& config);

// Dispatches on config.method. FCBF ignores delta.
SelectionTrace run_method(const DiscreteTable& table, const MethodConfig& config);

}  // namespace rcdfs
