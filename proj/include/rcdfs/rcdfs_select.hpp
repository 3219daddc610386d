#pragma once

#include <cstddef>
#include <span>

#include "rcdfs/discrete_table.hpp"
#include "rcdfs/selection.hpp"

// Redundancy-complementariness dispersion based forward selection.
//
// A candidate F is scored against the selected set S by
//
//   J(F) = I(F;C) - phi * Pair_Cor(F;S),   Pair_Cor = sum over S of cor(F;Fs)
//   cor(F;Fs) = I(F;Fs) - I(F;Fs|C)
//   phi = 1 + sigma if Pair_Cor >= 0, else 1 - sigma
//
// where sigma is the population standard deviation of the cor values.
// Positive cor marks redundancy, negative cor marks complementariness.
namespace rcdfs {

// Per-candidate accumulators for the incremental scorer.
struct CandidateState {
    double relevance = 0.0;
    double pair_cor = 0.0;    // running sum of cor
    double sum_cor_sq = 0.0;  // running sum of cor^2
};

// I(F;Fs) - I(F;Fs|C); throws InputError when f == fs.
double pairwise_cor(const DiscreteTable& table, std::size_t f, std::size_t fs);

// Population standard deviation (divisor n); 0 for fewer than two values.
double dispersion_sigma(std::span<const double> cor_values);

// sigma from the running sums: sqrt(max(0, (P - Q^2/n) / n)).
double dispersion_sigma(double sum_cor, double sum_cor_sq, std::size_t n);

double phi(double pair_cor, double sigma);

double score(double relevance, double pair_cor, double sigma);

// Recomputes every cor against the full selected set on each iteration.
SelectionTrace select_reference(const DiscreteTable& table, std::size_t delta,
                                bool verbose = false);

// Updates the accumulators with the newest pick only: O(delta * |F|) cor evaluations.
SelectionTrace select_fast(const DiscreteTable& table, std::size_t delta, bool verbose = false);

}  // namespace rcdfs
