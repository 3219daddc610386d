#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "rcdfs/discrete_table.hpp"

// Plug-in (maximum-likelihood) information measures over discrete columns.
// All quantities are in bits.
namespace rcdfs::info {

// Dense joint counts over one to three variables. The first variable varies
// fastest in `cells`.
struct ContingencyCounts {
    std::vector<std::size_t> dims;
    std::vector<std::uint64_t> cells;
    std::uint64_t total = 0;

    std::uint64_t at(std::initializer_list<std::size_t> index) const;
};

ContingencyCounts count(const DiscreteTable& table, std::span<const Var> vars);
ContingencyCounts count(const DiscreteTable& table, std::initializer_list<Var> vars);

// Entropy of the (joint) distribution held in `counts`; throws
// EmptyDistributionError when total is zero.
double entropy(const ContingencyCounts& counts);

double entropy(const DiscreteTable& table, Var x);

double mutual_information(const DiscreteTable& table, Var x, Var y);

// I(X;Y|Z). Selectors must be pairwise distinct.
double conditional_mutual_information(const DiscreteTable& table, Var x, Var y, Var z);

// 2 I(X;Y) / (H(X) + H(Y)), defined as 0 when both entropies vanish.
double symmetrical_uncertainty(const DiscreteTable& table, Var x, Var y);

// Values in (-kNegativeSlack, 0) are rounding noise and are returned as 0.
inline constexpr double kNegativeSlack = 1e-12;

}  // namespace rcdfs::info
