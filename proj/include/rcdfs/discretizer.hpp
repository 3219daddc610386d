#pragma once

#include <span>
#include <string>
#include <vector>

#include "rcdfs/discrete_table.hpp"

// Supervised entropy-based discretisation with the minimum description
// length stopping rule.
namespace rcdfs::mdl {

struct FeatureCuts {
    std::string name;
    std::vector<double> cuts;  // strictly increasing

    Code arity() const { return static_cast<Code>(cuts.size() + 1); }
    friend bool operator==(const FeatureCuts&, const FeatureCuts&) = default;
};

struct DiscretizationModel {
    std::vector<FeatureCuts> features;

    const FeatureCuts* find(const std::string& name) const;
    friend bool operator==(const DiscretizationModel&, const DiscretizationModel&) = default;
};

// Recursively splits at the class-boundary point of minimum partition
// entropy, accepting a split only when its gain beats the MDL threshold.
// Cuts sit at midpoints between adjacent distinct values.
std::vector<double> fit_cuts(std::span<const double> values, std::span<const Code> labels);

// Code = number of cut points <= value.
Code apply_cuts(std::span<const double> cuts, double value);
std::vector<Code> apply_cuts(std::span<const double> cuts, std::span<const double> values);

}  // namespace rcdfs::mdl
