#include "rcdfs/discrete_table.hpp"

#include <algorithm>

#include "rcdfs/error.hpp"

namespace rcdfs {

namespace {

void validate_codes(std::span<const Code> codes, Code arity, const std::string& what) {
    for (Code c : codes) {
        if (c >= arity) {
            throw InputError(what + ": code " + std::to_string(c) + " outside [0, " +
                             std::to_string(arity) + ")");
        }
    }
}

Code inferred_arity(std::span<const Code> codes) {
    Code top = 0;
    for (Code c : codes) top = std::max(top, c);
    return top + 1;
}

}  // namespace

DiscreteTable::DiscreteTable(std::vector<std::vector<Code>> columns, std::vector<Code> arities,
                             std::vector<Code> labels, Code class_arity,
                             std::vector<std::string> feature_names)
    : columns_(std::move(columns)),
      arities_(std::move(arities)),
      labels_(std::move(labels)),
      class_arity_(class_arity),
      names_(std::move(feature_names)) {
    if (labels_.empty()) throw InputError("table needs at least one row");
    if (arities_.size() != columns_.size()) {
        throw InputError("arity count does not match column count");
    }
    if (class_arity_ == 0) throw InputError("class arity must be at least 1");
    validate_codes(labels_, class_arity_, "class column");
    for (std::size_t j = 0; j < columns_.size(); ++j) {
        if (columns_[j].size() != labels_.size()) {
            throw InputError("column " + std::to_string(j) + " has " +
                             std::to_string(columns_[j].size()) + " rows, expected " +
                             std::to_string(labels_.size()));
        }
        if (arities_[j] == 0) throw InputError("column " + std::to_string(j) + " has arity 0");
        validate_codes(columns_[j], arities_[j], "column " + std::to_string(j));
    }
    if (names_.empty()) {
        names_.reserve(columns_.size());
        for (std::size_t j = 0; j < columns_.size(); ++j) names_.push_back("f" + std::to_string(j));
    } else if (names_.size() != columns_.size()) {
        throw InputError("feature name count does not match column count");
    }
}

DiscreteTable DiscreteTable::from_columns(std::vector<std::vector<Code>> columns,
                                          std::vector<Code> labels) {
    std::vector<Code> arities;
    arities.reserve(columns.size());
    for (const auto& col : columns) arities.push_back(inferred_arity(col));
    const Code class_arity = inferred_arity(labels);
    return DiscreteTable(std::move(columns), std::move(arities), std::move(labels), class_arity);
}

std::span<const Code> DiscreteTable::column(std::size_t feature) const {
    if (feature >= columns_.size()) {
        throw InputError("feature index " + std::to_string(feature) + " out of range");
    }
    return columns_[feature];
}

Code DiscreteTable::arity(std::size_t feature) const {
    if (feature >= arities_.size()) {
        throw InputError("feature index " + std::to_string(feature) + " out of range");
    }
    return arities_[feature];
}

std::span<const Code> DiscreteTable::values(Var v) const {
    return v.is_label() ? labels() : column(v.index());
}

Code DiscreteTable::arity(Var v) const {
    return v.is_label() ? class_arity_ : arity(v.index());
}

void DiscreteTable::check(Var v) const {
    if (!v.is_label() && v.index() >= columns_.size()) {
        throw InputError("feature index " + std::to_string(v.index()) + " out of range");
    }
}

const std::string& DiscreteTable::feature_name(std::size_t feature) const {
    if (feature >= names_.size()) {
        throw InputError("feature index " + std::to_string(feature) + " out of range");
    }
    return names_[feature];
}

DiscreteTable DiscreteTable::select_rows(std::span<const std::size_t> rows) const {
    if (rows.empty()) throw InputError("row selection is empty");
    std::vector<std::vector<Code>> cols(columns_.size());
    std::vector<Code> labels;
    labels.reserve(rows.size());
    for (std::size_t r : rows) {
        if (r >= labels_.size()) throw InputError("row index " + std::to_string(r) + " out of range");
        labels.push_back(labels_[r]);
    }
    for (std::size_t j = 0; j < columns_.size(); ++j) {
        cols[j].reserve(rows.size());
        for (std::size_t r : rows) cols[j].push_back(columns_[j][r]);
    }
    return DiscreteTable(std::move(cols), arities_, std::move(labels), class_arity_, names_);
}

DiscreteTable DiscreteTable::select_features(std::span<const std::size_t> features) const {
    std::vector<std::vector<Code>> cols;
    std::vector<Code> arities;
    std::vector<std::string> names;
    for (std::size_t f : features) {
        cols.push_back(std::vector<Code>(column(f).begin(), column(f).end()));
        arities.push_back(arities_[f]);
        names.push_back(names_[f]);
    }
    return DiscreteTable(std::move(cols), std::move(arities), labels_, class_arity_,
                         std::move(names));
}

}  // namespace rcdfs
