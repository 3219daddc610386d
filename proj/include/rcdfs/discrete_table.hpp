#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rcdfs {

using Code = std::uint32_t;

// Names one column of a DiscreteTable: either a feature by index or the class.
class Var {
public:
    static constexpr Var feature(std::size_t index) { return Var(index, false); }
    static constexpr Var label() { return Var(0, true); }

    constexpr bool is_label() const { return is_label_; }
    constexpr std::size_t index() const { return index_; }

    // Total order used to canonicalise argument order before counting.
    constexpr std::size_t order_key() const { return is_label_ ? ~std::size_t{0} : index_; }

    friend constexpr bool operator==(Var, Var) = default;

private:
    constexpr Var(std::size_t index, bool is_label) : index_(index), is_label_(is_label) {}
    std::size_t index_;
    bool is_label_;
};

// Integer-coded instances x features plus a class column. Column-major; all
// information measures are computed over this table.
class DiscreteTable {
public:
    DiscreteTable(std::vector<std::vector<Code>> columns, std::vector<Code> arities,
                  std::vector<Code> labels, Code class_arity,
                  std::vector<std::string> feature_names = {});

    // Arities inferred as max code + 1 (class arity likewise).
    static DiscreteTable from_columns(std::vector<std::vector<Code>> columns,
                                      std::vector<Code> labels);

    std::size_t n_rows() const { return labels_.size(); }
    std::size_t n_features() const { return columns_.size(); }

    std::span<const Code> column(std::size_t feature) const;
    Code arity(std::size_t feature) const;
    std::span<const Code> labels() const { return labels_; }
    Code class_arity() const { return class_arity_; }

    std::span<const Code> values(Var v) const;
    Code arity(Var v) const;
    void check(Var v) const;

    const std::vector<std::string>& feature_names() const { return names_; }
    const std::string& feature_name(std::size_t feature) const;

    DiscreteTable select_rows(std::span<const std::size_t> rows) const;
    DiscreteTable select_features(std::span<const std::size_t> features) const;

private:
    std::vector<std::vector<Code>> columns_;
    std::vector<Code> arities_;
    std::vector<Code> labels_;
    Code class_arity_;
    std::vector<std::string> names_;
};

}  // namespace rcdfs
