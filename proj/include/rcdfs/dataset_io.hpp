#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rcdfs/discrete_table.hpp"
#include "rcdfs/discretizer.hpp"

namespace rcdfs::io {

enum class ColumnKind { numeric, nominal };
std::string column_kind_name(ColumnKind k);

// One column of a loaded dataset. Numeric columns fill `numbers`; nominal
// columns fill `categories` (code order) and `codes`. Missing cells are
// empty optionals.
struct RawColumn {
    std::string name;
    ColumnKind kind = ColumnKind::nominal;
    std::vector<std::optional<double>> numbers;
    std::vector<std::string> categories;
    std::vector<std::optional<Code>> codes;

    std::size_t size() const { return kind == ColumnKind::numeric ? numbers.size() : codes.size(); }
    bool is_missing(std::size_t row) const;
    friend bool operator==(const RawColumn&, const RawColumn&) = default;
};

struct RawDataset {
    std::vector<RawColumn> features;
    RawColumn label;  // always nominal, never missing

    std::size_t n_rows() const { return label.codes.size(); }
    friend bool operator==(const RawDataset&, const RawDataset&) = default;
};

enum class Format { csv, arff };
Format parse_format(const std::string& name);
// From the file extension; csv unless it ends in ".arff".
Format guess_format(const std::string& path);

// `class_designator` is a column name or a 0-based index; empty means the
// last column. Cells "?" and "" are missing. A column is numeric when every
// non-missing cell parses as a finite real, otherwise nominal with codes in
// order of first appearance.
RawDataset load_csv(const std::string& path, const std::string& class_designator = "");
RawDataset parse_csv(const std::string& text, const std::string& class_designator = "");

// Dense ARFF with numeric and nominal attributes. Nominal codes follow the
// declared value order. The class is the last attribute unless designated.
RawDataset load_arff(const std::string& path, const std::string& class_designator = "");
RawDataset parse_arff(const std::string& text, const std::string& class_designator = "");

RawDataset load(const std::string& path, Format format, const std::string& class_designator = "");

// Features in order followed by the class column; "?" for missing cells.
std::string to_csv(const RawDataset& data);
void write_csv(const std::string& path, const RawDataset& data);

struct ColumnProvenance {
    std::string name;
    ColumnKind kind = ColumnKind::nominal;
    Code arity = 0;
    std::size_t missing = 0;
    std::optional<Code> imputed_code;  // modal code used for missing cells
    bool discretized = false;
};

struct Prepared {
    DiscreteTable table;
    mdl::DiscretizationModel model;
    std::vector<ColumnProvenance> provenance;
    std::vector<std::string> class_names;
};

struct PrepareOptions {
    // When false, numeric columns are coded by the rank of each distinct value.
    bool discretize = true;
};

// Numeric columns are discretized with MDL cuts fitted on the non-missing
// cells, or with the cuts in `model` when given. Missing cells take the
// column's modal code (lowest code on ties).
Prepared prepare(const RawDataset& raw, const std::optional<mdl::DiscretizationModel>& model = {},
                 const PrepareOptions& options = {});

// Nominal dataset with categories "v0", "v1", ... and classes "c0", "c1", ...
RawDataset to_raw(const DiscreteTable& table);

}  // namespace rcdfs::io
