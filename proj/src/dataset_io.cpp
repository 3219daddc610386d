#include "rcdfs/dataset_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "rcdfs/error.hpp"

namespace rcdfs::io {

namespace {

struct Field {
    std::string text;
    bool quoted = false;
};

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::string lower(std::string s) {
    for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::optional<double> parse_real(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

bool is_missing_cell(const Field& f) { return !f.quoted && (f.text.empty() || f.text == "?"); }

// Splits one logical CSV record starting at `pos`; quoted fields may span
// lines. Returns false at end of input.
bool next_csv_record(const std::string& text, std::size_t& pos, std::size_t& line,
                     std::vector<Field>& out) {
    out.clear();
    // skip blank lines
    for (;;) {
        if (pos >= text.size()) return false;
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        if (!trim(std::string_view(text).substr(pos, eol - pos)).empty()) break;
        pos = eol + 1;
        ++line;
    }
    Field cur;
    bool in_quotes = false;
    bool after_quote = false;
    std::string raw;
    const auto finish = [&] {
        if (cur.quoted) {
            cur.text = raw;
        } else {
            cur.text = trim(raw);
        }
        out.push_back(std::move(cur));
        cur = Field{};
        raw.clear();
        after_quote = false;
    };
    while (pos < text.size()) {
        const char c = text[pos++];
        if (in_quotes) {
            if (c == '"') {
                if (pos < text.size() && text[pos] == '"') {
                    raw += '"';
                    ++pos;
                } else {
                    in_quotes = false;
                    after_quote = true;
                }
            } else {
                if (c == '\n') ++line;
                raw += c;
            }
            continue;
        }
        if (c == ',') {
            finish();
        } else if (c == '\n') {
            ++line;
            finish();
            return true;
        } else if (c == '"' && !cur.quoted && trim(raw).empty()) {
            cur.quoted = true;
            in_quotes = true;
            raw.clear();
        } else if (after_quote) {
            if (c != ' ' && c != '\t' && c != '\r') {
                throw InputError("line " + std::to_string(line) + ": text after closing quote");
            }
        } else {
            raw += c;
        }
    }
    if (in_quotes) throw InputError("line " + std::to_string(line) + ": unterminated quoted field");
    finish();
    return true;
}

std::size_t resolve_class(const std::vector<std::string>& names, const std::string& designator) {
    if (designator.empty()) return names.size() - 1;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == designator) return i;
    }
    if (std::all_of(designator.begin(), designator.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        std::size_t idx = 0;
        const auto [ptr, ec] =
            std::from_chars(designator.data(), designator.data() + designator.size(), idx);
        if (ec == std::errc() && idx < names.size()) return idx;
    }
    throw InputError("unknown class column '" + designator + "'");
}

void check_unique_names(const std::vector<std::string>& names) {
    std::set<std::string> seen;
    for (const auto& n : names) {
        if (!seen.insert(n).second) throw InputError("duplicate column name '" + n + "'");
    }
}

// Nominal coding in order of first appearance.
RawColumn nominal_column(std::string name, const std::vector<const Field*>& cells) {
    RawColumn col;
    col.name = std::move(name);
    col.kind = ColumnKind::nominal;
    std::unordered_map<std::string, Code> index;
    for (const Field* f : cells) {
        if (is_missing_cell(*f)) {
            col.codes.emplace_back();
            continue;
        }
        auto [it, inserted] = index.emplace(f->text, static_cast<Code>(col.categories.size()));
        if (inserted) col.categories.push_back(f->text);
        col.codes.emplace_back(it->second);
    }
    return col;
}

RawColumn infer_column(std::string name, const std::vector<const Field*>& cells) {
    RawColumn col;
    col.name = name;
    col.kind = ColumnKind::numeric;
    for (const Field* f : cells) {
        if (is_missing_cell(*f)) {
            col.numbers.emplace_back();
            continue;
        }
        const auto v = parse_real(f->text);
        if (!v) return nominal_column(std::move(name), cells);
        col.numbers.emplace_back(*v);
    }
    return col;
}

void require_label(const RawColumn& label) {
    for (std::size_t r = 0; r < label.codes.size(); ++r) {
        if (!label.codes[r]) {
            throw InputError("row " + std::to_string(r + 1) + ": missing class value in column '" +
                             label.name + "'");
        }
    }
}

// Splits an ARFF line on commas outside ' or " quotes.
std::vector<Field> split_arff(std::string_view s, std::size_t line) {
    std::vector<Field> out;
    Field cur;
    std::string raw;
    char quote = 0;
    bool after_quote = false;
    const auto finish = [&] {
        cur.text = cur.quoted ? raw : trim(raw);
        out.push_back(std::move(cur));
        cur = Field{};
        raw.clear();
        after_quote = false;
    };
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (quote) {
            if (c == '\\' && i + 1 < s.size()) {
                raw += s[++i];
            } else if (c == quote) {
                quote = 0;
                after_quote = true;
            } else {
                raw += c;
            }
        } else if (c == ',') {
            finish();
        } else if ((c == '\'' || c == '"') && !cur.quoted && trim(raw).empty()) {
            cur.quoted = true;
            quote = c;
            raw.clear();
        } else if (after_quote) {
            if (c != ' ' && c != '\t' && c != '\r') {
                throw InputError("line " + std::to_string(line) + ": text after closing quote");
            }
        } else {
            raw += c;
        }
    }
    if (quote) throw InputError("line " + std::to_string(line) + ": unterminated quote");
    finish();
    return out;
}

// Reads a possibly quoted token from the front of `s`.
std::string take_token(std::string_view& s, std::size_t line) {
    std::size_t i = s.find_first_not_of(" \t");
    if (i == std::string_view::npos) throw InputError("line " + std::to_string(line) + ": missing token");
    s.remove_prefix(i);
    std::string tok;
    if (s.front() == '\'' || s.front() == '"') {
        const char q = s.front();
        std::size_t j = 1;
        for (; j < s.size() && s[j] != q; ++j) {
            if (s[j] == '\\' && j + 1 < s.size()) ++j;
            tok += s[j];
        }
        if (j >= s.size()) throw InputError("line " + std::to_string(line) + ": unterminated quote");
        s.remove_prefix(j + 1);
    } else {
        const std::size_t j = s.find_first_of(" \t{");
        tok = std::string(s.substr(0, j));
        s.remove_prefix(j == std::string_view::npos ? s.size() : j);
    }
    return tok;
}

struct ArffAttribute {
    std::string name;
    ColumnKind kind = ColumnKind::numeric;
    std::vector<std::string> values;
};

std::string format_real(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    (void)ec;
    return std::string(buf, ptr);
}

std::string csv_quote(const std::string& s, bool force) {
    const bool needs = force || s.empty() || s == "?" ||
                       s.find_first_of(",\"\n\r") != std::string::npos || s.front() == ' ' ||
                       s.front() == '\t' || s.back() == ' ' || s.back() == '\t';
    if (!needs) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

Code modal_code(const std::vector<std::optional<Code>>& codes, Code arity) {
    std::vector<std::size_t> counts(arity, 0);
    for (const auto& c : codes) {
        if (c) ++counts[*c];
    }
    return static_cast<Code>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

}  // namespace

std::string column_kind_name(ColumnKind k) { return k == ColumnKind::numeric ? "numeric" : "nominal"; }

bool RawColumn::is_missing(std::size_t row) const {
    return kind == ColumnKind::numeric ? !numbers.at(row).has_value() : !codes.at(row).has_value();
}

Format parse_format(const std::string& name) {
    const auto n = lower(name);
    if (n == "csv") return Format::csv;
    if (n == "arff") return Format::arff;
    throw InputError("unknown format '" + name + "' (expected csv or arff)");
}

Format guess_format(const std::string& path) {
    const auto p = lower(path);
    return p.size() >= 5 && p.ends_with(".arff") ? Format::arff : Format::csv;
}

RawDataset parse_csv(const std::string& text, const std::string& class_designator) {
    std::size_t pos = 0;
    std::size_t line = 1;
    std::vector<Field> header;
    if (!next_csv_record(text, pos, line, header)) throw InputError("empty file");
    std::vector<std::string> names;
    for (auto& f : header) names.push_back(f.text);
    if (names.size() < 2) throw InputError("need at least one feature column and a class column");
    check_unique_names(names);
    const std::size_t cls = resolve_class(names, class_designator);

    std::vector<std::vector<Field>> rows;
    std::vector<Field> rec;
    for (;;) {
        const std::size_t start_line = line;
        if (!next_csv_record(text, pos, line, rec)) break;
        if (rec.size() != names.size()) {
            throw InputError("line " + std::to_string(start_line) + ": expected " +
                             std::to_string(names.size()) + " fields, found " +
                             std::to_string(rec.size()));
        }
        rows.push_back(rec);
    }
    if (rows.empty()) throw InputError("no data rows");

    RawDataset data;
    std::vector<const Field*> cells(rows.size());
    for (std::size_t c = 0; c < names.size(); ++c) {
        for (std::size_t r = 0; r < rows.size(); ++r) cells[r] = &rows[r][c];
        if (c == cls) {
            data.label = nominal_column(names[c], cells);
        } else {
            data.features.push_back(infer_column(names[c], cells));
        }
    }
    require_label(data.label);
    return data;
}

RawDataset load_csv(const std::string& path, const std::string& class_designator) {
    return parse_csv(read_file(path), class_designator);
}

RawDataset parse_arff(const std::string& text, const std::string& class_designator) {
    std::istringstream in(text);
    std::string raw_line;
    std::size_t line = 0;
    std::vector<ArffAttribute> attrs;
    bool in_data = false;
    std::vector<std::vector<Field>> rows;
    while (std::getline(in, raw_line)) {
        ++line;
        const std::string s = trim(raw_line);
        if (s.empty() || s.front() == '%') continue;
        if (!in_data) {
            if (s.front() != '@') {
                throw InputError("line " + std::to_string(line) + ": expected a declaration");
            }
            std::string_view rest(s);
            const std::string keyword = lower(take_token(rest, line));
            if (keyword == "@relation") continue;
            if (keyword == "@data") {
                in_data = true;
                continue;
            }
            if (keyword != "@attribute") {
                throw InputError("line " + std::to_string(line) + ": unsupported declaration '" +
                                 keyword + "'");
            }
            ArffAttribute attr;
            attr.name = take_token(rest, line);
            const std::string type = trim(rest);
            if (type.empty()) {
                throw InputError("line " + std::to_string(line) + ": attribute '" + attr.name +
                                 "' has no type");
            }
            if (type.front() == '{') {
                if (type.back() != '}') {
                    throw InputError("line " + std::to_string(line) + ": unterminated value list");
                }
                attr.kind = ColumnKind::nominal;
                for (auto& f : split_arff(std::string_view(type).substr(1, type.size() - 2), line)) {
                    if (f.text.empty() && !f.quoted) {
                        throw InputError("line " + std::to_string(line) + ": empty nominal value");
                    }
                    if (std::find(attr.values.begin(), attr.values.end(), f.text) != attr.values.end()) {
                        throw InputError("line " + std::to_string(line) + ": duplicate nominal value '" +
                                         f.text + "'");
                    }
                    attr.values.push_back(f.text);
                }
            } else {
                const std::string t = lower(type);
                if (t == "numeric" || t == "real" || t == "integer") {
                    attr.kind = ColumnKind::numeric;
                } else {
                    throw InputError("line " + std::to_string(line) + ": unsupported attribute type '" +
                                     type + "'");
                }
            }
            attrs.push_back(std::move(attr));
            continue;
        }
        if (s.front() == '{') throw InputError("sparse ARFF format is not supported");
        auto fields = split_arff(s, line);
        if (fields.size() != attrs.size()) {
            throw InputError("line " + std::to_string(line) + ": expected " +
                             std::to_string(attrs.size()) + " values, found " +
                             std::to_string(fields.size()));
        }
        rows.push_back(std::move(fields));
    }
    if (attrs.empty()) throw InputError("no attribute declarations");
    if (!in_data) throw InputError("missing @data section");
    if (rows.empty()) throw InputError("no data rows");
    if (attrs.size() < 2) throw InputError("need at least one feature attribute and a class attribute");

    std::vector<std::string> names;
    for (const auto& a : attrs) names.push_back(a.name);
    check_unique_names(names);
    const std::size_t cls = resolve_class(names, class_designator);
    if (attrs[cls].kind != ColumnKind::nominal) {
        throw InputError("class attribute '" + attrs[cls].name + "' must be nominal");
    }

    RawDataset data;
    for (std::size_t c = 0; c < attrs.size(); ++c) {
        const auto& a = attrs[c];
        RawColumn col;
        col.name = a.name;
        col.kind = a.kind;
        col.categories = a.values;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            const Field& f = rows[r][c];
            const bool missing = !f.quoted && (f.text == "?" || f.text.empty());
            if (a.kind == ColumnKind::numeric) {
                if (missing) {
                    col.numbers.emplace_back();
                    continue;
                }
                const auto v = parse_real(f.text);
                if (!v) {
                    throw InputError("data row " + std::to_string(r + 1) + ": '" + f.text +
                                     "' is not numeric for attribute '" + a.name + "'");
                }
                col.numbers.emplace_back(*v);
            } else {
                if (missing) {
                    col.codes.emplace_back();
                    continue;
                }
                const auto it = std::find(a.values.begin(), a.values.end(), f.text);
                if (it == a.values.end()) {
                    throw InputError("data row " + std::to_string(r + 1) + ": value '" + f.text +
                                     "' not declared for attribute '" + a.name + "'");
                }
                col.codes.emplace_back(static_cast<Code>(it - a.values.begin()));
            }
        }
        if (c == cls) {
            data.label = std::move(col);
        } else {
            data.features.push_back(std::move(col));
        }
    }
    require_label(data.label);
    return data;
}

RawDataset load_arff(const std::string& path, const std::string& class_designator) {
    return parse_arff(read_file(path), class_designator);
}

RawDataset load(const std::string& path, Format format, const std::string& class_designator) {
    return format == Format::arff ? load_arff(path, class_designator)
                                  : load_csv(path, class_designator);
}

std::string to_csv(const RawDataset& data) {
    std::string out;
    for (const auto& col : data.features) out += csv_quote(col.name, false) + ",";
    out += csv_quote(data.label.name, false) + "\n";
    const auto cell = [](const RawColumn& col, std::size_t r) -> std::string {
        if (col.kind == ColumnKind::numeric) {
            return col.numbers[r] ? format_real(*col.numbers[r]) : "?";
        }
        return col.codes[r] ? csv_quote(col.categories[*col.codes[r]], false) : "?";
    };
    for (std::size_t r = 0; r < data.n_rows(); ++r) {
        for (const auto& col : data.features) out += cell(col, r) + ",";
        out += cell(data.label, r) + "\n";
    }
    return out;
}

void write_csv(const std::string& path, const RawDataset& data) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << to_csv(data);
}

Prepared prepare(const RawDataset& raw, const std::optional<mdl::DiscretizationModel>& model,
                 const PrepareOptions& options) {
    const std::size_t n = raw.n_rows();
    if (raw.features.empty()) throw InputError("dataset has no feature columns");
    if (raw.label.kind != ColumnKind::nominal) throw InputError("class column must be nominal");
    std::vector<Code> labels(n);
    for (std::size_t r = 0; r < n; ++r) {
        if (!raw.label.codes.at(r)) throw InputError("missing class value in row " + std::to_string(r + 1));
        labels[r] = *raw.label.codes[r];
    }
    const Code class_arity = static_cast<Code>(raw.label.categories.size());

    mdl::DiscretizationModel fitted;
    std::vector<ColumnProvenance> provenance;
    std::vector<std::vector<Code>> columns;
    std::vector<Code> arities;
    std::vector<std::string> names;
    for (const auto& col : raw.features) {
        if (col.size() != n) throw InputError("column '" + col.name + "' has the wrong length");
        ColumnProvenance prov;
        prov.name = col.name;
        prov.kind = col.kind;
        std::vector<std::optional<Code>> codes(n);
        Code arity = 0;
        if (col.kind == ColumnKind::nominal) {
            codes = col.codes;
            arity = static_cast<Code>(col.categories.size());
        } else {
            std::vector<double> values;
            std::vector<Code> value_labels;
            for (std::size_t r = 0; r < n; ++r) {
                if (col.numbers[r]) {
                    values.push_back(*col.numbers[r]);
                    value_labels.push_back(labels[r]);
                }
            }
            if (values.empty()) throw InputError("column '" + col.name + "' has no values");
            if (model) {
                const auto* fc = model->find(col.name);
                if (!fc) throw InputError("discretization model has no entry for column '" + col.name + "'");
                for (std::size_t r = 0; r < n; ++r) {
                    if (col.numbers[r]) codes[r] = mdl::apply_cuts(fc->cuts, *col.numbers[r]);
                }
                arity = fc->arity();
                fitted.features.push_back(*fc);
                prov.discretized = true;
            } else if (options.discretize) {
                mdl::FeatureCuts fc{col.name, mdl::fit_cuts(values, value_labels)};
                for (std::size_t r = 0; r < n; ++r) {
                    if (col.numbers[r]) codes[r] = mdl::apply_cuts(fc.cuts, *col.numbers[r]);
                }
                arity = fc.arity();
                fitted.features.push_back(std::move(fc));
                prov.discretized = true;
            } else {
                std::vector<double> distinct = values;
                std::sort(distinct.begin(), distinct.end());
                distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
                for (std::size_t r = 0; r < n; ++r) {
                    if (col.numbers[r]) {
                        codes[r] = static_cast<Code>(
                            std::lower_bound(distinct.begin(), distinct.end(), *col.numbers[r]) -
                            distinct.begin());
                    }
                }
                arity = static_cast<Code>(distinct.size());
            }
        }
        std::vector<Code> dense(n);
        for (std::size_t r = 0; r < n; ++r) {
            if (!codes[r]) ++prov.missing;
        }
        if (prov.missing == n) throw InputError("column '" + col.name + "' has no values");
        if (prov.missing > 0) prov.imputed_code = modal_code(codes, arity);
        for (std::size_t r = 0; r < n; ++r) dense[r] = codes[r] ? *codes[r] : *prov.imputed_code;
        prov.arity = arity;
        columns.push_back(std::move(dense));
        arities.push_back(arity);
        names.push_back(col.name);
        provenance.push_back(std::move(prov));
    }
    return Prepared{DiscreteTable(std::move(columns), std::move(arities), std::move(labels),
                                  class_arity, std::move(names)),
                    std::move(fitted), std::move(provenance), raw.label.categories};
}

RawDataset to_raw(const DiscreteTable& table) {
    RawDataset data;
    for (std::size_t f = 0; f < table.n_features(); ++f) {
        RawColumn col;
        col.name = table.feature_name(f);
        col.kind = ColumnKind::nominal;
        for (Code v = 0; v < table.arity(f); ++v) col.categories.push_back("v" + std::to_string(v));
        for (Code v : table.column(f)) col.codes.emplace_back(v);
        data.features.push_back(std::move(col));
    }
    data.label.name = "class";
    data.label.kind = ColumnKind::nominal;
    for (Code c = 0; c < table.class_arity(); ++c) data.label.categories.push_back("c" + std::to_string(c));
    for (Code c : table.labels()) data.label.codes.emplace_back(c);
    return data;
}

}  // namespace rcdfs::io
