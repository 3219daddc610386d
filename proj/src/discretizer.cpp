#include "rcdfs/discretizer.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rcdfs/error.hpp"

namespace rcdfs::mdl {

namespace {

// Partition entropies closer than this count as tied; the leftmost wins.
constexpr double kTieSlack = 1e-12;

struct Sample {
    double value;
    Code label;
};

double class_entropy(std::span<const std::size_t> counts, std::size_t total) {
    if (total == 0) return 0.0;
    double h = 0.0;
    for (std::size_t c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / static_cast<double>(total);
        h -= p * std::log2(p);
    }
    return h;
}

std::size_t distinct_classes(std::span<const std::size_t> counts) {
    return static_cast<std::size_t>(
        std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }));
}

double midpoint(double lo, double hi) {
    const double mid = lo + (hi - lo) / 2.0;
    // Adjacent doubles can round the midpoint down onto `lo`, which would move
    // `lo` into the upper bin.
    return mid > lo ? mid : hi;
}

class Splitter {
public:
    Splitter(std::vector<Sample> sorted, std::size_t n_classes)
        : data_(std::move(sorted)), n_classes_(n_classes) {}

    void split(std::size_t lo, std::size_t hi, std::vector<double>& cuts) const {
        const std::size_t n = hi - lo;
        if (n < 2) return;

        std::vector<std::size_t> total(n_classes_, 0);
        for (std::size_t i = lo; i < hi; ++i) ++total[data_[i].label];
        const double h_all = class_entropy(total, n);
        if (h_all == 0.0) return;

        std::vector<std::size_t> left(n_classes_, 0), right(n_classes_, 0);
        std::vector<std::size_t> best_left, best_right;
        std::size_t best_pos = 0;
        double best_ent = 0.0;
        bool found = false;

        // Walk value groups; a boundary between groups A and B is a candidate
        // unless both are pure with the same class.
        std::size_t i = lo;
        Code prev_label = 0;
        bool prev_pure = false;
        while (i < hi) {
            std::size_t j = i;
            const Code first_label = data_[i].label;
            bool pure = true;
            while (j < hi && data_[j].value == data_[i].value) {
                if (data_[j].label != first_label) pure = false;
                ++j;
            }
            if (i > lo) {
                const bool boundary = !(prev_pure && pure && prev_label == first_label);
                if (boundary) {
                    right = total;
                    for (Code c = 0; c < n_classes_; ++c) right[c] -= left[c];
                    const std::size_t n_left = i - lo;
                    const std::size_t n_right = hi - i;
                    const double ent =
                        (static_cast<double>(n_left) * class_entropy(left, n_left) +
                         static_cast<double>(n_right) * class_entropy(right, n_right)) /
                        static_cast<double>(n);
                    if (!found || ent < best_ent - kTieSlack) {
                        found = true;
                        best_ent = ent;
                        best_pos = i;
                        best_left = left;
                        best_right = right;
                    }
                }
            }
            for (std::size_t t = i; t < j; ++t) ++left[data_[t].label];
            prev_label = first_label;
            prev_pure = pure;
            i = j;
        }
        if (!found) return;

        const std::size_t n_left = best_pos - lo;
        const std::size_t n_right = hi - best_pos;
        const double h_left = class_entropy(best_left, n_left);
        const double h_right = class_entropy(best_right, n_right);
        const double gain = h_all - best_ent;
        const double k = static_cast<double>(distinct_classes(total));
        const double k1 = static_cast<double>(distinct_classes(best_left));
        const double k2 = static_cast<double>(distinct_classes(best_right));
        const double delta =
            std::log2(std::pow(3.0, k) - 2.0) - (k * h_all - k1 * h_left - k2 * h_right);
        const double dn = static_cast<double>(n);
        const double threshold = std::log2(dn - 1.0) / dn + delta / dn;
        if (!(gain > threshold)) return;

        split(lo, best_pos, cuts);
        cuts.push_back(midpoint(data_[best_pos - 1].value, data_[best_pos].value));
        split(best_pos, hi, cuts);
    }

private:
    std::vector<Sample> data_;
    std::size_t n_classes_;
};

}  // namespace

const FeatureCuts* DiscretizationModel::find(const std::string& name) const {
    for (const auto& f : features) {
        if (f.name == name) return &f;
    }
    return nullptr;
}

std::vector<double> fit_cuts(std::span<const double> values, std::span<const Code> labels) {
    if (values.size() != labels.size()) {
        throw InputError("fit_cuts: " + std::to_string(values.size()) + " values but " +
                         std::to_string(labels.size()) + " labels");
    }
    if (values.empty()) throw InputError("fit_cuts: no values");
    std::vector<Sample> data;
    data.reserve(values.size());
    Code max_label = 0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (std::isnan(values[i])) throw InputError("fit_cuts: NaN value at row " + std::to_string(i));
        data.push_back({values[i], labels[i]});
        max_label = std::max(max_label, labels[i]);
    }
    std::stable_sort(data.begin(), data.end(),
                     [](const Sample& a, const Sample& b) { return a.value < b.value; });
    std::vector<double> cuts;
    Splitter(std::move(data), static_cast<std::size_t>(max_label) + 1).split(0, values.size(), cuts);
    return cuts;
}

Code apply_cuts(std::span<const double> cuts, double value) {
    if (std::isnan(value)) throw InputError("apply_cuts: NaN value");
    return static_cast<Code>(std::upper_bound(cuts.begin(), cuts.end(), value) - cuts.begin());
}

std::vector<Code> apply_cuts(std::span<const double> cuts, std::span<const double> values) {
    std::vector<Code> codes;
    codes.reserve(values.size());
    for (double v : values) codes.push_back(apply_cuts(cuts, v));
    return codes;
}

}  // namespace rcdfs::mdl
