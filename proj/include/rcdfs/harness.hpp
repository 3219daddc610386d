#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rcdfs/discrete_table.hpp"
#include "rcdfs/selection.hpp"
#include "rcdfs/stats.hpp"

namespace rcdfs::eval {

// Stratified (M x N)-fold assignment. Each repeat permutes the rows, groups
// them by class in permuted order, and deals them to folds round-robin.
struct FoldPlan {
    std::size_t n_rows = 0;
    std::size_t n_folds = 10;
    std::size_t n_repeats = 10;
    std::uint64_t seed = 1;
    std::vector<std::vector<std::uint32_t>> fold_of;  // [repeat][row]

    std::vector<std::size_t> test_rows(std::size_t repeat, std::size_t fold) const;
    std::vector<std::size_t> train_rows(std::size_t repeat, std::size_t fold) const;
};

FoldPlan make_fold_plan(std::span<const Code> labels, std::size_t n_folds, std::size_t n_repeats,
                        std::uint64_t seed);

enum class Classifier { nbc, knn1 };
std::string classifier_name(Classifier c);

enum class SampleMode { repeat, fold };
std::string sample_mode_name(SampleMode m);
SampleMode parse_sample_mode(const std::string& name);

// Called once per fold with the rows the selector saw; may run on worker
// threads but calls are serialised.
using FoldObserver =
    std::function<void(std::size_t repeat, std::size_t fold, std::span<const std::size_t> train,
                       std::span<const std::size_t> test, const DiscreteTable& selector_input)>;

struct HarnessOptions {
    std::vector<Classifier> classifiers{Classifier::nbc, Classifier::knn1};
    std::size_t threads = 0;  // 0 = hardware concurrency
    FoldObserver observer;
};

// min(50, floor(n_features / 2)), at least 1.
std::size_t default_curve_length(std::size_t n_features);

struct CurveResult {
    Method method = Method::rcdfs;
    std::size_t requested = 0;
    std::size_t length = 0;  // k runs over 1..length
    bool truncated = false;  // some fold's selector returned fewer than `requested`
    std::size_t min_native = 0;
    std::size_t max_native = 0;
    std::size_t leakage_checked_folds = 0;
    std::vector<double> mean_error;                            // [k-1]
    std::vector<std::vector<double>> classifier_error;         // [classifier][k-1]
    std::vector<std::vector<double>> repeat_error;             // [repeat][k-1]
    std::vector<std::vector<std::vector<double>>> fold_error;  // [repeat][fold][k-1]
};

// For every fold: select on the training rows only, then score each
// classifier on the test rows restricted to the top-k features.
CurveResult curve(const DiscreteTable& table, const MethodConfig& config, std::size_t m,
                  const FoldPlan& plan, const HarnessOptions& options = {});

// Error of a classifier restricted to `ranked[0..k)` for every k, evaluated
// incrementally. Result index is k-1.
std::vector<double> prefix_errors(const DiscreteTable& train, const DiscreteTable& full,
                                  std::span<const std::size_t> test_rows,
                                  std::span<const std::size_t> ranked, Classifier classifier);

enum class Marker { none, degradation, improvement };
std::string marker_name(Marker m);

struct MethodSummary {
    MethodConfig config;
    CurveResult curve;
    std::size_t best_k = 0;
    double best_error = 0.0;
    std::vector<double> samples;
    stats::RankSumResult wilcoxon;
    Marker marker = Marker::none;
};

struct FriedmanRow {
    std::size_t k = 0;                // errors averaged over 1..k selected features
    std::vector<double> mean_error;   // per method
    std::vector<bool> padded;         // per method: curve shorter than k
    stats::FriedmanResult result;
    bool significant = false;
};

struct BenchmarkReport {
    std::size_t n_rows = 0;
    std::size_t n_features = 0;
    std::size_t max_k = 0;
    std::size_t n_folds = 0;
    std::size_t n_repeats = 0;
    std::uint64_t seed = 0;
    double alpha = 0.05;
    SampleMode sample_mode = SampleMode::repeat;
    std::vector<Classifier> classifiers;
    std::size_t reference = 0;  // index into methods
    std::vector<MethodSummary> methods;
    std::vector<FriedmanRow> friedman;
    std::size_t leakage_checked_folds = 0;
    bool leakage_passed = true;
};

inline constexpr double kAlpha = 0.05;

// Needs at least two distinct methods. The reference for Wilcoxon markers is
// RCDFS when present, else the first method.
BenchmarkReport compare(const DiscreteTable& table, const std::vector<MethodConfig>& methods,
                        const FoldPlan& plan, SampleMode mode = SampleMode::repeat,
                        const HarnessOptions& options = {});

// Plain-text rendering: best-k error table with p-values and markers, then
// the Friedman table over k ranges.
std::string format_report(const BenchmarkReport& report);

}  // namespace rcdfs::eval
