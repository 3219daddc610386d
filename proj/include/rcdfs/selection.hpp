#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rcdfs {

enum class Method { rcdfs, mim, mrmr, cmim, fcbf, relieff };

std::string_view method_name(Method m);
Method parse_method(std::string_view name);

struct MethodConfig {
    Method method = Method::rcdfs;
    std::size_t delta = 10;
    double fcbf_gamma = 0.0;
    std::size_t relieff_neighbors = 5;
    std::size_t relieff_sample = 30;
    std::uint64_t seed = 1;
    // Use the reference (non-incremental) RCDFS scorer instead of the fast one.
    bool reference = false;
    // Keep every candidate's score at every iteration in the trace.
    bool verbose = false;

    void validate() const;
};

// Score of one candidate at one iteration. Fields that a method does not
// compute stay empty.
struct CandidateScore {
    std::size_t feature = 0;
    double score = 0.0;
    double relevance = 0.0;
    std::optional<double> pair_cor;
    std::optional<double> sigma;
    std::optional<double> phi;
};

struct SelectionTrace {
    Method method = Method::rcdfs;
    std::size_t delta = 0;
    // Chosen features in pick order, with the winning candidate's diagnostics.
    std::vector<std::size_t> selected;
    std::vector<CandidateScore> picks;
    // Populated only in verbose mode: all candidates scored at iteration i.
    std::vector<std::vector<CandidateScore>> candidates;
    // ReliefF only: weight per feature index.
    std::vector<double> weights;
    std::optional<std::uint64_t> seed;
};

// Scores closer than this are ties; ties go to the lowest feature index.
inline constexpr double kTieTolerance = 1e-12;

// Index into `scores` of the best entry under the tie rule above, skipping
// entries with `taken[i]` set. Returns scores.size() when nothing is eligible.
std::size_t argmax_lowest(const std::vector<double>& scores, const std::vector<bool>& taken);

}  // namespace rcdfs
