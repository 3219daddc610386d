#include "rcdfs/rcdfs_select.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rcdfs/error.hpp"
#include "rcdfs/info.hpp"

namespace rcdfs {

namespace {

void check_delta(const DiscreteTable& table, std::size_t delta) {
    if (delta < 1 || delta > table.n_features()) {
        throw InputError("delta must be in [1, " + std::to_string(table.n_features()) +
                         "], got " + std::to_string(delta));
    }
}

std::vector<double> relevances(const DiscreteTable& table) {
    std::vector<double> rel(table.n_features());
    for (std::size_t f = 0; f < rel.size(); ++f) {
        rel[f] = info::mutual_information(table, Var::feature(f), Var::label());
    }
    return rel;
}

CandidateScore first_pick_score(std::size_t f, double relevance) {
    return CandidateScore{f, relevance, relevance, 0.0, 0.0, 1.0};
}

// The first pick is the most relevant feature in both scorers; S is empty so
// Pair_Cor and sigma are zero and J reduces to I(F;C).
void take_first(const std::vector<double>& rel, std::vector<bool>& taken, SelectionTrace& trace,
                bool verbose) {
    const std::size_t first = argmax_lowest(rel, taken);
    if (verbose) {
        std::vector<CandidateScore> all;
        for (std::size_t f = 0; f < rel.size(); ++f) all.push_back(first_pick_score(f, rel[f]));
        trace.candidates.push_back(std::move(all));
    }
    trace.selected.push_back(first);
    trace.picks.push_back(first_pick_score(first, rel[first]));
    taken[first] = true;
}

}  // namespace

double pairwise_cor(const DiscreteTable& table, std::size_t f, std::size_t fs) {
    if (f == fs) throw InputError("pairwise_cor needs two distinct features");
    const Var a = Var::feature(f);
    const Var b = Var::feature(fs);
    return info::mutual_information(table, a, b) -
           info::conditional_mutual_information(table, a, b, Var::label());
}

double dispersion_sigma(std::span<const double> cor_values) {
    if (cor_values.size() < 2) return 0.0;
    const double n = static_cast<double>(cor_values.size());
    double mean = 0.0;
    for (double c : cor_values) mean += c;
    mean /= n;
    double ss = 0.0;
    for (double c : cor_values) ss += (c - mean) * (c - mean);
    return std::sqrt(ss / n);
}

double dispersion_sigma(double sum_cor, double sum_cor_sq, std::size_t n) {
    if (n == 0) return 0.0;
    const double dn = static_cast<double>(n);
    const double var = (sum_cor_sq - sum_cor * sum_cor / dn) / dn;
    return std::sqrt(std::max(0.0, var));
}

double phi(double pair_cor, double sigma) { return pair_cor >= 0.0 ? 1.0 + sigma : 1.0 - sigma; }

double score(double relevance, double pair_cor, double sigma) {
    return relevance - phi(pair_cor, sigma) * pair_cor;
}

SelectionTrace select_reference(const DiscreteTable& table, std::size_t delta, bool verbose) {
    check_delta(table, delta);
    const std::size_t nf = table.n_features();
    SelectionTrace trace;
    trace.method = Method::rcdfs;
    trace.delta = delta;

    const auto rel = relevances(table);
    std::vector<bool> taken(nf, false);
    take_first(rel, taken, trace, verbose);

    std::vector<double> cors;
    std::vector<double> scores(nf, 0.0);
    std::vector<CandidateScore> round(nf);
    while (trace.selected.size() < delta) {
        for (std::size_t f = 0; f < nf; ++f) {
            if (taken[f]) continue;
            cors.clear();
            double pair_cor = 0.0;
            for (std::size_t s : trace.selected) {
                const double c = pairwise_cor(table, f, s);
                cors.push_back(c);
                pair_cor += c;
            }
            const double sigma = dispersion_sigma(cors);
            scores[f] = score(rel[f], pair_cor, sigma);
            round[f] = CandidateScore{f, scores[f], rel[f], pair_cor, sigma, phi(pair_cor, sigma)};
        }
        const std::size_t best = argmax_lowest(scores, taken);
        if (verbose) {
            std::vector<CandidateScore> all;
            for (std::size_t f = 0; f < nf; ++f) {
                if (!taken[f]) all.push_back(round[f]);
            }
            trace.candidates.push_back(std::move(all));
        }
        trace.selected.push_back(best);
        trace.picks.push_back(round[best]);
        taken[best] = true;
    }
    return trace;
}

SelectionTrace select_fast(const DiscreteTable& table, std::size_t delta, bool verbose) {
    check_delta(table, delta);
    const std::size_t nf = table.n_features();
    SelectionTrace trace;
    trace.method = Method::rcdfs;
    trace.delta = delta;

    const auto rel = relevances(table);
    std::vector<CandidateState> state(nf);
    for (std::size_t f = 0; f < nf; ++f) state[f].relevance = rel[f];

    std::vector<bool> taken(nf, false);
    take_first(rel, taken, trace, verbose);

    std::vector<double> scores(nf, 0.0);
    std::vector<CandidateScore> round(nf);
    while (trace.selected.size() < delta) {
        const std::size_t newest = trace.selected.back();
        const std::size_t n_selected = trace.selected.size();
        for (std::size_t f = 0; f < nf; ++f) {
            if (taken[f]) continue;
            auto& st = state[f];
            const double c = pairwise_cor(table, f, newest);
            st.sum_cor_sq += c * c;
            st.pair_cor += c;
            const double sigma = dispersion_sigma(st.pair_cor, st.sum_cor_sq, n_selected);
            scores[f] = score(st.relevance, st.pair_cor, sigma);
            round[f] =
                CandidateScore{f, scores[f], st.relevance, st.pair_cor, sigma, phi(st.pair_cor, sigma)};
        }
        const std::size_t best = argmax_lowest(scores, taken);
        if (verbose) {
            std::vector<CandidateScore> all;
            for (std::size_t f = 0; f < nf; ++f) {
                if (!taken[f]) all.push_back(round[f]);
            }
            trace.candidates.push_back(std::move(all));
        }
        trace.selected.push_back(best);
        trace.picks.push_back(round[best]);
        taken[best] = true;
    }
    return trace;
}

}  // namespace rcdfs
