#include "rcdfs/baselines.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "rcdfs/error.hpp"
#include "rcdfs/info.hpp"
#include "rcdfs/random.hpp"
#include "rcdfs/rcdfs_select.hpp"

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

// Descending by value under the argmax tie rule, so the order agrees with
// the greedy selectors' picks.
std::vector<std::size_t> rank_descending(const std::vector<double>& values) {
    std::vector<std::size_t> order;
    std::vector<bool> taken(values.size(), false);
    while (order.size() < values.size()) {
        const std::size_t best = argmax_lowest(values, taken);
        taken[best] = true;
        order.push_back(best);
    }
    return order;
}

CandidateScore plain(std::size_t f, double score, double relevance) {
    return CandidateScore{f, score, relevance, {}, {}, {}};
}

// Shared greedy loop: `update(newest, f)` folds the newest pick into f's
// running state and returns f's score against the current selected set.
template <typename Update>
SelectionTrace greedy(const DiscreteTable& table, Method method, std::size_t delta, bool verbose,
                      Update&& update) {
    check_delta(table, delta);
    const std::size_t nf = table.n_features();
    SelectionTrace trace;
    trace.method = method;
    trace.delta = delta;

    const auto rel = relevances(table);
    std::vector<bool> taken(nf, false);
    std::vector<double> scores = rel;
    while (trace.selected.size() < delta) {
        if (!trace.selected.empty()) {
            const std::size_t newest = trace.selected.back();
            for (std::size_t f = 0; f < nf; ++f) {
                if (!taken[f]) scores[f] = update(newest, f, trace.selected.size());
            }
        }
        const std::size_t best = argmax_lowest(scores, taken);
        if (verbose) {
            std::vector<CandidateScore> all;
            for (std::size_t f = 0; f < nf; ++f) {
                if (!taken[f]) all.push_back(plain(f, scores[f], rel[f]));
            }
            trace.candidates.push_back(std::move(all));
        }
        trace.selected.push_back(best);
        trace.picks.push_back(plain(best, scores[best], rel[best]));
        taken[best] = true;
    }
    return trace;
}

}  // namespace

SelectionTrace mim_rank(const DiscreteTable& table, std::size_t delta, bool verbose) {
    check_delta(table, delta);
    const auto rel = relevances(table);
    const auto order = rank_descending(rel);
    SelectionTrace trace;
    trace.method = Method::mim;
    trace.delta = delta;
    for (std::size_t i = 0; i < delta; ++i) {
        trace.selected.push_back(order[i]);
        trace.picks.push_back(plain(order[i], rel[order[i]], rel[order[i]]));
    }
    if (verbose) {
        std::vector<CandidateScore> all;
        for (std::size_t f = 0; f < rel.size(); ++f) all.push_back(plain(f, rel[f], rel[f]));
        trace.candidates.push_back(std::move(all));
    }
    return trace;
}

SelectionTrace mrmr_select(const DiscreteTable& table, std::size_t delta, bool verbose) {
    std::vector<double> redundancy(table.n_features(), 0.0);
    std::vector<double> rel = relevances(table);
    return greedy(table, Method::mrmr, delta, verbose,
                  [&](std::size_t newest, std::size_t f, std::size_t n_selected) {
                      redundancy[f] += info::mutual_information(table, Var::feature(f),
                                                                Var::feature(newest));
                      return rel[f] - redundancy[f] / static_cast<double>(n_selected);
                  });
}

SelectionTrace cmim_select(const DiscreteTable& table, std::size_t delta, bool verbose) {
    std::vector<double> running_min(table.n_features(), std::numeric_limits<double>::infinity());
    return greedy(table, Method::cmim, delta, verbose,
                  [&](std::size_t newest, std::size_t f, std::size_t) {
                      const double c = info::conditional_mutual_information(
                          table, Var::feature(f), Var::label(), Var::feature(newest));
                      running_min[f] = std::min(running_min[f], c);
                      return running_min[f];
                  });
}

SelectionTrace fcbf_select(const DiscreteTable& table, double gamma) {
    if (!(gamma >= 0.0)) throw InputError("fcbf gamma must be non-negative");
    const std::size_t nf = table.n_features();
    std::vector<double> su_class(nf);
    for (std::size_t f = 0; f < nf; ++f) {
        su_class[f] = info::symmetrical_uncertainty(table, Var::feature(f), Var::label());
    }
    const auto rel = relevances(table);

    std::vector<std::size_t> ranked;
    for (std::size_t f : rank_descending(su_class)) {
        if (su_class[f] > gamma) ranked.push_back(f);
    }
    std::vector<bool> removed(ranked.size(), false);
    for (std::size_t p = 0; p < ranked.size(); ++p) {
        if (removed[p]) continue;
        for (std::size_t q = p + 1; q < ranked.size(); ++q) {
            if (removed[q]) continue;
            const double su_pair = info::symmetrical_uncertainty(table, Var::feature(ranked[p]),
                                                                 Var::feature(ranked[q]));
            if (su_pair >= su_class[ranked[q]]) removed[q] = true;
        }
    }

    SelectionTrace trace;
    trace.method = Method::fcbf;
    for (std::size_t i = 0; i < ranked.size(); ++i) {
        if (removed[i]) continue;
        trace.selected.push_back(ranked[i]);
        trace.picks.push_back(plain(ranked[i], su_class[ranked[i]], rel[ranked[i]]));
    }
    trace.delta = trace.selected.size();
    return trace;
}

std::vector<double> relieff_weights(const DiscreteTable& table, std::size_t neighbors,
                                    std::size_t sample, std::uint64_t seed) {
    if (neighbors < 1) throw InputError("relieff neighbours must be at least 1");
    if (sample < 1) throw InputError("relieff sample must be at least 1");
    const std::size_t n = table.n_rows();
    const std::size_t nf = table.n_features();
    const auto labels = table.labels();

    std::vector<std::size_t> class_count(table.class_arity(), 0);
    for (Code c : labels) ++class_count[c];
    const auto classes_present =
        std::count_if(class_count.begin(), class_count.end(), [](std::size_t c) { return c > 0; });
    if (classes_present < 2) throw InputError("relieff needs at least two classes");

    std::vector<std::span<const Code>> cols(nf);
    for (std::size_t f = 0; f < nf; ++f) cols[f] = table.column(f);

    Rng rng(seed);
    const std::size_t m = std::min(sample, n);
    const auto picked = sample_without_replacement(rng, n, m);

    std::vector<double> weights(nf, 0.0);
    std::vector<std::size_t> dist(n);
    std::vector<std::size_t> order(n);
    for (std::size_t r : picked) {
        for (std::size_t o = 0; o < n; ++o) {
            std::size_t d = 0;
            for (std::size_t f = 0; f < nf; ++f) d += (cols[f][o] != cols[f][r]) ? 1 : 0;
            dist[o] = d;
        }
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });

        // Nearest k rows of each class, excluding the sampled row itself.
        std::vector<std::vector<std::size_t>> nearest(table.class_arity());
        for (std::size_t o : order) {
            if (o == r) continue;
            auto& bucket = nearest[labels[o]];
            if (bucket.size() < neighbors) bucket.push_back(o);
        }

        const Code own = labels[r];
        const double own_prior = static_cast<double>(class_count[own]) / static_cast<double>(n);
        for (std::size_t f = 0; f < nf; ++f) {
            const Code v = cols[f][r];
            double hit = 0.0;
            const auto& hits = nearest[own];
            for (std::size_t h : hits) hit += (cols[f][h] != v) ? 1.0 : 0.0;
            if (!hits.empty()) hit /= static_cast<double>(hits.size());

            double miss = 0.0;
            for (Code c = 0; c < table.class_arity(); ++c) {
                if (c == own || nearest[c].empty()) continue;
                double diff = 0.0;
                for (std::size_t h : nearest[c]) diff += (cols[f][h] != v) ? 1.0 : 0.0;
                diff /= static_cast<double>(nearest[c].size());
                const double prior = static_cast<double>(class_count[c]) / static_cast<double>(n);
                miss += prior / (1.0 - own_prior) * diff;
            }
            weights[f] += (miss - hit) / static_cast<double>(m);
        }
    }
    return weights;
}

SelectionTrace relieff_rank(const DiscreteTable& table, const MethodConfig& config) {
    check_delta(table, config.delta);
    auto weights =
        relieff_weights(table, config.relieff_neighbors, config.relieff_sample, config.seed);
    const auto rel = relevances(table);
    const auto order = rank_descending(weights);
    SelectionTrace trace;
    trace.method = Method::relieff;
    trace.delta = config.delta;
    trace.seed = config.seed;
    for (std::size_t i = 0; i < config.delta; ++i) {
        trace.selected.push_back(order[i]);
        trace.picks.push_back(plain(order[i], weights[order[i]], rel[order[i]]));
    }
    trace.weights = std::move(weights);
    return trace;
}

SelectionTrace run_method(const DiscreteTable& table, const MethodConfig& config) {
    config.validate();
    switch (config.method) {
        case Method::rcdfs:
            return config.reference ? select_reference(table, config.delta, config.verbose)
                                    : select_fast(table, config.delta, config.verbose);
        case Method::mim:
            return mim_rank(table, config.delta, config.verbose);
        case Method::mrmr:
            return mrmr_select(table, config.delta, config.verbose);
        case Method::cmim:
            return cmim_select(table, config.delta, config.verbose);
        case Method::fcbf:
            return fcbf_select(table, config.fcbf_gamma);
        case Method::relieff:
            return relieff_rank(table, config);
    }
    throw InputError("unknown method");
}

}  // namespace rcdfs
