#include "rcdfs/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "rcdfs/error.hpp"

namespace rcdfs {

NaiveBayes NaiveBayes::fit(const DiscreteTable& train, std::span<const std::size_t> features) {
    if (train.n_rows() == 0) throw InputError("naive bayes: empty training set");
    NaiveBayes nb;
    nb.features_.assign(features.begin(), features.end());
    nb.class_arity_ = train.class_arity();
    const auto labels = train.labels();
    const std::size_t ca = nb.class_arity_;

    std::vector<std::size_t> class_count(ca, 0);
    for (Code c : labels) ++class_count[c];
    const double n = static_cast<double>(train.n_rows());
    nb.log_prior_.resize(ca);
    for (std::size_t c = 0; c < ca; ++c) {
        nb.log_prior_[c] = class_count[c] == 0 ? -std::numeric_limits<double>::infinity()
                                               : std::log(static_cast<double>(class_count[c]) / n);
    }

    for (std::size_t f : nb.features_) {
        const Code arity = train.arity(f);
        const auto col = train.column(f);
        std::vector<std::size_t> joint(static_cast<std::size_t>(arity) * ca, 0);
        for (std::size_t r = 0; r < col.size(); ++r) ++joint[col[r] * ca + labels[r]];
        std::vector<double> table(joint.size());
        for (Code v = 0; v < arity; ++v) {
            for (std::size_t c = 0; c < ca; ++c) {
                table[v * ca + c] =
                    std::log((static_cast<double>(joint[v * ca + c]) + 1.0) /
                             (static_cast<double>(class_count[c]) + static_cast<double>(arity)));
            }
        }
        nb.arities_.push_back(arity);
        nb.log_like_.push_back(std::move(table));
    }
    return nb;
}

double NaiveBayes::log_likelihood(std::size_t i, Code v, Code c) const {
    if (v >= arities_[i]) throw InputError("naive bayes: code outside the trained arity");
    return log_like_[i][v * class_arity_ + c];
}

std::vector<double> NaiveBayes::log_posterior(std::span<const Code> row) const {
    if (row.size() != features_.size()) throw InputError("naive bayes: row width mismatch");
    std::vector<double> score(log_prior_);
    for (std::size_t c = 0; c < class_arity_; ++c) {
        if (std::isinf(score[c])) continue;
        for (std::size_t i = 0; i < row.size(); ++i) score[c] += log_likelihood(i, row[i], c);
    }
    return score;
}

Code NaiveBayes::predict(std::span<const Code> row) const {
    const auto score = log_posterior(row);
    Code best = 0;
    for (Code c = 1; c < class_arity_; ++c) {
        if (score[c] > score[best]) best = c;
    }
    return best;
}

Code knn_predict(const DiscreteTable& train, std::span<const std::size_t> features,
                 std::span<const Code> row, std::size_t k) {
    if (train.n_rows() == 0) throw InputError("knn: empty training set");
    if (row.size() != features.size()) throw InputError("knn: row width mismatch");
    if (k < 1) throw InputError("knn: k must be at least 1");
    const std::size_t n = train.n_rows();
    std::vector<std::size_t> dist(n, 0);
    for (std::size_t i = 0; i < features.size(); ++i) {
        const auto col = train.column(features[i]);
        for (std::size_t r = 0; r < n; ++r) dist[r] += (col[r] != row[i]) ? 1 : 0;
    }
    const auto labels = train.labels();
    if (k == 1) {
        std::size_t best = 0;
        for (std::size_t r = 1; r < n; ++r) {
            if (dist[r] < dist[best]) best = r;
        }
        return labels[best];
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return dist[a] < dist[b]; });
    std::vector<std::size_t> votes(train.class_arity(), 0);
    for (std::size_t i = 0; i < std::min(k, n); ++i) ++votes[labels[order[i]]];
    return static_cast<Code>(std::max_element(votes.begin(), votes.end()) - votes.begin());
}

}  // namespace rcdfs
