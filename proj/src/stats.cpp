#include "rcdfs/stats.hpp"

#include <algorithm>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numeric>

#include "rcdfs/error.hpp"

namespace rcdfs::stats {

namespace {

// Number of size-k subsets of {1..n} with each possible rank sum; index is
// the sum. Counts are kept in doubles (n <= kExactLimit keeps them exact).
std::vector<double> rank_sum_distribution(std::size_t n, std::size_t k) {
    const std::size_t max_sum = n * (n + 1) / 2;
    // ways[j][s]: subsets of size j with sum s using the ranks seen so far.
    std::vector<std::vector<double>> ways(k + 1, std::vector<double>(max_sum + 1, 0.0));
    ways[0][0] = 1.0;
    for (std::size_t r = 1; r <= n; ++r) {
        for (std::size_t j = std::min(k, r); j >= 1; --j) {
            for (std::size_t s = max_sum; s >= r; --s) ways[j][s] += ways[j - 1][s - r];
        }
    }
    return ways[k];
}

}  // namespace

std::vector<double> midranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
        const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = rank;
        i = j + 1;
    }
    return ranks;
}

RankSumResult wilcoxon_rank_sum(std::span<const double> sample_a, std::span<const double> sample_b) {
    if (sample_a.empty() || sample_b.empty()) throw InputError("wilcoxon: empty sample");
    const std::size_t na = sample_a.size();
    const std::size_t nb = sample_b.size();
    const std::size_t n = na + nb;

    std::vector<double> pooled(sample_a.begin(), sample_a.end());
    pooled.insert(pooled.end(), sample_b.begin(), sample_b.end());
    for (double v : pooled) {
        if (std::isnan(v)) throw InputError("wilcoxon: NaN in sample");
    }
    const auto ranks = midranks(pooled);

    RankSumResult out;
    for (std::size_t i = 0; i < na; ++i) out.statistic += ranks[i];

    // Tie term sum(t^3 - t) over groups of equal values.
    std::vector<double> sorted = pooled;
    std::sort(sorted.begin(), sorted.end());
    double tie_term = 0.0;
    for (std::size_t i = 0; i < n;) {
        std::size_t j = i;
        while (j < n && sorted[j] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i);
        tie_term += t * t * t - t;
        i = j;
    }

    if (n <= kExactLimit && tie_term == 0.0) {
        const auto dist = rank_sum_distribution(n, na);
        const double total = std::accumulate(dist.begin(), dist.end(), 0.0);
        const auto w = static_cast<std::size_t>(std::llround(out.statistic));
        double lower = 0.0, upper = 0.0;
        for (std::size_t s = 0; s < dist.size(); ++s) {
            if (s <= w) lower += dist[s];
            if (s >= w) upper += dist[s];
        }
        out.p_value = std::min(1.0, 2.0 * std::min(lower, upper) / total);
        out.exact = true;
        return out;
    }

    const double dna = static_cast<double>(na);
    const double dnb = static_cast<double>(nb);
    const double dn = static_cast<double>(n);
    const double mean = dna * (dn + 1.0) / 2.0;
    const double var = dna * dnb / 12.0 * ((dn + 1.0) - tie_term / (dn * (dn - 1.0)));
    if (!(var > 0.0)) {
        out.p_value = 1.0;
        return out;
    }
    const double shift = std::max(0.0, std::abs(out.statistic - mean) - 0.5);
    const double z = shift / std::sqrt(var);
    out.p_value = std::clamp(std::erfc(z / std::sqrt(2.0)), 0.0, 1.0);
    return out;
}

double chi_square_survival(double x, double df) {
    if (!(df > 0.0)) throw InputError("chi-square needs positive degrees of freedom");
    if (x <= 0.0) return 1.0;
    return boost::math::gamma_q(df / 2.0, x / 2.0);
}

FriedmanResult friedman_test(const std::vector<std::vector<double>>& scores) {
    const std::size_t k = scores.size();
    if (k < 2) throw InputError("friedman: need at least two methods");
    const std::size_t n = scores.front().size();
    if (n < 2) throw InputError("friedman: need at least two blocks");
    for (const auto& row : scores) {
        if (row.size() != n) throw InputError("friedman: methods have different block counts");
    }

    std::vector<double> rank_sum(k, 0.0);
    std::vector<double> block(k);
    for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t m = 0; m < k; ++m) block[m] = scores[m][b];
        const auto r = midranks(block);
        for (std::size_t m = 0; m < k; ++m) rank_sum[m] += r[m];
    }

    const double dk = static_cast<double>(k);
    const double dn = static_cast<double>(n);
    const double centre = (dk + 1.0) / 2.0;
    FriedmanResult out;
    out.df = k - 1;
    double ss = 0.0;
    for (std::size_t m = 0; m < k; ++m) {
        const double mean_rank = rank_sum[m] / dn;
        out.mean_ranks.push_back(mean_rank);
        ss += (mean_rank - centre) * (mean_rank - centre);
    }
    out.statistic = 12.0 * dn / (dk * (dk + 1.0)) * ss;
    out.p_value = chi_square_survival(out.statistic, static_cast<double>(out.df));
    return out;
}

}  // namespace rcdfs::stats
