#include "rcdfs/info.hpp"

#include <algorithm>
#include <cmath>

#include "rcdfs/error.hpp"

namespace rcdfs::info {

namespace {

double clamp_rounding(double v) {
    return (v < 0.0 && v > -kNegativeSlack) ? 0.0 : v;
}

// Orders two selectors so that f(x, y) and f(y, x) traverse identical counts.
void canonicalise(Var& a, Var& b) {
    if (b.order_key() < a.order_key()) std::swap(a, b);
}

}  // namespace

std::uint64_t ContingencyCounts::at(std::initializer_list<std::size_t> index) const {
    if (index.size() != dims.size()) throw InputError("index rank does not match counts");
    std::size_t offset = 0;
    std::size_t stride = 1;
    std::size_t d = 0;
    for (std::size_t i : index) {
        if (i >= dims[d]) throw InputError("count index out of range");
        offset += i * stride;
        stride *= dims[d++];
    }
    return cells[offset];
}

ContingencyCounts count(const DiscreteTable& table, std::span<const Var> vars) {
    if (vars.empty() || vars.size() > 3) throw InputError("count takes one to three variables");
    ContingencyCounts out;
    std::vector<std::span<const Code>> cols;
    std::size_t cells = 1;
    for (Var v : vars) {
        table.check(v);
        out.dims.push_back(table.arity(v));
        cols.push_back(table.values(v));
        cells *= out.dims.back();
    }
    out.cells.assign(cells, 0);
    const std::size_t n = table.n_rows();
    for (std::size_t r = 0; r < n; ++r) {
        std::size_t offset = 0;
        std::size_t stride = 1;
        for (std::size_t d = 0; d < cols.size(); ++d) {
            offset += cols[d][r] * stride;
            stride *= out.dims[d];
        }
        ++out.cells[offset];
    }
    out.total = n;
    return out;
}

ContingencyCounts count(const DiscreteTable& table, std::initializer_list<Var> vars) {
    return count(table, std::span<const Var>(vars.begin(), vars.size()));
}

double entropy(const ContingencyCounts& counts) {
    if (counts.total == 0) throw EmptyDistributionError("entropy of an empty distribution");
    const double n = static_cast<double>(counts.total);
    double h = 0.0;
    for (std::uint64_t c : counts.cells) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / n;
        h -= p * std::log2(p);
    }
    return clamp_rounding(h);
}

double entropy(const DiscreteTable& table, Var x) { return entropy(count(table, {x})); }

double mutual_information(const DiscreteTable& table, Var x, Var y) {
    canonicalise(x, y);
    const auto joint = count(table, {x, y});
    const std::size_t ax = joint.dims[0];
    const std::size_t ay = joint.dims[1];
    std::vector<std::uint64_t> mx(ax, 0), my(ay, 0);
    for (std::size_t j = 0; j < ay; ++j) {
        for (std::size_t i = 0; i < ax; ++i) {
            const auto c = joint.cells[i + ax * j];
            mx[i] += c;
            my[j] += c;
        }
    }
    // Each term is p(xy) log p(xy) / (p(x) p(y)) written on raw counts so that
    // exactly independent cells contribute exactly zero.
    const double n = static_cast<double>(joint.total);
    double mi = 0.0;
    for (std::size_t j = 0; j < ay; ++j) {
        for (std::size_t i = 0; i < ax; ++i) {
            const auto c = joint.cells[i + ax * j];
            if (c == 0) continue;
            const double cxy = static_cast<double>(c);
            const double ratio =
                (cxy * n) / (static_cast<double>(mx[i]) * static_cast<double>(my[j]));
            mi += (cxy / n) * std::log2(ratio);
        }
    }
    return clamp_rounding(mi);
}

double conditional_mutual_information(const DiscreteTable& table, Var x, Var y, Var z) {
    if (x == y || x == z || y == z) {
        throw InputError("conditional mutual information needs three distinct variables");
    }
    canonicalise(x, y);
    const auto joint = count(table, {x, y, z});
    const std::size_t ax = joint.dims[0];
    const std::size_t ay = joint.dims[1];
    const std::size_t az = joint.dims[2];
    std::vector<std::uint64_t> mxz(ax * az, 0), myz(ay * az, 0), mz(az, 0);
    for (std::size_t k = 0; k < az; ++k) {
        for (std::size_t j = 0; j < ay; ++j) {
            for (std::size_t i = 0; i < ax; ++i) {
                const auto c = joint.cells[i + ax * (j + ay * k)];
                mxz[i + ax * k] += c;
                myz[j + ay * k] += c;
                mz[k] += c;
            }
        }
    }
    const double n = static_cast<double>(joint.total);
    double cmi = 0.0;
    for (std::size_t k = 0; k < az; ++k) {
        if (mz[k] == 0) continue;
        for (std::size_t j = 0; j < ay; ++j) {
            for (std::size_t i = 0; i < ax; ++i) {
                const auto c = joint.cells[i + ax * (j + ay * k)];
                if (c == 0) continue;
                const double cxyz = static_cast<double>(c);
                const double ratio = (cxyz * static_cast<double>(mz[k])) /
                                     (static_cast<double>(mxz[i + ax * k]) *
                                      static_cast<double>(myz[j + ay * k]));
                cmi += (cxyz / n) * std::log2(ratio);
            }
        }
    }
    return clamp_rounding(cmi);
}

double symmetrical_uncertainty(const DiscreteTable& table, Var x, Var y) {
    const double hx = entropy(table, x);
    const double hy = entropy(table, y);
    if (hx + hy <= 0.0) return 0.0;
    const double su = 2.0 * mutual_information(table, x, y) / (hx + hy);
    return std::clamp(su, 0.0, 1.0);
}

}  // namespace rcdfs::info
