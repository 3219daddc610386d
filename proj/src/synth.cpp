#include "rcdfs/synth.hpp"

#include <vector>

#include "rcdfs/error.hpp"
#include "rcdfs/random.hpp"

namespace rcdfs::synth {

DiscreteTable xor_table(std::uint64_t seed, std::size_t rows, std::size_t noise) {
    if (rows < 4 || rows % 4 != 0) throw InputError("xor table needs a positive multiple of 4 rows");
    Rng rng(seed);
    std::vector<std::vector<Code>> cols(2 + noise, std::vector<Code>(rows));
    std::vector<Code> labels(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        cols[0][r] = static_cast<Code>(r & 1);
        cols[1][r] = static_cast<Code>((r >> 1) & 1);
        labels[r] = cols[0][r] ^ cols[1][r];
    }
    for (std::size_t j = 0; j < noise; ++j) {
        for (std::size_t r = 0; r < rows; ++r) cols[2 + j][r] = static_cast<Code>(uniform_below(rng, 2));
    }
    std::vector<std::string> names{"parity1", "parity2"};
    for (std::size_t j = 0; j < noise; ++j) names.push_back("noise" + std::to_string(j + 1));
    return DiscreteTable(std::move(cols), std::vector<Code>(2 + noise, 2), std::move(labels), 2,
                         std::move(names));
}

DiscreteTable duplicate_table() {
    constexpr std::size_t cell = 100;
    constexpr std::size_t flips = 2;
    std::vector<Code> f1, f3, labels;
    for (Code a = 0; a < 2; ++a) {
        for (Code b = 0; b < 2; ++b) {
            for (std::size_t i = 0; i < cell; ++i) {
                f1.push_back(a);
                f3.push_back(b);
                const bool flip = a != b && i < flips;
                labels.push_back(flip ? 1 - a : a);
            }
        }
    }
    std::vector<std::vector<Code>> cols{f1, f1, f3};
    return DiscreteTable(std::move(cols), {2, 2, 2}, std::move(labels), 2,
                         {"strong", "strong_copy", "weak"});
}

DiscreteTable planted_table(std::uint64_t seed, std::size_t rows, std::size_t features) {
    if (features < 8) throw InputError("planted table needs at least 8 features");
    if (rows < 1) throw InputError("planted table needs rows");
    Rng rng(seed);
    std::vector<std::vector<Code>> cols(features, std::vector<Code>(rows));
    std::vector<Code> labels(rows);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t j = 0; j < 3; ++j) cols[j][r] = static_cast<Code>(uniform_below(rng, 2));
        labels[r] = (cols[0][r] == 1 || (cols[1][r] == 1 && cols[2][r] == 1)) ? 1 : 0;
        for (std::size_t j = 3; j < 8; ++j) {
            Code v = cols[0][r];
            if (uniform_unit(rng) < 0.1) v = static_cast<Code>(1 - v);
            cols[j][r] = v;
        }
        for (std::size_t j = 8; j < features; ++j) cols[j][r] = static_cast<Code>(uniform_below(rng, 2));
    }
    std::vector<std::string> names{"x0", "x1", "x2"};
    for (std::size_t j = 3; j < 8; ++j) names.push_back("x0_noisy" + std::to_string(j - 2));
    for (std::size_t j = 8; j < features; ++j) names.push_back("noise" + std::to_string(j - 7));
    return DiscreteTable(std::move(cols), std::vector<Code>(features, 2), std::move(labels), 2,
                         std::move(names));
}

DiscreteTable by_name(const std::string& name, std::uint64_t seed) {
    if (name == "xor") return xor_table(seed);
    if (name == "duplicate") return duplicate_table();
    if (name == "planted") return planted_table(seed);
    throw InputError("unknown synthetic dataset '" + name + "' (expected xor, duplicate or planted)");
}

}  // namespace rcdfs::synth
