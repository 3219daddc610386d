#include "rcdfs/selection.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "rcdfs/error.hpp"

namespace rcdfs {

namespace {

constexpr std::array<std::pair<Method, std::string_view>, 6> kNames{{
    {Method::rcdfs, "rcdfs"},
    {Method::mim, "mim"},
    {Method::mrmr, "mrmr"},
    {Method::cmim, "cmim"},
    {Method::fcbf, "fcbf"},
    {Method::relieff, "relieff"},
}};

}  // namespace

std::string_view method_name(Method m) {
    for (const auto& [method, name] : kNames) {
        if (method == m) return name;
    }
    return "unknown";
}

Method parse_method(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    for (const auto& [method, n] : kNames) {
        if (n == lower) return method;
    }
    throw InputError("unknown method '" + std::string(name) + "'");
}

void MethodConfig::validate() const {
    if (delta < 1) throw InputError("delta must be at least 1");
    if (!(fcbf_gamma >= 0.0)) throw InputError("fcbf gamma must be non-negative");
    if (relieff_neighbors < 1) throw InputError("relieff neighbours must be at least 1");
    if (relieff_sample < 1) throw InputError("relieff sample must be at least 1");
}

std::size_t argmax_lowest(const std::vector<double>& scores, const std::vector<bool>& taken) {
    std::size_t best = scores.size();
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (taken[i]) continue;
        if (best == scores.size() || scores[i] > scores[best] + kTieTolerance) best = i;
    }
    return best;
}

}  // namespace rcdfs
