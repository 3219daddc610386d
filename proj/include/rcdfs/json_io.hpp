#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "rcdfs/dataset_io.hpp"
#include "rcdfs/discretizer.hpp"
#include "rcdfs/harness.hpp"
#include "rcdfs/selection.hpp"

namespace rcdfs::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolkitVersion = "1.0.0";

// {"artifact", "version", "config", "seed"} header shared by every output.
Json envelope(const std::string& artifact, Json config, std::uint64_t seed);

Json to_json(const MethodConfig& config);
Json to_json(const SelectionTrace& trace, const std::vector<std::string>& feature_names);
Json to_json(const mdl::DiscretizationModel& model);
mdl::DiscretizationModel model_from_json(const Json& j);
Json to_json(const std::vector<ColumnProvenance>& provenance);
Json to_json(const eval::CurveResult& curve, const std::vector<eval::Classifier>& classifiers);
Json to_json(const eval::BenchmarkReport& report);

Json error_json(const std::string& kind, const std::string& message);

// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace rcdfs::io
