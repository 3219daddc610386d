#include "rcdfs/json_io.hpp"

#include "rcdfs/error.hpp"

namespace rcdfs::io {

namespace {

Json candidate_json(const CandidateScore& c, const std::vector<std::string>& names) {
    Json j;
    j["feature"] = c.feature;
    j["name"] = names.at(c.feature);
    j["score"] = c.score;
    j["relevance"] = c.relevance;
    if (c.pair_cor) j["pair_cor"] = *c.pair_cor;
    if (c.sigma) j["sigma"] = *c.sigma;
    if (c.phi) j["phi"] = *c.phi;
    return j;
}

Json classifier_list(const std::vector<eval::Classifier>& classifiers) {
    Json j = Json::array();
    for (auto c : classifiers) j.push_back(eval::classifier_name(c));
    return j;
}

Json wilcoxon_json(const stats::RankSumResult& r) {
    return Json{{"statistic", r.statistic}, {"p_value", r.p_value}, {"exact", r.exact}};
}

}  // namespace

Json envelope(const std::string& artifact, Json config, std::uint64_t seed) {
    Json j;
    j["artifact"] = artifact;
    j["version"] = kToolkitVersion;
    j["config"] = std::move(config);
    j["seed"] = seed;
    return j;
}

Json to_json(const MethodConfig& c) {
    Json j;
    j["method"] = std::string(method_name(c.method));
    j["delta"] = c.delta;
    j["fcbf_gamma"] = c.fcbf_gamma;
    j["relieff_neighbors"] = c.relieff_neighbors;
    j["relieff_sample"] = c.relieff_sample;
    j["seed"] = c.seed;
    j["reference"] = c.reference;
    return j;
}

Json to_json(const SelectionTrace& t, const std::vector<std::string>& names) {
    Json j;
    j["method"] = std::string(method_name(t.method));
    j["delta"] = t.delta;
    Json selected = Json::array();
    for (auto f : t.selected) selected.push_back(f);
    j["selected"] = std::move(selected);
    Json sel_names = Json::array();
    for (auto f : t.selected) sel_names.push_back(names.at(f));
    j["selected_names"] = std::move(sel_names);
    Json picks = Json::array();
    for (const auto& p : t.picks) picks.push_back(candidate_json(p, names));
    j["picks"] = std::move(picks);
    if (!t.candidates.empty()) {
        Json iters = Json::array();
        for (const auto& it : t.candidates) {
            Json row = Json::array();
            for (const auto& c : it) row.push_back(candidate_json(c, names));
            iters.push_back(std::move(row));
        }
        j["candidates"] = std::move(iters);
    }
    if (!t.weights.empty()) j["weights"] = t.weights;
    if (t.seed) j["relieff_seed"] = *t.seed;
    return j;
}

Json to_json(const mdl::DiscretizationModel& model) {
    Json features = Json::array();
    for (const auto& f : model.features) {
        features.push_back(Json{{"name", f.name}, {"cuts", f.cuts}, {"arity", f.arity()}});
    }
    return Json{{"features", std::move(features)}};
}

mdl::DiscretizationModel model_from_json(const Json& j) {
    try {
        mdl::DiscretizationModel model;
        for (const auto& f : j.at("features")) {
            mdl::FeatureCuts fc{f.at("name").get<std::string>(), f.at("cuts").get<std::vector<double>>()};
            for (std::size_t i = 1; i < fc.cuts.size(); ++i) {
                if (!(fc.cuts[i - 1] < fc.cuts[i])) {
                    throw InputError("cuts for '" + fc.name + "' are not strictly increasing");
                }
            }
            model.features.push_back(std::move(fc));
        }
        return model;
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("malformed discretization model: ") + e.what());
    }
}

Json to_json(const std::vector<ColumnProvenance>& provenance) {
    Json cols = Json::array();
    for (const auto& p : provenance) {
        Json j;
        j["name"] = p.name;
        j["kind"] = column_kind_name(p.kind);
        j["arity"] = p.arity;
        j["discretized"] = p.discretized;
        j["missing"] = p.missing;
        j["imputed_code"] = p.imputed_code ? Json(*p.imputed_code) : Json(nullptr);
        cols.push_back(std::move(j));
    }
    return cols;
}

Json to_json(const eval::CurveResult& c, const std::vector<eval::Classifier>& classifiers) {
    Json j;
    j["method"] = std::string(method_name(c.method));
    j["requested"] = c.requested;
    j["length"] = c.length;
    j["truncated"] = c.truncated;
    j["min_native"] = c.min_native;
    j["max_native"] = c.max_native;
    j["classifiers"] = classifier_list(classifiers);
    Json points = Json::array();
    for (std::size_t k = 0; k < c.length; ++k) {
        Json p;
        p["k"] = k + 1;
        p["mean_error"] = c.mean_error[k];
        Json per = Json::object();
        for (std::size_t i = 0; i < classifiers.size(); ++i) {
            per[eval::classifier_name(classifiers[i])] = c.classifier_error[i][k];
        }
        p["classifier_error"] = std::move(per);
        Json reps = Json::array();
        for (const auto& r : c.repeat_error) reps.push_back(r[k]);
        p["repeat_error"] = std::move(reps);
        points.push_back(std::move(p));
    }
    j["points"] = std::move(points);
    j["leakage_checked_folds"] = c.leakage_checked_folds;
    return j;
}

Json to_json(const eval::BenchmarkReport& r) {
    Json j;
    j["n_rows"] = r.n_rows;
    j["n_features"] = r.n_features;
    j["max_k"] = r.max_k;
    j["n_folds"] = r.n_folds;
    j["n_repeats"] = r.n_repeats;
    j["alpha"] = r.alpha;
    j["sample_mode"] = eval::sample_mode_name(r.sample_mode);
    j["classifiers"] = classifier_list(r.classifiers);
    j["reference"] = std::string(method_name(r.methods.at(r.reference).config.method));
    Json methods = Json::array();
    for (const auto& m : r.methods) {
        Json mj;
        mj["method"] = std::string(method_name(m.config.method));
        mj["config"] = to_json(m.config);
        mj["best_k"] = m.best_k;
        mj["best_error"] = m.best_error;
        mj["samples"] = m.samples;
        mj["wilcoxon"] = wilcoxon_json(m.wilcoxon);
        mj["marker"] = eval::marker_name(m.marker);
        mj["curve_length"] = m.curve.length;
        mj["truncated"] = m.curve.truncated;
        mj["min_native"] = m.curve.min_native;
        mj["mean_error"] = m.curve.mean_error;
        methods.push_back(std::move(mj));
    }
    j["methods"] = std::move(methods);
    Json fried = Json::array();
    for (const auto& row : r.friedman) {
        Json fj;
        fj["k"] = row.k;
        fj["mean_error"] = row.mean_error;
        fj["padded"] = row.padded;
        fj["statistic"] = row.result.statistic;
        fj["p_value"] = row.result.p_value;
        fj["df"] = row.result.df;
        fj["mean_ranks"] = row.result.mean_ranks;
        fj["significant"] = row.significant;
        fried.push_back(std::move(fj));
    }
    j["friedman"] = std::move(fried);
    j["leakage"] = Json{{"checked_folds", r.leakage_checked_folds}, {"passed", r.leakage_passed}};
    return j;
}

Json error_json(const std::string& kind, const std::string& message) {
    return Json{{"error", Json{{"kind", kind}, {"message", message}}}, {"version", kToolkitVersion}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace rcdfs::io
