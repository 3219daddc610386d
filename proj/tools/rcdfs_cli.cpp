#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "rcdfs/baselines.hpp"
#include "rcdfs/dataset_io.hpp"
#include "rcdfs/error.hpp"
#include "rcdfs/harness.hpp"
#include "rcdfs/json_io.hpp"
#include "rcdfs/synth.hpp"

namespace {

using rcdfs::io::Json;

struct DataOptions {
    std::string input;
    std::string format;
    std::string class_column;
    std::string model_path;
    bool no_discretize = false;
};

struct Common {
    std::uint64_t seed = 1;
    std::string output;
};

struct SelectorOptions {
    std::string method = "rcdfs";
    std::size_t delta = 10;
    double gamma = 0.0;
    std::size_t relieff_neighbors = 5;
    std::size_t relieff_sample = 30;
    bool reference = false;
};

struct Loaded {
    rcdfs::io::Prepared prepared;
    Json dataset;
};

void add_data_options(CLI::App* app, DataOptions& d) {
    app->add_option("--input", d.input, "Dataset file (CSV or ARFF)")->required();
    app->add_option("--format", d.format, "csv or arff (default: from the file extension)");
    app->add_option("--class", d.class_column, "Class column name or 0-based index (default: last)");
    app->add_option("--model", d.model_path, "Apply cuts from a saved discretization model");
    app->add_flag("--no-discretize", d.no_discretize,
                  "Code numeric columns by distinct value instead of MDL discretization");
}

void add_common(CLI::App* app, Common& c) {
    app->add_option("--seed", c.seed, "Random seed")->envname("RCDFS_SEED");
    app->add_option("--output", c.output, "Output file (default: stdout)");
}

void add_selector_options(CLI::App* app, SelectorOptions& s) {
    app->add_option("--gamma", s.gamma, "FCBF relevance threshold on SU(F;C)");
    app->add_option("--relieff-neighbors", s.relieff_neighbors, "ReliefF nearest hits/misses");
    app->add_option("--relieff-sample", s.relieff_sample, "ReliefF sampled instances");
    app->add_flag("--reference", s.reference, "Use the non-incremental RCDFS scorer");
}

rcdfs::MethodConfig method_config(const std::string& method, const SelectorOptions& s,
                                  std::uint64_t seed) {
    rcdfs::MethodConfig cfg;
    cfg.method = rcdfs::parse_method(method);
    cfg.delta = s.delta;
    cfg.fcbf_gamma = s.gamma;
    cfg.relieff_neighbors = s.relieff_neighbors;
    cfg.relieff_sample = s.relieff_sample;
    cfg.seed = seed;
    cfg.reference = s.reference;
    cfg.validate();
    return cfg;
}

Loaded load_dataset(const DataOptions& d) {
    const auto format = d.format.empty() ? rcdfs::io::guess_format(d.input) : rcdfs::io::parse_format(d.format);
    const auto raw = rcdfs::io::load(d.input, format, d.class_column);
    std::optional<rcdfs::mdl::DiscretizationModel> model;
    if (!d.model_path.empty()) {
        std::ifstream in(d.model_path);
        if (!in) throw rcdfs::InputError("cannot open '" + d.model_path + "'");
        Json j;
        try {
            j = Json::parse(in);
        } catch (const nlohmann::json::exception& e) {
            throw rcdfs::InputError("cannot parse '" + d.model_path + "': " + e.what());
        }
        model = rcdfs::io::model_from_json(j.contains("model") ? j.at("model") : j);
    }
    rcdfs::io::PrepareOptions opts;
    opts.discretize = !d.no_discretize;
    Loaded out{rcdfs::io::prepare(raw, model, opts), {}};
    const auto& t = out.prepared.table;
    out.dataset["input"] = d.input;
    out.dataset["format"] = format == rcdfs::io::Format::arff ? "arff" : "csv";
    out.dataset["class"] = raw.label.name;
    out.dataset["n_rows"] = t.n_rows();
    out.dataset["n_features"] = t.n_features();
    out.dataset["class_names"] = out.prepared.class_names;
    out.dataset["discretize"] = !d.no_discretize;
    out.dataset["model"] = d.model_path.empty() ? Json(nullptr) : Json(d.model_path);
    return out;
}

rcdfs::eval::HarnessOptions harness_options(const std::vector<std::string>& classifiers,
                                            std::size_t threads) {
    rcdfs::eval::HarnessOptions opts;
    opts.threads = threads;
    opts.classifiers.clear();
    for (const auto& c : classifiers) {
        if (c == "nbc") {
            opts.classifiers.push_back(rcdfs::eval::Classifier::nbc);
        } else if (c == "1nn") {
            opts.classifiers.push_back(rcdfs::eval::Classifier::knn1);
        } else {
            throw rcdfs::InputError("unknown classifier '" + c + "' (expected nbc or 1nn)");
        }
    }
    return opts;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw rcdfs::InputError("cannot write '" + path + "'");
    out << text;
}

int fail(const std::string& kind, const std::string& message, int code) {
    std::cerr << rcdfs::io::dump(rcdfs::io::error_json(kind, message));
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Feature selection toolkit: RCDFS and baseline selectors, MDL discretization, "
                 "cross-validated benchmarks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", rcdfs::io::kToolkitVersion);

    DataOptions data;
    Common common;
    SelectorOptions sel;
    bool verbose = false;
    std::size_t m = 0;
    std::size_t folds = 10;
    std::size_t repeats = 0;
    std::size_t threads = 0;
    std::vector<std::string> methods;
    std::vector<std::string> classifiers{"nbc", "1nn"};
    std::string sample_mode = "repeat";
    std::string table_path;
    std::string synth_name;

    auto* select = app.add_subcommand("select", "Rank features with one method");
    add_data_options(select, data);
    add_common(select, common);
    select->add_option("--method", sel.method, "rcdfs, mim, mrmr, cmim, fcbf or relieff");
    select->add_option("--delta", sel.delta, "Number of features to select");
    add_selector_options(select, sel);
    select->add_flag("--verbose", verbose, "Record every candidate's score at every iteration");

    const auto add_cv = [&](CLI::App* sub) {
        sub->add_option("--folds", folds, "Folds per repeat");
        sub->add_option("--repeats", repeats, "Cross-validation repeats");
        sub->add_option("--threads", threads, "Worker threads (0: all cores)");
        sub->add_option("--classifier", classifiers, "nbc and/or 1nn")->delimiter(',');
    };

    auto* curve = app.add_subcommand("curve", "Cross-validated error for k = 1..m selected features");
    add_data_options(curve, data);
    add_common(curve, common);
    curve->add_option("--method", sel.method, "Selection method");
    curve->add_option("--m", m, "Curve length (default: min(50, features/2))");
    add_selector_options(curve, sel);
    add_cv(curve);

    auto* compare = app.add_subcommand("compare", "Benchmark several methods with significance tests");
    add_data_options(compare, data);
    add_common(compare, common);
    compare->add_option("--method", methods, "Comma-separated methods (at least two)")
        ->delimiter(',');
    add_selector_options(compare, sel);
    add_cv(compare);
    compare->add_option("--sample-mode", sample_mode, "Wilcoxon samples: repeat or fold");
    compare->add_option("--table", table_path, "Write the text report here");

    auto* discretize = app.add_subcommand("discretize", "Fit MDL cuts for every numeric column");
    add_data_options(discretize, data);
    add_common(discretize, common);

    auto* synth = app.add_subcommand("synth", "Write a synthetic dataset as CSV");
    synth->add_option("name", synth_name, "xor, duplicate or planted")->required();
    add_common(synth, common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail("usage", e.what(), 2);
    }

    try {
        if (select->parsed()) {
            auto loaded = load_dataset(data);
            const auto& table = loaded.prepared.table;
            auto cfg = method_config(sel.method, sel, common.seed);
            cfg.verbose = verbose;
            const auto trace = rcdfs::run_method(table, cfg);
            Json config = rcdfs::io::to_json(cfg);
            config["verbose"] = verbose;
            config["dataset"] = loaded.dataset;
            Json out = rcdfs::io::envelope("selection_trace", std::move(config), common.seed);
            out["trace"] = rcdfs::io::to_json(trace, table.feature_names());
            emit(common.output, rcdfs::io::dump(out));
        } else if (curve->parsed()) {
            auto loaded = load_dataset(data);
            const auto& table = loaded.prepared.table;
            if (m == 0) m = rcdfs::eval::default_curve_length(table.n_features());
            sel.delta = m;
            const auto cfg = method_config(sel.method, sel, common.seed);
            if (repeats == 0) repeats = 1;
            const auto plan = rcdfs::eval::make_fold_plan(table.labels(), folds, repeats, common.seed);
            const auto opts = harness_options(classifiers, threads);
            const auto result = rcdfs::eval::curve(table, cfg, m, plan, opts);
            Json config = rcdfs::io::to_json(cfg);
            config["m"] = m;
            config["folds"] = folds;
            config["repeats"] = repeats;
            config["dataset"] = loaded.dataset;
            Json out = rcdfs::io::envelope("curve", std::move(config), common.seed);
            out["curve"] = rcdfs::io::to_json(result, opts.classifiers);
            emit(common.output, rcdfs::io::dump(out));
        } else if (compare->parsed()) {
            if (methods.empty()) methods = {"rcdfs", "mim", "mrmr", "cmim", "fcbf", "relieff"};
            if (methods.size() < 2) throw rcdfs::InputError("compare needs at least two methods");
            auto loaded = load_dataset(data);
            const auto& table = loaded.prepared.table;
            std::vector<rcdfs::MethodConfig> cfgs;
            for (const auto& name : methods) cfgs.push_back(method_config(name, sel, common.seed));
            if (repeats == 0) repeats = 10;
            const auto mode = rcdfs::eval::parse_sample_mode(sample_mode);
            const auto plan = rcdfs::eval::make_fold_plan(table.labels(), folds, repeats, common.seed);
            const auto opts = harness_options(classifiers, threads);
            const auto report = rcdfs::eval::compare(table, cfgs, plan, mode, opts);
            Json config;
            config["methods"] = methods;
            config["folds"] = folds;
            config["repeats"] = repeats;
            config["sample_mode"] = sample_mode;
            config["fcbf_gamma"] = sel.gamma;
            config["relieff_neighbors"] = sel.relieff_neighbors;
            config["relieff_sample"] = sel.relieff_sample;
            config["dataset"] = loaded.dataset;
            Json out = rcdfs::io::envelope("benchmark_report", std::move(config), common.seed);
            out["report"] = rcdfs::io::to_json(report);
            const std::string text = rcdfs::eval::format_report(report);
            emit(common.output, rcdfs::io::dump(out));
            if (!table_path.empty()) {
                emit(table_path, text);
            } else if (!common.output.empty()) {
                std::cout << text;
            } else {
                std::cerr << text;
            }
        } else if (discretize->parsed()) {
            if (!data.model_path.empty()) throw rcdfs::InputError("discretize fits a model; --model is not allowed");
            if (data.no_discretize) throw rcdfs::InputError("discretize cannot be combined with --no-discretize");
            auto loaded = load_dataset(data);
            Json config;
            config["dataset"] = loaded.dataset;
            Json out = rcdfs::io::envelope("discretization_model", std::move(config), common.seed);
            out["model"] = rcdfs::io::to_json(loaded.prepared.model);
            out["columns"] = rcdfs::io::to_json(loaded.prepared.provenance);
            emit(common.output, rcdfs::io::dump(out));
        } else if (synth->parsed()) {
            const auto table = rcdfs::synth::by_name(synth_name, common.seed);
            emit(common.output, rcdfs::io::to_csv(rcdfs::io::to_raw(table)));
        }
    } catch (const rcdfs::InputError& e) {
        return fail("input", e.what(), 2);
    } catch (const std::exception& e) {
        return fail("internal", e.what(), 1);
    }
    return 0;
}
