#include "rcdfs/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <numeric>
#include <sstream>
#include <thread>

#include "rcdfs/baselines.hpp"
#include "rcdfs/classifiers.hpp"
#include "rcdfs/error.hpp"
#include "rcdfs/random.hpp"

namespace rcdfs::eval {

namespace {

// Runs task(i) for i in [0, n) on up to `threads` workers. The first exception
// thrown by any task is rethrown after all workers stop.
template <typename Task>
void parallel_for(std::size_t n, std::size_t threads, Task&& task) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    {
        std::vector<std::jthread> workers;
        for (std::size_t t = 0; t < threads; ++t) {
            workers.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= n) return;
                    try {
                        task(i);
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        next.store(n);
                    }
                }
            });
        }
    }
    if (failure) std::rethrow_exception(failure);
}

std::vector<double> nbc_prefix_predictions_errors(const DiscreteTable& train,
                                                  const DiscreteTable& full,
                                                  std::span<const std::size_t> test_rows,
                                                  std::span<const std::size_t> ranked) {
    const auto model = NaiveBayes::fit(train, ranked);
    const std::size_t L = ranked.size();
    const Code ca = model.class_arity();
    std::vector<std::size_t> wrong(L, 0);
    std::vector<double> score(ca);
    const auto labels = full.labels();
    for (std::size_t r : test_rows) {
        for (Code c = 0; c < ca; ++c) score[c] = model.log_prior(c);
        for (std::size_t i = 0; i < L; ++i) {
            const Code v = full.column(ranked[i])[r];
            for (Code c = 0; c < ca; ++c) {
                if (!std::isinf(score[c])) score[c] += model.log_likelihood(i, v, c);
            }
            Code best = 0;
            for (Code c = 1; c < ca; ++c) {
                if (score[c] > score[best]) best = c;
            }
            if (best != labels[r]) ++wrong[i];
        }
    }
    std::vector<double> err(L);
    for (std::size_t i = 0; i < L; ++i) {
        err[i] = static_cast<double>(wrong[i]) / static_cast<double>(test_rows.size());
    }
    return err;
}

std::vector<double> knn_prefix_errors(const DiscreteTable& train, const DiscreteTable& full,
                                      std::span<const std::size_t> test_rows,
                                      std::span<const std::size_t> ranked) {
    const std::size_t L = ranked.size();
    const std::size_t n = train.n_rows();
    std::vector<std::size_t> wrong(L, 0);
    std::vector<std::size_t> dist(n);
    const auto train_labels = train.labels();
    const auto labels = full.labels();
    for (std::size_t r : test_rows) {
        std::fill(dist.begin(), dist.end(), 0);
        for (std::size_t i = 0; i < L; ++i) {
            const auto col = train.column(ranked[i]);
            const Code v = full.column(ranked[i])[r];
            std::size_t best = 0;
            for (std::size_t t = 0; t < n; ++t) {
                dist[t] += (col[t] != v) ? 1 : 0;
                if (dist[t] < dist[best]) best = t;
            }
            if (train_labels[best] != labels[r]) ++wrong[i];
        }
    }
    std::vector<double> err(L);
    for (std::size_t i = 0; i < L; ++i) {
        err[i] = static_cast<double>(wrong[i]) / static_cast<double>(test_rows.size());
    }
    return err;
}

// Structural leakage check: train and test partition [0, n) with no overlap.
void check_partition(std::size_t n_rows, std::span<const std::size_t> train,
                     std::span<const std::size_t> test) {
    std::vector<char> seen(n_rows, 0);
    for (std::size_t r : test) seen[r] = 1;
    for (std::size_t r : train) {
        if (seen[r]) throw std::logic_error("fold leakage: row " + std::to_string(r) + " in train and test");
        seen[r] = 2;
    }
    if (std::any_of(seen.begin(), seen.end(), [](char c) { return c == 0; })) {
        throw std::logic_error("fold plan does not cover every row");
    }
}

}  // namespace

std::vector<std::size_t> FoldPlan::test_rows(std::size_t repeat, std::size_t fold) const {
    std::vector<std::size_t> rows;
    const auto& assign = fold_of.at(repeat);
    for (std::size_t r = 0; r < assign.size(); ++r) {
        if (assign[r] == fold) rows.push_back(r);
    }
    return rows;
}

std::vector<std::size_t> FoldPlan::train_rows(std::size_t repeat, std::size_t fold) const {
    std::vector<std::size_t> rows;
    const auto& assign = fold_of.at(repeat);
    for (std::size_t r = 0; r < assign.size(); ++r) {
        if (assign[r] != fold) rows.push_back(r);
    }
    return rows;
}

FoldPlan make_fold_plan(std::span<const Code> labels, std::size_t n_folds, std::size_t n_repeats,
                        std::uint64_t seed) {
    const std::size_t n = labels.size();
    if (n_folds < 2) throw InputError("need at least two folds");
    if (n_repeats < 1) throw InputError("need at least one repeat");
    if (n_folds > n) {
        throw InputError("cannot split " + std::to_string(n) + " rows into " +
                         std::to_string(n_folds) + " folds");
    }
    FoldPlan plan;
    plan.n_rows = n;
    plan.n_folds = n_folds;
    plan.n_repeats = n_repeats;
    plan.seed = seed;
    Code max_label = 0;
    for (Code c : labels) max_label = std::max(max_label, c);
    for (std::size_t rep = 0; rep < n_repeats; ++rep) {
        Rng rng(derive_seed(seed, rep));
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        shuffle(rng, perm);
        std::stable_sort(perm.begin(), perm.end(),
                         [&](std::size_t a, std::size_t b) { return labels[a] < labels[b]; });
        std::vector<std::uint32_t> assign(n);
        for (std::size_t i = 0; i < n; ++i) assign[perm[i]] = static_cast<std::uint32_t>(i % n_folds);
        plan.fold_of.push_back(std::move(assign));
    }
    return plan;
}

std::string classifier_name(Classifier c) { return c == Classifier::nbc ? "nbc" : "1nn"; }

std::string sample_mode_name(SampleMode m) { return m == SampleMode::repeat ? "repeat" : "fold"; }

SampleMode parse_sample_mode(const std::string& name) {
    if (name == "repeat") return SampleMode::repeat;
    if (name == "fold") return SampleMode::fold;
    throw InputError("unknown sample mode '" + name + "' (expected repeat or fold)");
}

std::string marker_name(Marker m) {
    switch (m) {
        case Marker::degradation: return "degradation";
        case Marker::improvement: return "improvement";
        case Marker::none: break;
    }
    return "none";
}

std::size_t default_curve_length(std::size_t n_features) {
    return std::max<std::size_t>(1, std::min<std::size_t>(50, n_features / 2));
}

std::vector<double> prefix_errors(const DiscreteTable& train, const DiscreteTable& full,
                                  std::span<const std::size_t> test_rows,
                                  std::span<const std::size_t> ranked, Classifier classifier) {
    if (test_rows.empty()) throw InputError("no test rows");
    if (ranked.empty()) return {};
    return classifier == Classifier::nbc ? nbc_prefix_predictions_errors(train, full, test_rows, ranked)
                                         : knn_prefix_errors(train, full, test_rows, ranked);
}

CurveResult curve(const DiscreteTable& table, const MethodConfig& config, std::size_t m,
                  const FoldPlan& plan, const HarnessOptions& options) {
    if (m < 1) throw InputError("curve length must be at least 1");
    if (plan.n_rows != table.n_rows()) throw InputError("fold plan does not match table rows");
    if (options.classifiers.empty()) throw InputError("no classifiers configured");
    m = std::min(m, table.n_features());

    MethodConfig cfg = config;
    cfg.delta = m;
    cfg.verbose = false;
    cfg.validate();

    const std::size_t n_tasks = plan.n_repeats * plan.n_folds;
    const std::size_t n_cls = options.classifiers.size();
    // errors[task][classifier] -> per-k error
    std::vector<std::vector<std::vector<double>>> errors(n_tasks);
    std::mutex observer_mutex;

    parallel_for(n_tasks, options.threads, [&](std::size_t task) {
        const std::size_t rep = task / plan.n_folds;
        const std::size_t fold = task % plan.n_folds;
        const auto train_rows = plan.train_rows(rep, fold);
        const auto test_rows = plan.test_rows(rep, fold);
        check_partition(table.n_rows(), train_rows, test_rows);
        if (test_rows.empty()) throw InputError("empty test fold");

        const DiscreteTable train = table.select_rows(train_rows);
        if (options.observer) {
            std::lock_guard lock(observer_mutex);
            options.observer(rep, fold, train_rows, test_rows, train);
        }
        MethodConfig fold_cfg = cfg;
        fold_cfg.seed = derive_seed(cfg.seed, task);
        const auto trace = run_method(train, fold_cfg);
        std::vector<std::size_t> ranked = trace.selected;
        if (ranked.size() > m) ranked.resize(m);

        auto& out = errors[task];
        for (Classifier c : options.classifiers) {
            out.push_back(prefix_errors(train, table, test_rows, ranked, c));
        }
    });

    CurveResult res;
    res.method = config.method;
    res.requested = m;
    res.leakage_checked_folds = n_tasks;
    res.min_native = m;
    for (const auto& e : errors) {
        const std::size_t native = e.front().size();
        res.min_native = std::min(res.min_native, native);
        res.max_native = std::max(res.max_native, native);
    }
    res.length = res.min_native;
    res.truncated = res.length < m;
    const std::size_t L = res.length;

    res.classifier_error.assign(n_cls, std::vector<double>(L, 0.0));
    res.mean_error.assign(L, 0.0);
    res.repeat_error.assign(plan.n_repeats, std::vector<double>(L, 0.0));
    res.fold_error.assign(plan.n_repeats,
                          std::vector<std::vector<double>>(plan.n_folds, std::vector<double>(L, 0.0)));
    for (std::size_t task = 0; task < n_tasks; ++task) {
        const std::size_t rep = task / plan.n_folds;
        const std::size_t fold = task % plan.n_folds;
        for (std::size_t k = 0; k < L; ++k) {
            double avg = 0.0;
            for (std::size_t c = 0; c < n_cls; ++c) {
                avg += errors[task][c][k];
                res.classifier_error[c][k] += errors[task][c][k] / static_cast<double>(n_tasks);
            }
            avg /= static_cast<double>(n_cls);
            res.fold_error[rep][fold][k] = avg;
            res.repeat_error[rep][k] += avg / static_cast<double>(plan.n_folds);
        }
    }
    for (std::size_t k = 0; k < L; ++k) {
        double total = 0.0;
        for (std::size_t rep = 0; rep < plan.n_repeats; ++rep) total += res.repeat_error[rep][k];
        res.mean_error[k] = total / static_cast<double>(plan.n_repeats);
    }
    return res;
}

namespace {

std::vector<double> block_samples(const CurveResult& c, SampleMode mode, std::size_t k_index) {
    std::vector<double> out;
    if (mode == SampleMode::repeat) {
        for (const auto& rep : c.repeat_error) out.push_back(rep[k_index]);
    } else {
        for (const auto& rep : c.fold_error) {
            for (const auto& fold : rep) out.push_back(fold[k_index]);
        }
    }
    return out;
}

// Mean over k = 1..K of a per-k series, padding past its end with its last value.
double prefix_mean(const std::vector<double>& per_k, std::size_t K) {
    double total = 0.0;
    for (std::size_t k = 0; k < K; ++k) total += per_k[std::min(k, per_k.size() - 1)];
    return total / static_cast<double>(K);
}

}  // namespace

BenchmarkReport compare(const DiscreteTable& table, const std::vector<MethodConfig>& methods,
                        const FoldPlan& plan, SampleMode mode, const HarnessOptions& options) {
    if (methods.size() < 2) throw InputError("compare needs at least two methods");
    for (std::size_t i = 0; i < methods.size(); ++i) {
        for (std::size_t j = i + 1; j < methods.size(); ++j) {
            if (methods[i].method == methods[j].method) {
                throw InputError("method '" + std::string(method_name(methods[i].method)) +
                                 "' listed twice");
            }
        }
    }
    const std::size_t n_blocks =
        mode == SampleMode::repeat ? plan.n_repeats : plan.n_repeats * plan.n_folds;
    if (n_blocks < 2) {
        throw InputError("compare needs at least two samples per method (use more repeats or fold mode)");
    }

    BenchmarkReport rep;
    rep.n_rows = table.n_rows();
    rep.n_features = table.n_features();
    rep.max_k = std::min<std::size_t>(50, table.n_features());
    rep.n_folds = plan.n_folds;
    rep.n_repeats = plan.n_repeats;
    rep.seed = plan.seed;
    rep.alpha = kAlpha;
    rep.sample_mode = mode;
    rep.classifiers = options.classifiers;

    for (const auto& cfg : methods) {
        MethodSummary s;
        s.config = cfg;
        s.config.delta = rep.max_k;
        s.curve = curve(table, s.config, rep.max_k, plan, options);
        if (s.curve.length == 0) {
            throw InputError("method '" + std::string(method_name(cfg.method)) +
                             "' selected no features in some fold");
        }
        const auto& err = s.curve.mean_error;
        const std::size_t best = static_cast<std::size_t>(
            std::min_element(err.begin(), err.end()) - err.begin());
        s.best_k = best + 1;
        s.best_error = err[best];
        s.samples = block_samples(s.curve, mode, best);
        rep.leakage_checked_folds += s.curve.leakage_checked_folds;
        rep.methods.push_back(std::move(s));
    }

    rep.reference = 0;
    for (std::size_t i = 0; i < rep.methods.size(); ++i) {
        if (rep.methods[i].config.method == Method::rcdfs) {
            rep.reference = i;
            break;
        }
    }
    const auto& ref = rep.methods[rep.reference];
    for (auto& s : rep.methods) {
        s.wilcoxon = stats::wilcoxon_rank_sum(s.samples, ref.samples);
        if (&s != &ref && s.wilcoxon.p_value < rep.alpha) {
            s.marker = s.best_error > ref.best_error ? Marker::degradation : Marker::improvement;
        }
    }

    std::vector<std::size_t> ranges;
    for (std::size_t K = 5; K <= 50 && K <= rep.max_k; K += 5) ranges.push_back(K);
    if (ranges.empty()) ranges.push_back(rep.max_k);
    for (std::size_t K : ranges) {
        FriedmanRow row;
        row.k = K;
        std::vector<std::vector<double>> scores;
        for (const auto& s : rep.methods) {
            std::vector<double> blocks;
            if (mode == SampleMode::repeat) {
                for (const auto& r : s.curve.repeat_error) blocks.push_back(prefix_mean(r, K));
            } else {
                for (const auto& r : s.curve.fold_error) {
                    for (const auto& f : r) blocks.push_back(prefix_mean(f, K));
                }
            }
            row.mean_error.push_back(prefix_mean(s.curve.mean_error, K));
            row.padded.push_back(s.curve.length < K);
            scores.push_back(std::move(blocks));
        }
        row.result = stats::friedman_test(scores);
        row.significant = row.result.p_value < rep.alpha;
        rep.friedman.push_back(std::move(row));
    }
    return rep;
}

std::string format_report(const BenchmarkReport& report) {
    std::ostringstream os;
    char buf[256];
    const auto upper = [](std::string_view s) {
        std::string out(s);
        for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        return out;
    };
    std::string classifiers;
    for (auto c : report.classifiers) {
        if (!classifiers.empty()) classifiers += ", ";
        classifiers += classifier_name(c);
    }
    std::snprintf(buf, sizeof buf,
                  "Best-k error, (M=%zu)x(N=%zu)-fold CV, classifiers: %s, samples per %s\n",
                  report.n_repeats, report.n_folds, classifiers.c_str(),
                  sample_mode_name(report.sample_mode).c_str());
    os << buf;
    std::snprintf(buf, sizeof buf, "%-10s %7s %9s %7s  %s\n", "Method", "best-k", "Err(%)", "p-val", "");
    os << buf;
    for (std::size_t i = 0; i < report.methods.size(); ++i) {
        const auto& s = report.methods[i];
        const char* mark = s.marker == Marker::degradation   ? "∘"
                           : s.marker == Marker::improvement ? "•"
                                                             : "";
        if (i == report.reference) {
            std::snprintf(buf, sizeof buf, "%-10s %7zu %9.2f %7s  %s\n",
                          upper(method_name(s.config.method)).c_str(), s.best_k,
                          100.0 * s.best_error, "-", "(reference)");
        } else {
            std::snprintf(buf, sizeof buf, "%-10s %7zu %9.2f %7.4f  %s\n",
                          upper(method_name(s.config.method)).c_str(), s.best_k,
                          100.0 * s.best_error, s.wilcoxon.p_value, mark);
        }
        os << buf;
    }
    std::snprintf(buf, sizeof buf,
                  "∘ statistical degradation at significance level %.2f\n"
                  "• statistical improvement at significance level %.2f\n\n",
                  report.alpha, report.alpha);
    os << buf;

    os << "Mean error (%) over 1..k selected features, Friedman test across methods\n";
    std::snprintf(buf, sizeof buf, "%-10s", "");
    os << buf;
    for (const auto& row : report.friedman) {
        std::snprintf(buf, sizeof buf, " %8s", ("k=" + std::to_string(row.k)).c_str());
        os << buf;
    }
    os << "\n";
    for (std::size_t i = 0; i < report.methods.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%-10s", upper(method_name(report.methods[i].config.method)).c_str());
        os << buf;
        for (const auto& row : report.friedman) {
            std::snprintf(buf, sizeof buf, " %8.2f", 100.0 * row.mean_error[i]);
            os << buf;
        }
        os << "\n";
    }
    std::snprintf(buf, sizeof buf, "%-10s", "p-val");
    os << buf;
    for (const auto& row : report.friedman) {
        std::snprintf(buf, sizeof buf, " %8.4f", row.result.p_value);
        os << buf;
    }
    os << "\n";
    std::snprintf(buf, sizeof buf, "%-10s", "");
    os << buf;
    for (const auto& row : report.friedman) {
        std::snprintf(buf, sizeof buf, " %8s", row.significant ? "S" : "N");
        os << buf;
    }
    os << "\n";
    return os.str();
}

}  // namespace rcdfs::eval
