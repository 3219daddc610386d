// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "rcdfs/baselines.hpp"
#include "rcdfs/dataset_io.hpp"
#include "rcdfs/discretizer.hpp"
#include "rcdfs/harness.hpp"
#include "rcdfs/info.hpp"
#include "rcdfs/rcdfs_select.hpp"
#include "rcdfs/stats.hpp"
#include "rcdfs/synth.hpp"

using namespace rcdfs;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(const char* f, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

// 1. cor identity on random tables.
Outcome identity() {
    const auto t0 = Clock::now();
    Rng rng(1001);
    oracle::TableShape shape{2, 6, 2, 4, 20, 300, 2, 4};
    double worst = 0.0;
    std::size_t pairs = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const auto t = oracle::random_table(rng, shape);
        for (std::size_t f = 0; f < t.n_features(); ++f) {
            for (std::size_t s = 0; s < t.n_features(); ++s) {
                if (f == s) continue;
                const Var F = Var::feature(f), S = Var::feature(s), C = Var::label();
                const double lhs =
                    info::mutual_information(t, F, S) - info::conditional_mutual_information(t, F, S, C);
                const double rhs =
                    info::mutual_information(t, F, C) - info::conditional_mutual_information(t, F, C, S);
                worst = std::max(worst, std::abs(lhs - rhs));
                ++pairs;
            }
        }
    }
    const double secs = seconds_since(t0);
    return {worst < 1e-9 && secs < 30.0,
            std::to_string(pairs) + " pairs, max deviation " + fmt("%.3g", worst) + ", " +
                fmt("%.2f s", secs)};
}

struct EquivalenceRun {
    DiscreteTable table;
    SelectionTrace fast;
    SelectionTrace reference;
};

std::vector<EquivalenceRun> equivalence_runs;

// 2. fast vs reference scorer.
Outcome equivalence() {
    const auto t0 = Clock::now();
    Rng rng(2002);
    oracle::TableShape shape{10, 20, 2, 5, 20, 300, 2, 4};
    std::size_t same = 0;
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        auto t = oracle::random_table(rng, shape);
        auto fast = select_fast(t, 10, true);
        auto ref = select_reference(t, 10, true);
        if (fast.selected == ref.selected) ++same;
        for (std::size_t i = 0; i < std::min(fast.picks.size(), ref.picks.size()); ++i) {
            worst = std::max(worst, std::abs(fast.picks[i].score - ref.picks[i].score));
        }
        equivalence_runs.push_back({std::move(t), std::move(fast), std::move(ref)});
    }
    const double secs = seconds_since(t0);
    return {same == 100 && worst < 1e-9 && secs < 60.0,
            std::to_string(same) + "/100 identical sequences, max |dJ| " + fmt("%.3g", worst) + ", " +
                fmt("%.2f s", secs)};
}

// 3. accumulator sigma vs explicit population standard deviation.
Outcome dispersion() {
    double worst = 0.0;
    std::size_t checked = 0;
    for (const auto& run : equivalence_runs) {
        const auto& tr = run.fast;
        for (std::size_t it = 1; it < tr.candidates.size(); ++it) {
            for (const auto& c : tr.candidates[it]) {
                std::vector<double> cors;
                for (std::size_t s = 0; s < it; ++s) cors.push_back(pairwise_cor(run.table, c.feature, tr.selected[s]));
                worst = std::max(worst, std::abs(*c.sigma - oracle::population_sd(cors)));
                ++checked;
            }
        }
    }
    return {checked > 0 && worst < 1e-9,
            std::to_string(checked) + " (iteration, candidate) cells, max deviation " + fmt("%.3g", worst)};
}

bool both_in(const std::vector<std::size_t>& v, std::size_t n) {
    const std::size_t m = std::min(n, v.size());
    const bool a = std::find(v.begin(), v.begin() + static_cast<long>(m), 0) != v.begin() + static_cast<long>(m);
    const bool b = std::find(v.begin(), v.begin() + static_cast<long>(m), 1) != v.begin() + static_cast<long>(m);
    return a && b;
}

// 4. parity features recovered by complementarity-aware methods.
Outcome complementarity() {
    std::size_t rcdfs_ok = 0, cmim_ok = 0, mim_ok = 0, oracle_ok = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto t = synth::xor_table(seed);
        const auto r = select_fast(t, 3);
        const auto c = cmim_select(t, 3);
        const auto m = mim_rank(t, t.n_features());
        if (both_in(r.selected, 3)) ++rcdfs_ok;
        if (both_in(c.selected, 3)) ++cmim_ok;
        const auto pos0 = std::find(m.selected.begin(), m.selected.end(), 0) - m.selected.begin();
        const auto pos1 = std::find(m.selected.begin(), m.selected.end(), 1) - m.selected.begin();
        if (pos0 >= 5 && pos1 >= 5) ++mim_ok;
        if (oracle::rcdfs(t, 3).selected() == r.selected && oracle::cmim(t, 3).selected() == c.selected &&
            oracle::mim(t, t.n_features()).selected() == m.selected) {
            ++oracle_ok;
        }
    }
    return {rcdfs_ok == 100 && cmim_ok == 100 && mim_ok == 100 && oracle_ok == 100,
            "rcdfs " + std::to_string(rcdfs_ok) + "/100, cmim " + std::to_string(cmim_ok) +
                "/100 with both parity bits in the first 3 picks; mim " + std::to_string(mim_ok) +
                "/100 with both outside its top 5; oracle agreement " + std::to_string(oracle_ok) + "/100"};
}

// 5. duplicate rejected.
Outcome redundancy() {
    const auto t = synth::duplicate_table();
    const std::set<std::size_t> want{0, 2};
    const auto as_set = [](const SelectionTrace& tr) {
        return std::set<std::size_t>(tr.selected.begin(), tr.selected.end());
    };
    const bool r = as_set(select_fast(t, 2)) == want && as_set(select_reference(t, 2)) == want;
    const bool m = as_set(mrmr_select(t, 2)) == want;
    const bool c = as_set(cmim_select(t, 2)) == want;
    const auto fcbf = fcbf_select(t, 0.0);
    const bool f = std::find(fcbf.selected.begin(), fcbf.selected.end(), 1) == fcbf.selected.end();
    const bool mim = as_set(mim_rank(t, 2)) == std::set<std::size_t>{0, 1};
    const double rel = info::mutual_information(t, Var::feature(0), Var::label());
    return {r && m && c && f && mim,
            "I(F1;C)=" + fmt("%.3f", rel) + " bits; rcdfs " + (r ? "ok" : "FAIL") + ", mrmr " +
                (m ? "ok" : "FAIL") + ", cmim " + (c ? "ok" : "FAIL") + ", fcbf " + (f ? "ok" : "FAIL") +
                ", mim " + (mim ? "ok" : "FAIL")};
}

// 6. MDL discretizer.
Outcome discretizer() {
    const auto cuts = mdl::fit_cuts(std::vector<double>{1, 2, 3, 10, 11, 12}, std::vector<Code>{0, 0, 0, 1, 1, 1});
    const bool one = cuts.size() == 1 && cuts[0] > 3.0 && cuts[0] < 10.0;
    Rng rng(6006);
    int with_cut = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 10 + uniform_below(rng, 91);
        std::vector<double> v(n);
        std::vector<Code> y(n);
        const Code k = static_cast<Code>(2 + uniform_below(rng, 2));
        for (std::size_t i = 0; i < n; ++i) {
            v[i] = uniform_unit(rng);
            y[i] = static_cast<Code>(i % k);
        }
        shuffle(rng, y);
        if (!mdl::fit_cuts(v, y).empty()) ++with_cut;
    }
    return {one && with_cut <= 50,
            std::string("two clusters: ") + std::to_string(cuts.size()) + " cut(s)" +
                (cuts.empty() ? "" : " at " + fmt("%g", cuts[0])) + "; shuffled labels: " +
                std::to_string(with_cut) + "/500 features cut"};
}

// 7. significance test oracles.
Outcome statistics() {
    Rng rng(7007);
    double worst = 0.0;
    std::size_t cases = 0;
    for (std::size_t n = 2; n <= 12; ++n) {
        for (std::size_t na = 1; na < n; ++na) {
            for (int trial = 0; trial < 10; ++trial) {
                std::vector<double> pool(n);
                for (std::size_t i = 0; i < n; ++i) pool[i] = static_cast<double>(i);
                shuffle(rng, pool);
                std::vector<double> a(pool.begin(), pool.begin() + static_cast<long>(na));
                std::vector<double> b(pool.begin() + static_cast<long>(na), pool.end());
                const auto r = stats::wilcoxon_rank_sum(a, b);
                worst = std::max(worst, std::abs(r.p_value - oracle::rank_sum_p_enumerated(a, b)));
                if (!r.exact) worst = 1.0;
                ++cases;
            }
        }
    }
    const auto sep = stats::wilcoxon_rank_sum(std::vector<double>{1, 2, 3, 4, 5}, std::vector<double>{6, 7, 8, 9, 10});
    const bool sep_ok = std::abs(sep.p_value - 2.0 / 252.0) < 1e-12;
    std::vector<std::vector<double>> s(3, std::vector<double>(10));
    for (std::size_t b = 0; b < 10; ++b) {
        s[0][b] = 0.1;
        s[1][b] = 0.2;
        s[2][b] = 0.3;
    }
    const auto f = stats::friedman_test(s);
    const bool f_ok = std::abs(f.statistic - 20.0) < 1e-9 && std::abs(f.p_value - 4.54e-5) < 1e-7;
    return {worst < 1e-12 && sep_ok && f_ok,
            std::to_string(cases) + " rank-sum cases, max |dp| " + fmt("%.3g", worst) + "; separated 5v5 p=" +
                fmt("%.8f", sep.p_value) + "; Friedman chi2=" + fmt("%.6f", f.statistic) + " p=" +
                fmt("%.4e", f.p_value)};
}

// 8. harness end-to-end on the planted dataset.
Outcome harness() {
    const auto t0 = Clock::now();
    const auto t = synth::planted_table(8008);
    const auto plan = eval::make_fold_plan(t.labels(), 10, 10, 8008);
    std::vector<MethodConfig> methods;
    for (Method m : {Method::rcdfs, Method::mim, Method::mrmr, Method::cmim, Method::fcbf, Method::relieff}) {
        MethodConfig c;
        c.method = m;
        methods.push_back(c);
    }
    std::size_t observed = 0;
    bool disjoint = true;
    eval::HarnessOptions opts;
    opts.observer = [&](std::size_t r, std::size_t f, std::span<const std::size_t> train,
                        std::span<const std::size_t> test, const DiscreteTable& seen) {
        ++observed;
        std::set<std::size_t> tr(train.begin(), train.end());
        for (auto row : test) {
            if (tr.count(row)) disjoint = false;
        }
        if (seen.n_rows() != train.size() || test.size() + train.size() != t.n_rows()) disjoint = false;
        for (auto row : plan.test_rows(r, f)) {
            if (tr.count(row)) disjoint = false;
        }
    };
    const auto rep = eval::compare(t, methods, plan, eval::SampleMode::repeat, opts);
    const double secs = seconds_since(t0);
    std::cout << eval::format_report(rep);
    const auto& rc = rep.methods[0];
    const auto& mim = rep.methods[1];
    const bool shape_ok = rep.methods.size() == 6 && rc.samples.size() == 10 && !rep.friedman.empty();
    const bool leak_ok = disjoint && rep.leakage_passed && observed == 600 && rep.leakage_checked_folds == 600;
    return {shape_ok && leak_ok && rc.best_error <= mim.best_error && secs < 300.0,
            "rcdfs best-k " + std::to_string(rc.best_k) + " err " + fmt("%.4f", rc.best_error) + " vs mim best-k " +
                std::to_string(mim.best_k) + " err " + fmt("%.4f", mim.best_error) + "; leakage guard " +
                (leak_ok ? "passed" : "FAILED") + " over " + std::to_string(observed) + " folds; " +
                fmt("%.1f s", secs)};
}

std::string read_all(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int run(const std::string& cmd) { return std::system((cmd + " 2>/dev/null").c_str()); }

// 9. CLI determinism.
Outcome determinism() {
    const fs::path dir = fs::absolute("acceptance_cli");
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string cli = RCDFS_CLI;
    const auto q = [](const fs::path& p) { return "'" + p.string() + "'"; };

    // numeric dataset for the discretizer
    {
        Rng rng(9009);
        std::ofstream out(dir / "numeric.csv");
        out << "a,b,c,class\n";
        for (int i = 0; i < 120; ++i) {
            const int cls = i % 3;
            out << cls * 2.0 + uniform_unit(rng) * 1.5 << "," << uniform_unit(rng) * 10 << ","
                << (cls == 0 ? "lo" : "hi") << ",k" << cls << "\n";
        }
    }
    const std::vector<std::pair<std::string, std::string>> commands{
        {"synth", "synth planted --seed 4 --output {out}"},
        {"synth_xor", "synth xor --seed 4 --output {out}"},
        {"select", "select --input {planted} --method rcdfs --delta 10 --seed 3 --verbose --output {out}"},
        {"select_relieff", "select --input {planted} --method relieff --delta 5 --seed 3 --output {out}"},
        {"curve", "curve --input {planted} --method mrmr --seed 3 --output {out}"},
        {"compare", "compare --input {planted} --method rcdfs,mim,fcbf --repeats 3 --seed 3 --output {out} --table {out}.txt"},
        {"discretize", "discretize --input {numeric} --output {out}"},
    };
    std::vector<std::string> failures;
    std::size_t identical = 0;
    for (int pass = 0; pass < 2; ++pass) {
        for (const auto& [name, tmpl] : commands) {
            std::string cmd = tmpl;
            const auto sub = [&](const std::string& key, const std::string& val) {
                for (auto pos = cmd.find(key); pos != std::string::npos; pos = cmd.find(key)) cmd.replace(pos, key.size(), val);
            };
            sub("{out}", q(dir / (name + "." + std::to_string(pass))));
            sub("{planted}", q(dir / "synth.0"));
            sub("{numeric}", q(dir / "numeric.csv"));
            if (run(q(cli) + " " + cmd) != 0) failures.push_back(name + " exited nonzero");
        }
    }
    for (const auto& [name, tmpl] : commands) {
        const auto a = read_all(dir / (name + ".0"));
        const auto b = read_all(dir / (name + ".1"));
        if (!a.empty() && a == b) {
            ++identical;
        } else {
            failures.push_back(name + " differs");
        }
    }
    const bool table_same = read_all(dir / "compare.0.txt") == read_all(dir / "compare.1.txt");
    if (!table_same) failures.push_back("compare table differs");
    std::string detail = std::to_string(identical) + "/" + std::to_string(commands.size()) +
                         " artifacts byte-identical across reruns";
    for (const auto& f : failures) detail += "; " + f;
    return {failures.empty(), detail};
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"C1 cor identity on 1000 random tables", identity},
        {"C2 fast and reference RCDFS agree", equivalence},
        {"C3 incremental dispersion matches explicit sigma", dispersion},
        {"C4 parity pair recovered (RCDFS, CMIM) and missed by MIM", complementarity},
        {"C5 duplicate feature rejected", redundancy},
        {"C6 MDL discretizer cuts and refusals", discretizer},
        {"C7 rank-sum and Friedman oracles", statistics},
        {"C8 benchmark on planted data", harness},
        {"C9 CLI artifacts are deterministic", determinism},
    };
    int failed = 0;
    std::vector<std::string> lines;
    for (const auto& [name, check] : criteria) {
        Outcome o;
        try {
            o = check();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.pass) ++failed;
        const std::string line = std::string(o.pass ? "PASS " : "FAIL ") + name + " :: " + o.detail;
        std::cout << line << std::endl;
        lines.push_back(line);
    }
    std::cout << "\nSummary\n";
    for (const auto& l : lines) std::cout << l << "\n";
    std::cout << (9 - failed) << "/9 criteria passed\n";
    return failed == 0 ? 0 : 1;
}
