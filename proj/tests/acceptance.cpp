// Acceptance run: one PASS/FAIL line per criterion. Optional arguments select
// a subset of criteria by number, e.g. `acceptance 1 8 9`.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "semolab/benchmarks.hpp"
#include "semolab/bounds.hpp"
#include "semolab/engine.hpp"
#include "semolab/experiments.hpp"
#include "semolab/stats.hpp"

using namespace semolab;

namespace {

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(double v, int digits = 3) {
    std::ostringstream s;
    s.precision(digits);
    s << std::fixed << v;
    return s.str();
}

double runtime(const TrialResult& r) {
    return r.censored ? std::numeric_limits<double>::infinity() : static_cast<double>(r.runtime_evals);
}

std::vector<TrialResult> grid(BenchmarkKind kind, AlgorithmSpec alg, std::vector<std::size_t> ns,
                              std::vector<std::size_t> ks, std::size_t trials, std::uint64_t seed) {
    ExperimentConfig c;
    c.benchmarks = {kind};
    c.algorithm = alg;
    c.n_grid = std::move(ns);
    c.k_grid = std::move(ks);
    c.trials_per_cell = trials;
    c.master_seed = seed;
    c.validate();
    return run_grid(c);
}

std::string failing_rows(const HypothesisReport& rep) {
    std::string out;
    for (const ReportRow& row : rep.rows)
        out += " " + row.cell + "=" + std::to_string(row.passed) + "/" + std::to_string(row.total);
    return out;
}

Verdict criterion_fronts() {
    const auto start = std::chrono::steady_clock::now();
    std::vector<BenchmarkSpec> specs;
    for (std::size_t n : {4, 8, 12, 16})
        specs.push_back({BenchmarkKind::Cocz, n, 0});
    for (std::size_t n = 2; n <= 16; ++n)
        specs.push_back({BenchmarkKind::Omm, n, 0});
    for (auto [n, k] : std::vector<std::pair<std::size_t, std::size_t>>{{8, 2}, {10, 2}, {10, 3}, {12, 3}, {16, 4}})
        specs.push_back({BenchmarkKind::Ojzj, n, k});
    Verdict v{true, ""};
    for (const BenchmarkSpec& spec : specs) {
        const ParetoFront a = analytic_front(spec);
        const ParetoFront b = brute_force_front(spec);
        std::size_t expected = 0;
        switch (spec.kind) {
            case BenchmarkKind::Cocz: expected = spec.n / 2 + 1; break;
            case BenchmarkKind::Omm: expected = spec.n + 1; break;
            case BenchmarkKind::Ojzj: expected = spec.n - 2 * spec.k + 3; break;
        }
        if (a != b || a.size() != expected) {
            v.pass = false;
            v.detail += " mismatch at " + spec.key();
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= 5.0)
        v.pass = false;
    v.detail = std::to_string(specs.size()) + " instances in " + fmt(secs) + " s" + v.detail;
    return v;
}

Verdict runtime_shape(BenchmarkKind kind, std::uint64_t seed) {
    const auto results = grid(kind, AlgorithmSpec::gsemo(), {32, 64, 128, 256}, {}, 100, seed);
    ScalingFit fit;
    try {
        fit = fit_scaling(results, ScalingModel::PurePoly);
    } catch (const std::exception& e) {
        return {false, e.what()};
    }
    Verdict v{true, "median ratios"};
    for (std::size_t i = 0; i + 1 < fit.cells.size(); ++i) {
        const double ratio = fit.cells[i + 1].median / fit.cells[i].median;
        v.detail += " " + fmt(ratio);
        v.pass = v.pass && ratio >= 3.5 && ratio <= 6.0;
    }
    v.detail += "; exponent " + fmt(fit.exponent) + " CI [" + fmt(fit.exponent_ci_low) + ", " +
                fmt(fit.exponent_ci_high) + "]";
    v.pass = v.pass && fit.exponent >= 1.9 && fit.exponent <= 2.4;
    return v;
}

Verdict modified_cocz(bool spread) {
    static const std::vector<TrialResult> results =
        grid(BenchmarkKind::Cocz, AlgorithmSpec::gsemo().modified(), {64, 128}, {}, 50, 303);
    const Calibration cal;
    const HypothesisReport rep = spread ? check_front_spread(results, cal) : check_border_distance(results, cal);
    return {rep.pass(), rep.id + failing_rows(rep)};
}

Verdict ojzj_shape() {
    const std::vector<std::size_t> ns{12, 16, 20, 24};
    const auto results = grid(BenchmarkKind::Ojzj, AlgorithmSpec::gsemo(), ns, {2}, 50, 606);
    Verdict v{true, "q10/n^3"};
    for (std::size_t n : ns) {
        std::vector<double> sample;
        for (const TrialResult& r : results)
            if (r.benchmark.n == n)
                sample.push_back(runtime(r));
        const double q10 = stats::quantile(sample, 0.1);
        const double scale = std::pow(static_cast<double>(n), 3);
        v.detail += " " + fmt(q10 / scale);
        v.pass = v.pass && q10 > 0.05 * scale;
    }
    try {
        const ScalingFit fit = fit_scaling(results, ScalingModel::PurePoly);
        v.detail += "; exponent " + fmt(fit.exponent) + " CI [" + fmt(fit.exponent_ci_low) + ", " +
                    fmt(fit.exponent_ci_high) + "]";
        v.pass = v.pass && fit.exponent >= 2.6 && fit.exponent <= 3.5;
    } catch (const std::exception& e) {
        v.pass = false;
        v.detail += std::string("; ") + e.what();
    }
    return v;
}

Verdict semo_failure() {
    AlgorithmSpec semo = AlgorithmSpec::semo();
    semo.interior_init = true;
    semo.max_iterations = 1000000;
    AlgorithmSpec control = AlgorithmSpec::gsemo();
    control.interior_init = true;
    control.max_iterations = 1000000;
    const auto failed = grid(BenchmarkKind::Ojzj, semo, {12}, {2}, 30, 707);
    const auto covered = grid(BenchmarkKind::Ojzj, control, {12}, {2}, 30, 707);
    const auto count = [](const std::vector<TrialResult>& rs) {
        return std::count_if(rs.begin(), rs.end(), [](const TrialResult& r) { return !r.censored; });
    };
    const auto semo_cover = count(failed);
    const auto gsemo_cover = count(covered);
    return {semo_cover == 0 && gsemo_cover >= 27,
            "SEMO covered " + std::to_string(semo_cover) + "/30, GSEMO covered " + std::to_string(gsemo_cover) + "/30"};
}

Verdict equivalence() {
    Verdict v{true, ""};
    for (Mutation m : {Mutation::Standard, Mutation::OneBit}) {
        EquivalenceConfig cfg;
        cfg.mutation = m;
        cfg.master_seed = 808;
        const HypothesisReport good = check_equivalence_modified_original(cfg);
        cfg.slot_range_offset = -1;
        const HypothesisReport broken = check_equivalence_modified_original(cfg);
        v.pass = v.pass && good.pass() && !broken.pass();
        v.detail += std::string(m == Mutation::Standard ? "gsemo" : "semo") + ": " +
                    (good.rows.empty() ? "" : good.rows.front().detail) + ", control " +
                    (broken.pass() ? "PASSED" : "rejected") + "; ";
    }
    return v;
}

// Invariants checked after every step of a short run. Returns the number of
// violations and appends a fingerprint of the run for the determinism check.
std::size_t short_run(const BenchmarkSpec& spec, const AlgorithmSpec& alg, std::uint64_t seed, int steps,
                      std::vector<std::int64_t>& trace) {
    const Benchmark bench(spec);
    RunState s = initial_state(bench, alg, seed);
    std::size_t violations = 0;
    std::int64_t prev_max = -1;
    std::int64_t prev_z = 0;
    for (int i = 0; i <= steps; ++i) {
        if (i > 0)
            step(s, alg, bench);
        const Population& p = s.population;
        std::set<std::size_t> slots;
        for (std::size_t a = 0; a < p.size(); ++a) {
            const Member& ma = p.member(a);
            const ObjectivePair f = bench.evaluate(ma.x);
            violations += f != ma.f;
            violations += bench.slot_key(ma.x) != p.slot_of(a);
            slots.insert(p.slot_of(a));
            for (std::size_t b = a + 1; b < p.size(); ++b) {
                const ObjectivePair& u = ma.f;
                const ObjectivePair& w = p.member(b).f;
                violations += (u.f1 >= w.f1 && u.f2 >= w.f2) || (w.f1 >= u.f1 && w.f2 >= u.f2);
            }
            trace.push_back(f.f1);
            trace.push_back(f.f2);
        }
        violations += slots.size() != p.size();
        violations += p.empty();
        const std::size_t bound = spec.kind == BenchmarkKind::Cocz ? spec.n / 2 + 1 : spec.n + 1;
        violations += p.size() > bound;
        if (spec.kind == BenchmarkKind::Cocz) {
            std::int64_t max_g1 = -1;
            std::int64_t z = 0;
            for (std::size_t a = 0; a < p.size(); ++a) {
                const ObjectivePair& f = p.member(a).f;
                // g1 = (f1 + f2 - n/2) / 2 on COCZ.
                const std::int64_t g1 = (f.f1 + f.f2 - static_cast<std::int64_t>(spec.n / 2)) / 2;
                if (g1 > max_g1) {
                    max_g1 = g1;
                    z = 0;
                }
                z += g1 == max_g1;
            }
            violations += max_g1 < prev_max;
            if (max_g1 > prev_max && i > 0)
                violations += z != 1;
            if (max_g1 == prev_max)
                violations += z < prev_z;
            const TrajectoryRecord rec = measure(s, bench);
            violations += rec.max_g1 != max_g1 || rec.z_count != z;
            prev_max = max_g1;
            prev_z = z;
        }
        trace.push_back(-1);
    }
    trace.push_back(static_cast<std::int64_t>(s.evaluations));
    return violations;
}

Verdict invariants() {
    std::mt19937_64 gen(909);
    std::size_t violations = 0;
    std::size_t runs = 0;
    std::size_t nondeterministic = 0;
    for (BenchmarkKind kind : {BenchmarkKind::Cocz, BenchmarkKind::Omm, BenchmarkKind::Ojzj}) {
        for (int r = 0; r < 1000; ++r) {
            BenchmarkSpec spec{kind, 0, 0};
            switch (kind) {
                case BenchmarkKind::Cocz: spec.n = 2 * (2 + gen() % 15); break;
                case BenchmarkKind::Omm: spec.n = 2 + gen() % 30; break;
                case BenchmarkKind::Ojzj:
                    spec.n = 4 + gen() % 26;
                    spec.k = 2 + gen() % (spec.n / 2 - 1);
                    break;
            }
            AlgorithmSpec alg = (gen() % 2 == 0) ? AlgorithmSpec::gsemo() : AlgorithmSpec::semo();
            if (gen() % 2 == 0)
                alg = alg.modified();
            alg.interior_init = kind == BenchmarkKind::Ojzj && gen() % 2 == 0;
            const std::uint64_t seed = gen();
            std::vector<std::int64_t> first;
            std::vector<std::int64_t> second;
            violations += short_run(spec, alg, seed, 200, first);
            short_run(spec, alg, seed, 200, second);
            nondeterministic += first != second;
            ++runs;
        }
    }
    return {violations == 0 && nondeterministic == 0,
            std::to_string(runs) + " runs, " + std::to_string(violations) + " violations, " +
                std::to_string(nondeterministic) + " nondeterministic"};
}

Verdict bounds_domination() {
    std::mt19937_64 gen(1010);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const int samples = 10000;
    // Three standard errors of a Bernoulli frequency at its worst variance.
    const double slack = 3 * std::sqrt(0.25 / samples);
    std::size_t violated = 0;
    double worst = -1;
    for (int inst = 0; inst < 100; ++inst) {
        std::vector<double> p(2 + gen() % 15);
        for (double& v : p)
            v = 0.02 + 0.98 * u(gen);
        const GeometricPhaseSet phases(p);
        const double lambda = std::sqrt(phases.s()) * (0.25 + 2.5 * u(gen));
        int upper = 0;
        int lower = 0;
        for (int s = 0; s < samples; ++s) {
            double total = 0;
            for (double pi : p)
                total += static_cast<double>(std::geometric_distribution<long long>(pi)(gen) + 1);
            upper += total >= phases.expectation() + lambda;
            lower += total <= phases.expectation() - lambda;
        }
        const double up_gap = upper / double(samples) - witt_upper_tail(phases, lambda);
        const double low_gap = lower / double(samples) - witt_lower_tail(phases, lambda);

        const int trials = 10 + static_cast<int>(gen() % 400);
        const double q = 0.05 + 0.9 * u(gen);
        const double mean = trials * q;
        const double delta = 0.05 + 0.9 * u(gen);
        std::binomial_distribution<int> bin(trials, q);
        int hits = 0;
        for (int s = 0; s < samples; ++s)
            hits += bin(gen) <= (1 - delta) * mean;
        const double ch_gap = hits / double(samples) - chernoff_lower_tail(mean, delta);
        for (double gap : {up_gap, low_gap, ch_gap}) {
            worst = std::max(worst, gap);
            violated += gap > slack;
        }
    }

    std::size_t outside = 0;
    for (int inst = 0; inst < 100; ++inst) {
        std::vector<double> xs;
        std::vector<double> ys;
        double y = 1 + 20 * u(gen);
        for (int x = -1; x <= 62; ++x) {
            xs.push_back(x);
            ys.push_back(y);
            y = std::max(0.0, y - u(gen) * 0.6);
        }
        const TabulatedFunction g(xs, ys);
        const double alpha = static_cast<double>(gen() % 30);
        const double beta = alpha + static_cast<double>(gen() % 30);
        double exact = 0;
        for (auto x = static_cast<int>(alpha); x <= static_cast<int>(beta); ++x)
            exact += ys[static_cast<std::size_t>(x + 1)];
        const SumSandwich s = harmonic_sum_bounds(g, alpha, beta);
        outside += !(s.lower <= exact + 1e-9 && exact <= s.upper + 1e-9);
    }
    return {violated == 0 && outside == 0,
            "300 tail comparisons, " + std::to_string(violated) + " above bound (largest excess " + fmt(worst, 4) +
                ", slack " + fmt(slack, 4) + "); sandwich misses " + std::to_string(outside) + "/100"};
}

struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> check;
};

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria{
        {1, "Pareto-front oracles", criterion_fronts},
        {2, "COCZ runtime shape", [] { return runtime_shape(BenchmarkKind::Cocz, 202); }},
        {3, "front-spread speed", [] { return modified_cocz(true); }},
        {4, "border-distance persistence", [] { return modified_cocz(false); }},
        {5, "OMM runtime shape", [] { return runtime_shape(BenchmarkKind::Omm, 505); }},
        {6, "OJZJ k=2 lower-bound shape", ojzj_shape},
        {7, "SEMO failure on OJZJ", semo_failure},
        {8, "modified/original equivalence", equivalence},
        {9, "invariant suite", invariants},
        {10, "bounds module", bounds_domination},
    };
    std::set<int> selected;
    for (int i = 1; i < argc; ++i)
        selected.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const Criterion& c : criteria) {
        if (!selected.empty() && !selected.count(c.id))
            continue;
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = c.check();
        } catch (const std::exception& e) {
            v = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s criterion %d: %s (%s) [%.1f s]\n", v.pass ? "PASS" : "FAIL", c.id, c.name, v.detail.c_str(),
                    secs);
        std::fflush(stdout);
        failures += !v.pass;
    }
    return failures == 0 ? 0 : 1;
}
