#include "semolab/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "semolab/bounds.hpp"
#include "semolab/stats.hpp"

namespace semolab {

namespace {

std::string algorithm_suffix(const AlgorithmSpec& algorithm) {
    std::string out = ":";
    out += algorithm.algorithm_name();
    out += ":";
    out += algorithm.variant_name();
    if (algorithm.interior_init)
        out += ":interior";
    if (algorithm.slot_range_offset != 0)
        out += ":offset=" + std::to_string(algorithm.slot_range_offset);
    return out;
}

std::string series_key(const BenchmarkSpec& spec, const AlgorithmSpec& algorithm) {
    std::string out(to_string(spec.kind));
    out += ":k=" + std::to_string(spec.kind == BenchmarkKind::Ojzj ? spec.k : 0);
    return out + algorithm_suffix(algorithm);
}

std::string format_double(double value) {
    std::ostringstream s;
    s.precision(6);
    s << value;
    return s.str();
}

std::vector<double> runtimes(const std::vector<const TrialResult*>& trials, RuntimeClock clock) {
    std::vector<double> out;
    out.reserve(trials.size());
    for (const TrialResult* t : trials) {
        if (t->censored)
            out.push_back(std::numeric_limits<double>::infinity());
        else
            out.push_back(static_cast<double>(clock == RuntimeClock::Evaluations ? t->runtime_evals
                                                                                  : t->runtime_iters));
    }
    return out;
}

void require_trajectory(const TrialResult& trial) {
    if (trial.trajectory.empty())
        throw std::invalid_argument("trial " + cell_key(trial.benchmark, trial.algorithm) +
                                    " seed " + std::to_string(trial.seed) +
                                    " has no trajectory data");
}

// k <= n/4 is the hypothesis under which the OJZJ statements hold.
bool ojzj_in_scope(const BenchmarkSpec& spec) {
    return spec.kind != BenchmarkKind::Ojzj || 4 * spec.k <= spec.n;
}

}  // namespace

std::uint64_t Checkpoint::at(const BenchmarkSpec& spec) const {
    const auto n = static_cast<long double>(spec.n);
    long double term = 0;
    switch (shape) {
    case CheckpointShape::NSquared: term = n * n; break;
    case CheckpointShape::NSquaredLogN: term = n * n * std::log(n); break;
    case CheckpointShape::NPowKPlus1: term = std::pow(n, static_cast<long double>(spec.k + 1)); break;
    }
    const long double value = static_cast<long double>(coefficient) * term;
    if (!(value >= 0) || !(value < 0x1p63L))
        throw std::invalid_argument("checkpoint '" + name + "' does not evaluate to a valid iteration for " +
                                    spec.key());
    return static_cast<std::uint64_t>(std::floor(value));
}

void ExperimentConfig::validate() const {
    if (benchmarks.empty())
        throw std::invalid_argument("at least one benchmark is required");
    if (n_grid.empty())
        throw std::invalid_argument("the n-grid is empty");
    for (std::size_t i = 1; i < n_grid.size(); ++i)
        if (n_grid[i] <= n_grid[i - 1])
            throw std::invalid_argument("the n-grid must be strictly increasing");
    if (trials_per_cell < 1)
        throw std::invalid_argument("trials per cell must be at least 1");
    if (jobs < 0)
        throw std::invalid_argument("jobs must be non-negative");
    if (std::find(benchmarks.begin(), benchmarks.end(), BenchmarkKind::Ojzj) != benchmarks.end() &&
        k_grid.empty())
        throw std::invalid_argument("OJZJ cells need a k value");
    for (const BenchmarkSpec& spec : cells()) {
        spec.validate();
        if (algorithm.max_iterations == 0)
            default_max_iterations(spec);
        if (algorithm.interior_init && spec.kind == BenchmarkKind::Ojzj && 2 * spec.k > spec.n)
            throw std::invalid_argument("interior initialization needs 2k <= n for " + spec.key());
        for (const Checkpoint& c : checkpoints)
            c.at(spec);
    }
}

std::vector<BenchmarkSpec> ExperimentConfig::cells() const {
    std::vector<BenchmarkSpec> out;
    for (BenchmarkKind kind : benchmarks)
        for (std::size_t n : n_grid) {
            if (kind == BenchmarkKind::Ojzj) {
                for (std::size_t k : k_grid)
                    out.push_back({kind, n, k});
            } else {
                out.push_back({kind, n, 0});
            }
        }
    return out;
}

std::string cell_key(const BenchmarkSpec& spec, const AlgorithmSpec& algorithm) {
    return spec.key() + algorithm_suffix(algorithm);
}

std::uint64_t trial_seed(std::uint64_t master_seed, const BenchmarkSpec& spec,
                         const AlgorithmSpec& algorithm, std::size_t trial) {
    return derive_seed(master_seed, cell_key(spec, algorithm), trial);
}

std::vector<TrialResult> run_grid_serial(const ExperimentConfig& config) {
    config.validate();
    std::vector<TrialResult> results;
    for (const BenchmarkSpec& spec : config.cells())
        for (std::size_t t = 0; t < config.trials_per_cell; ++t)
            results.push_back(run_until_cover(
                spec, config.algorithm, trial_seed(config.master_seed, spec, config.algorithm, t)));
    return results;
}

std::vector<TrialResult> run_grid(const ExperimentConfig& config) {
    config.validate();
    const std::vector<BenchmarkSpec> cells = config.cells();
    const std::size_t per_cell = config.trials_per_cell;
    const auto tasks = static_cast<std::int64_t>(cells.size() * per_cell);
    std::vector<TrialResult> results(static_cast<std::size_t>(tasks));
    std::exception_ptr failure;

#ifdef _OPENMP
    const int workers = config.jobs > 0 ? config.jobs : omp_get_max_threads();
#endif
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
    for (std::int64_t task = 0; task < tasks; ++task) {
        const auto index = static_cast<std::size_t>(task);
        const BenchmarkSpec& spec = cells[index / per_cell];
        try {
            results[index] = run_until_cover(
                spec, config.algorithm,
                trial_seed(config.master_seed, spec, config.algorithm, index % per_cell));
        } catch (...) {
#pragma omp critical(semolab_run_grid_failure)
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);
    return results;
}

std::vector<Series> group_series(const std::vector<TrialResult>& results) {
    std::vector<Series> out;
    std::map<std::string, std::size_t> index;
    std::vector<std::map<std::size_t, std::vector<const TrialResult*>>> cells;
    for (const TrialResult& r : results) {
        const std::string key = series_key(r.benchmark, r.algorithm);
        auto [it, inserted] = index.try_emplace(key, out.size());
        if (inserted) {
            out.push_back({key, r.benchmark, r.algorithm, {}});
            cells.emplace_back();
        }
        cells[it->second][r.benchmark.n].push_back(&r);
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        for (auto& [n, trials] : cells[i])
            out[i].by_n.push_back(std::move(trials));
    return out;
}

ScalingFit fit_scaling(const std::vector<TrialResult>& results, ScalingModel model,
                       const FitOptions& options) {
    const std::vector<Series> series = group_series(results);
    if (series.size() != 1)
        throw std::invalid_argument("fit_scaling needs results from exactly one series");
    const Series& s = series.front();
    if (s.by_n.size() < 3)
        throw std::invalid_argument("fit_scaling needs at least 3 grid points");

    ScalingFit fit;
    fit.model = model;
    std::vector<std::vector<double>> samples;
    std::vector<double> xs;
    std::vector<double> ys;
    for (const auto& cell : s.by_n) {
        const BenchmarkSpec& spec = cell.front()->benchmark;
        std::vector<double> rt = runtimes(cell, options.clock);
        CellSummary summary;
        summary.spec = spec;
        summary.trials = rt.size();
        summary.censored = static_cast<std::size_t>(std::count_if(
            cell.begin(), cell.end(), [](const TrialResult* t) { return t->censored; }));
        summary.median = stats::median(rt);
        summary.q25 = stats::quantile(rt, 0.25);
        summary.q75 = stats::quantile(rt, 0.75);
        if (!std::isfinite(summary.median))
            throw std::runtime_error("censored median in cell " + cell_key(spec, s.algorithm));
        const auto n = static_cast<double>(spec.n);
        xs.push_back(model == ScalingModel::PurePoly
                         ? std::log(n)
                         : static_cast<double>(options.poly_log_degree) * std::log(n) + std::log(std::log(n)));
        ys.push_back(std::log(summary.median));
        fit.cells.push_back(summary);
        samples.push_back(std::move(rt));
    }

    const stats::LinearFit base = stats::least_squares(xs, ys);
    fit.exponent = base.slope;
    fit.constant = std::exp(base.intercept);
    fit.residuals = base.residuals;

    Rng rng(options.bootstrap_seed);
    std::vector<double> slopes;
    slopes.reserve(options.resamples);
    std::vector<double> resampled_y(ys.size());
    std::vector<double> draw;
    for (std::size_t r = 0; r < options.resamples; ++r) {
        bool finite = true;
        for (std::size_t c = 0; c < samples.size(); ++c) {
            const auto& sample = samples[c];
            draw.resize(sample.size());
            for (double& d : draw)
                d = sample[static_cast<std::size_t>(rng.below(sample.size()))];
            const double m = stats::median(draw);
            finite = finite && std::isfinite(m);
            resampled_y[c] = finite ? std::log(m) : 0.0;
        }
        if (finite)
            slopes.push_back(stats::least_squares(xs, resampled_y).slope);
    }
    fit.resamples = slopes.size();
    if (slopes.empty()) {
        fit.exponent_ci_low = fit.exponent_ci_high = fit.exponent;
    } else {
        fit.exponent_ci_low = stats::quantile(slopes, 0.025);
        fit.exponent_ci_high = stats::quantile(slopes, 0.975);
    }
    return fit;
}

bool HypothesisReport::pass() const noexcept {
    if (rows.empty())
        return false;
    return std::all_of(rows.begin(), rows.end(), [](const ReportRow& r) { return r.ok(); });
}

HypothesisReport check_front_spread(const std::vector<TrialResult>& results, const Calibration& cal) {
    HypothesisReport report;
    report.id = "front_spread";
    report.notes.push_back("C = " + format_double(cal.spread_constant) +
                           " is calibrated at desk scale; it loosely tracks the proof constants 20e + 4e");
    for (const Series& s : group_series(results)) {
        for (const auto& cell : s.by_n) {
            const BenchmarkSpec& spec = cell.front()->benchmark;
            if (!ojzj_in_scope(spec)) {
                report.notes.push_back("skipped " + cell_key(spec, s.algorithm) + ": k > n/4");
                continue;
            }
            const auto n = static_cast<double>(spec.n);
            const double limit = cal.spread_constant * n * n;
            const std::size_t divisor = spec.kind == BenchmarkKind::Cocz ? 4 : 2;
            ReportRow row;
            row.cell = cell_key(spec, s.algorithm);
            row.threshold = cal.pass_threshold;
            for (const TrialResult* trial : cell) {
                require_trajectory(*trial);
                ++row.total;
                for (const TrajectoryRecord& rec : trial->trajectory) {
                    if (rec.front_points * divisor >= spec.n) {
                        if (static_cast<double>(rec.t) <= limit)
                            ++row.passed;
                        break;
                    }
                }
            }
            row.detail = "target=" + std::to_string((spec.n + divisor - 1) / divisor) +
                         " members, limit=" + format_double(limit) + " iterations";
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

HypothesisReport check_border_distance(const std::vector<TrialResult>& results, const Calibration& cal) {
    HypothesisReport report;
    report.id = "border_distance";
    report.notes.push_back("c = " + format_double(cal.border_constant) +
                           " is an empirical desk-scale calibration, not a published constant");
    const Checkpoint checkpoint{"border", cal.border_constant, CheckpointShape::NSquaredLogN};
    for (const Series& s : group_series(results)) {
        for (const auto& cell : s.by_n) {
            const BenchmarkSpec& spec = cell.front()->benchmark;
            if (!ojzj_in_scope(spec)) {
                report.notes.push_back("skipped " + cell_key(spec, s.algorithm) + ": k > n/4");
                continue;
            }
            const std::uint64_t until = checkpoint.at(spec);
            double required = std::sqrt(static_cast<double>(spec.n));
            if (spec.kind == BenchmarkKind::Ojzj)
                required = std::max(required, static_cast<double>(spec.k));
            ReportRow row;
            row.cell = cell_key(spec, s.algorithm);
            row.threshold = cal.pass_threshold;
            for (const TrialResult* trial : cell) {
                require_trajectory(*trial);
                ++row.total;
                std::int64_t lowest = std::numeric_limits<std::int64_t>::max();
                for (const TrajectoryRecord& rec : trial->trajectory) {
                    if (rec.t > until)
                        break;
                    lowest = std::min(lowest, rec.d_pf);
                }
                if (static_cast<double>(lowest) >= required)
                    ++row.passed;
            }
            row.detail = "checkpoint t=" + std::to_string(until) + ", required d_PF>=" + format_double(required);
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

HypothesisReport check_lower_bound_runtime(const std::vector<TrialResult>& results,
                                           const Calibration& cal) {
    HypothesisReport report;
    report.id = "lower_bound_runtime";
    for (const Series& s : group_series(results)) {
        std::vector<double> medians;
        for (const auto& cell : s.by_n) {
            const BenchmarkSpec& spec = cell.front()->benchmark;
            const std::vector<double> rt = runtimes(cell, RuntimeClock::Evaluations);
            const auto uncensored = static_cast<std::size_t>(
                std::count_if(rt.begin(), rt.end(), [](double v) { return std::isfinite(v); }));
            const double q10 = stats::quantile(rt, 0.1);
            const double eps =
                spec.kind == BenchmarkKind::Ojzj ? cal.epsilon_ojzj : cal.epsilon_poly_log;
            const double floor_value = eps * runtime_model_term(spec);
            medians.push_back(stats::median(rt));

            ReportRow row;
            row.cell = cell_key(spec, s.algorithm) + ":q10";
            row.total = 1;
            row.threshold = 1.0;
            const bool majority = 2 * uncensored > rt.size();
            row.passed = (majority && q10 > floor_value) ? 1 : 0;
            row.detail = "q10=" + format_double(q10) + " floor=" + format_double(floor_value) +
                         " uncensored=" + std::to_string(uncensored) + "/" + std::to_string(rt.size());
            report.rows.push_back(std::move(row));
        }
        for (std::size_t i = 1; i < s.by_n.size(); ++i) {
            const BenchmarkSpec& lo = s.by_n[i - 1].front()->benchmark;
            const BenchmarkSpec& hi = s.by_n[i].front()->benchmark;
            if (hi.n != 2 * lo.n)
                continue;
            double low = cal.ratio_low;
            double high = cal.ratio_high;
            if (lo.kind == BenchmarkKind::Ojzj) {
                const double scale = std::pow(2.0, static_cast<double>(lo.k + 1)) / 8.0;
                low = cal.ojzj_ratio_low * scale;
                high = cal.ojzj_ratio_high * scale;
            }
            const double ratio = medians[i] / medians[i - 1];
            ReportRow row;
            row.cell = s.key + ":ratio:n=" + std::to_string(lo.n) + "->" + std::to_string(hi.n);
            row.total = 1;
            row.threshold = 1.0;
            row.passed = (std::isfinite(ratio) && ratio >= low && ratio <= high) ? 1 : 0;
            row.detail = "ratio=" + format_double(ratio) + " window=[" + format_double(low) + "," +
                         format_double(high) + "] model=" +
                         format_double(runtime_model_term(hi) / runtime_model_term(lo));
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

HypothesisReport check_scaling_exponent(const std::vector<TrialResult>& results, const Calibration& cal) {
    HypothesisReport report;
    report.id = "scaling_exponent";
    for (const Series& s : group_series(results)) {
        if (s.by_n.size() < 3) {
            report.notes.push_back("skipped " + s.key + ": fewer than 3 grid points");
            continue;
        }
        std::vector<TrialResult> copy;
        for (const auto& cell : s.by_n)
            for (const TrialResult* t : cell)
                copy.push_back(*t);
        double low = cal.exponent_low_poly_log;
        double high = cal.exponent_high_poly_log;
        if (s.representative.kind == BenchmarkKind::Ojzj) {
            const auto base = static_cast<double>(s.representative.k + 1);
            low = base + cal.exponent_low_offset_ojzj;
            high = base + cal.exponent_high_offset_ojzj;
        }
        ReportRow row;
        row.cell = s.key + ":pure_poly";
        row.total = 1;
        row.threshold = 1.0;
        try {
            FitOptions options;
            options.resamples = cal.bootstrap_resamples;
            const ScalingFit fit = fit_scaling(copy, ScalingModel::PurePoly, options);
            row.passed = (fit.exponent >= low && fit.exponent <= high) ? 1 : 0;
            row.detail = "exponent=" + format_double(fit.exponent) + " ci=[" +
                         format_double(fit.exponent_ci_low) + "," + format_double(fit.exponent_ci_high) +
                         "] window=[" + format_double(low) + "," + format_double(high) + "]";
        } catch (const std::runtime_error& e) {
            row.detail = e.what();
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

HypothesisReport check_coverage(const std::vector<TrialResult>& results, const Calibration& cal) {
    HypothesisReport report;
    report.id = "coverage";
    for (const Series& s : group_series(results)) {
        for (const auto& cell : s.by_n) {
            ReportRow row;
            row.cell = cell_key(cell.front()->benchmark, s.algorithm);
            row.threshold = cal.pass_threshold;
            for (const TrialResult* t : cell) {
                ++row.total;
                if (!t->censored)
                    ++row.passed;
            }
            row.detail = std::to_string(row.total - row.passed) + " trials censored";
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

HypothesisReport check_semo_ojzj_failure(const std::vector<TrialResult>& results) {
    HypothesisReport report;
    report.id = "semo_ojzj_failure";
    std::vector<TrialResult> relevant;
    for (const TrialResult& r : results)
        if (r.benchmark.kind == BenchmarkKind::Ojzj && r.algorithm.mutation == Mutation::OneBit &&
            r.algorithm.interior_init)
            relevant.push_back(r);
    if (relevant.empty())
        report.notes.push_back("no SEMO/OJZJ cells with interior initialization");
    for (const Series& s : group_series(relevant)) {
        for (const auto& cell : s.by_n) {
            ReportRow row;
            row.cell = cell_key(cell.front()->benchmark, s.algorithm);
            row.threshold = 1.0;
            for (const TrialResult* t : cell) {
                ++row.total;
                if (t->censored)
                    ++row.passed;
            }
            row.detail = std::to_string(row.total - row.passed) + " trials covered the front";
            report.rows.push_back(std::move(row));
        }
    }
    return report;
}

HypothesisReport check_equivalence_modified_original(const EquivalenceConfig& config) {
    if (config.trials < kEquivalenceMinTrials)
        throw std::invalid_argument(
            "equivalence test refused: " + std::to_string(config.trials) +
            " trials per variant gives too little power for a chi-square test; need at least " +
            std::to_string(kEquivalenceMinTrials));
    const Benchmark benchmark(config.spec);
    const bool cocz = config.spec.kind == BenchmarkKind::Cocz;
    const std::uint64_t cap = 100 * (config.steps + 1) * benchmark.slot_count();

    AlgorithmSpec original;
    original.mutation = config.mutation;
    original.max_iterations = cap;
    AlgorithmSpec modified = original.modified();
    modified.slot_range_offset = config.slot_range_offset;

    std::size_t stalled = 0;
    auto simulate = [&](const AlgorithmSpec& algorithm, stats::Histogram& histogram) {
        const std::string stream = "equivalence:" + cell_key(config.spec, algorithm);
        for (std::size_t i = 0; i < config.trials; ++i) {
            RunState state = initial_state(benchmark, algorithm, derive_seed(config.master_seed, stream, i));
            std::size_t done = 0;
            while (done < config.steps && state.iteration < cap)
                if (!step(state, algorithm, benchmark).idle)
                    ++done;
            if (done < config.steps)
                ++stalled;
            const TrajectoryRecord rec = measure(state, benchmark);
            const std::int64_t first = cocz ? rec.max_g1 : static_cast<std::int64_t>(rec.front_points);
            ++histogram[{first, static_cast<std::int64_t>(rec.pop_size)}];
        }
    };
    stats::Histogram h_original;
    stats::Histogram h_modified;
    simulate(original, h_original);
    simulate(modified, h_modified);

    const stats::ChiSquareResult chi = stats::chi_square_two_sample(h_original, h_modified);
    HypothesisReport report;
    report.id = "equivalence_modified_original";
    ReportRow row;
    row.cell = cell_key(config.spec, modified) + ":m=" + std::to_string(config.steps);
    row.total = 1;
    row.threshold = 1.0;
    row.passed = chi.p_value > config.alpha ? 1 : 0;
    row.detail = "chi2=" + format_double(chi.statistic) + " dof=" + std::to_string(chi.dof) +
                 " p=" + format_double(chi.p_value) + " bins=" + std::to_string(chi.bins) +
                 " trials=" + std::to_string(config.trials);
    report.rows.push_back(std::move(row));
    if (stalled > 0)
        report.notes.push_back(std::to_string(stalled) + " modified-variant trials hit the idle cap of " +
                               std::to_string(cap) + " iterations");
    return report;
}

}  // namespace semolab
