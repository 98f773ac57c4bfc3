#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "semolab/benchmarks.hpp"
#include "semolab/engine.hpp"

namespace semolab {

enum class CheckpointShape { NSquared, NSquaredLogN, NPowKPlus1 };

/// Named iteration count coefficient * shape(n, k), floored.
struct Checkpoint {
    std::string name;
    double coefficient = 0;
    CheckpointShape shape = CheckpointShape::NSquaredLogN;

    std::uint64_t at(const BenchmarkSpec& spec) const;
};

struct ExperimentConfig {
    std::vector<BenchmarkKind> benchmarks;
    AlgorithmSpec algorithm;
    std::vector<std::size_t> n_grid;
    std::vector<std::size_t> k_grid;  ///< used by OJZJ cells only
    std::size_t trials_per_cell = 1;
    std::uint64_t master_seed = 0;
    std::vector<Checkpoint> checkpoints;
    int jobs = 0;  ///< worker cap, 0 = OpenMP default

    /// Throws std::invalid_argument on an unusable grid and
    /// std::overflow_error if a cell's iteration cutoff does not fit.
    void validate() const;

    /// Cells in grid order: benchmarks x n-grid (x k-grid for OJZJ).
    std::vector<BenchmarkSpec> cells() const;
};

/// Identity of a (benchmark, algorithm) combination, e.g.
/// "cocz:n=32:k=0:gsemo:original". Interior initialization and a non-zero
/// slot offset are appended because they change the simulated process.
std::string cell_key(const BenchmarkSpec& spec, const AlgorithmSpec& algorithm);

/// Seed of a trial; a function of the master seed, cell key and trial index only.
std::uint64_t trial_seed(std::uint64_t master_seed, const BenchmarkSpec& spec,
                         const AlgorithmSpec& algorithm, std::size_t trial);

/// Runs trials_per_cell independent runs per cell across an OpenMP worker
/// pool. Results are ordered by (cell, trial index) regardless of scheduling.
std::vector<TrialResult> run_grid(const ExperimentConfig& config);
/// Single-threaded reference for run_grid; produces identical results.
std::vector<TrialResult> run_grid_serial(const ExperimentConfig& config);

/// Tunable constants of the hypothesis suites. The shipped values are
/// desk-scale calibrations; config/calibration.conf mirrors them.
struct Calibration {
    double pass_threshold = 0.9;
    double spread_constant = 81.548454853771;  ///< C in C n^2, 30e
    double border_constant = 0.001;            ///< c in c n^2 ln n
    double epsilon_poly_log = 0.25;            ///< q10 floor factor for n^2 ln n
    double epsilon_ojzj = 0.05;                ///< q10 floor factor for n^(k+1)
    double ratio_low = 3.5;                    ///< doubling window, n^2 ln n model
    double ratio_high = 6.0;
    double ojzj_ratio_low = 5.5;               ///< doubling window for k = 2 (model 8),
    double ojzj_ratio_high = 11.0;             ///< scaled by 2^(k+1) / 8 for other k
    double exponent_low_poly_log = 1.9;        ///< PURE_POLY exponent window, n^2 ln n
    double exponent_high_poly_log = 2.4;
    double exponent_low_offset_ojzj = -0.4;    ///< window around k + 1 for OJZJ
    double exponent_high_offset_ojzj = 0.5;
    double equivalence_alpha = 0.001;
    std::size_t bootstrap_resamples = 200;

    friend bool operator==(const Calibration&, const Calibration&) = default;
};

enum class ScalingModel { PurePoly, PolyLog };
enum class RuntimeClock { Evaluations, Iterations };

struct CellSummary {
    BenchmarkSpec spec;
    std::size_t trials = 0;
    std::size_t censored = 0;
    double median = 0;
    double q25 = 0;
    double q75 = 0;
};

struct ScalingFit {
    ScalingModel model = ScalingModel::PurePoly;
    double exponent = 0;
    double exponent_ci_low = 0;
    double exponent_ci_high = 0;
    double constant = 0;  ///< exp(intercept)
    std::vector<double> residuals;
    std::vector<CellSummary> cells;
    std::size_t resamples = 0;
};

struct FitOptions {
    std::size_t poly_log_degree = 2;  ///< PolyLog regresses on n^degree ln n
    std::size_t resamples = 200;
    std::uint64_t bootstrap_seed = 0x5eed;
    RuntimeClock clock = RuntimeClock::Evaluations;
};

/// Least-squares fit of log(median runtime) against log n (PurePoly) or
/// log(n^d ln n) (PolyLog) over the distinct n in `results`, which must all
/// belong to one series. The exponent CI is a percentile bootstrap over
/// trials. Throws std::runtime_error naming the cell if a median is censored
/// and std::invalid_argument for fewer than 3 grid points.
ScalingFit fit_scaling(const std::vector<TrialResult>& results, ScalingModel model,
                       const FitOptions& options = {});

struct ReportRow {
    std::string cell;
    std::uint64_t passed = 0;
    std::uint64_t total = 0;
    double threshold = 0;
    std::string detail;

    double frequency() const noexcept {
        return total == 0 ? 0.0 : static_cast<double>(passed) / static_cast<double>(total);
    }
    bool ok() const noexcept { return total > 0 && frequency() >= threshold; }
};

struct HypothesisReport {
    std::string id;
    std::vector<ReportRow> rows;
    std::vector<std::string> notes;

    /// PASS iff every row meets its threshold (and there is at least one row).
    bool pass() const noexcept;
};

/// Results grouped by series (cell key without n), in first-appearance order.
struct Series {
    std::string key;
    BenchmarkSpec representative;
    AlgorithmSpec algorithm;
    std::vector<std::vector<const TrialResult*>> by_n;  ///< ascending n
};
std::vector<Series> group_series(const std::vector<TrialResult>& results);

/// Time until >= n/4 (COCZ) or >= n/2 (OMM, OJZJ) Pareto-optimal members,
/// per trial; passes if within spread_constant * n^2 iterations.
HypothesisReport check_front_spread(const std::vector<TrialResult>& results, const Calibration& cal);

/// Minimum d_PF over t <= floor(border_constant * n^2 ln n), per trial;
/// passes if at least sqrt(n) (max{sqrt(n), k} for OJZJ).
HypothesisReport check_border_distance(const std::vector<TrialResult>& results, const Calibration& cal);

/// Per cell: uncensored majority and q10 runtime above epsilon * model(n).
/// Per doubling pair n -> 2n: median ratio inside the calibrated window.
HypothesisReport check_lower_bound_runtime(const std::vector<TrialResult>& results,
                                           const Calibration& cal);

/// PURE_POLY exponent of each series inside its calibrated window.
HypothesisReport check_scaling_exponent(const std::vector<TrialResult>& results, const Calibration& cal);

/// Share of trials per cell that covered the front before the cutoff;
/// passes at pass_threshold. Used as the control next to the SEMO check.
HypothesisReport check_coverage(const std::vector<TrialResult>& results, const Calibration& cal);

/// SEMO on OJZJ from interior initialization: passes if no trial covers.
HypothesisReport check_semo_ojzj_failure(const std::vector<TrialResult>& results);

struct EquivalenceConfig {
    BenchmarkSpec spec{BenchmarkKind::Cocz, 8, 0};
    Mutation mutation = Mutation::Standard;
    std::size_t steps = 30;  ///< non-idle iterations m
    std::size_t trials = 10000;
    std::uint64_t master_seed = 1;
    int slot_range_offset = 0;
    double alpha = 0.001;
};

/// Smallest trial count accepted by the equivalence suite.
inline constexpr std::size_t kEquivalenceMinTrials = 200;

/// Simulates both parent-selection variants for m non-idle steps and
/// compares the joint histogram of (max g1, population size) with a
/// two-sample chi-square test (front points instead of max g1 outside
/// COCZ). Throws std::invalid_argument when the sample is too small.
HypothesisReport check_equivalence_modified_original(const EquivalenceConfig& config);

}  // namespace semolab
