#include "semolab/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "semolab/bounds.hpp"
#include "semolab/config.hpp"
#include "semolab/io.hpp"
#include "semolab/rng.hpp"

namespace semolab::cli {

namespace fs = std::filesystem;

namespace {

// Raised for anything the user can fix: bad flags, bad files, missing inputs.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (const std::string& s : items) {
        if (!out.empty())
            out += ',';
        out += s;
    }
    return out;
}

template <typename T>
std::string join_numbers(const std::vector<T>& items) {
    std::string out;
    for (const T& v : items) {
        if (!out.empty())
            out += ',';
        out += std::to_string(v);
    }
    return out;
}

std::string format(double value) {
    std::ostringstream s;
    s.precision(17);
    s << value;
    return s.str();
}

// Applies every entry of a key=value file; unknown keys are reported with
// their line.
void apply_file(const fs::path& path,
                const std::function<bool(std::string_view, std::string_view)>& apply) {
    std::vector<ConfigEntry> entries;
    try {
        entries = load_key_value_file(path);
    } catch (const ConfigError& e) {
        throw UsageError(e.what());
    } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
    }
    for (const ConfigEntry& entry : entries) {
        try {
            if (!apply(entry.key, entry.value))
                throw ConfigError(path.string(), entry.line, "unknown key '" + entry.key + "'");
        } catch (const ConfigError& e) {
            throw UsageError(e.what());
        } catch (const std::invalid_argument& e) {
            throw UsageError(ConfigError(path.string(), entry.line, entry.key + ": " + e.what()).what());
        }
    }
}

void apply_flag(const std::function<bool(std::string_view, std::string_view)>& apply, std::string_view key,
                const std::string& value) {
    try {
        apply(key, value);
    } catch (const std::invalid_argument& e) {
        throw UsageError("--" + std::string(key) + ": " + e.what());
    }
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw UsageError("cannot write " + path.string());
    return out;
}

void prepare_output_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir))
        throw UsageError("output directory " + dir.string() + " is not usable: " +
                         (ec ? ec.message() : std::string("not a directory")));
    // create_directories succeeds on read-only directories; probe for write access.
    const fs::path probe = dir / ".semolab-write-probe";
    {
        std::ofstream p(probe);
        if (!p)
            throw UsageError("output directory " + dir.string() + " is not writable");
    }
    fs::remove(probe, ec);
}

// ---------------------------------------------------------------- run

int cmd_run(const std::string& config_path, const std::map<std::string, std::string>& flags, bool verbose,
            std::ostream& out, std::ostream& err) {
    RunSettings settings;
    auto apply = [&settings](std::string_view key, std::string_view value) {
        return apply_run_key(settings, key, value);
    };
    if (!config_path.empty())
        apply_file(config_path, apply);
    for (const auto& [key, value] : flags)
        apply_flag(apply, key, value);

    ExperimentConfig config;
    try {
        config = settings.experiment();
        config.validate();
    } catch (const std::exception& e) {
        throw UsageError(e.what());
    }

    const fs::path dir(settings.out);
    prepare_output_dir(dir);
    if (verbose)
        err << "running " << config.cells().size() << " cells x " << config.trials_per_cell << " trials\n";

    const std::vector<TrialResult> results = run_grid(config);

    const std::string resolved = settings.resolved_text();
    {
        auto f = open_output(dir / "trials.csv");
        write_trials_csv(f, results);
    }
    {
        auto f = open_output(dir / "trajectories.csv");
        write_trajectories_csv(f, results);
    }
    {
        auto f = open_output(dir / "resolved-config.txt");
        f << resolved;
    }
    std::size_t censored = 0;
    for (const TrialResult& r : results)
        censored += r.censored ? 1 : 0;
    out << "wrote " << results.size() << " trials (" << censored << " censored) to " << dir.string() << '\n';
    out << "config hash " << std::hex << std::setw(16) << std::setfill('0') << config_hash(resolved)
        << std::dec << std::setfill(' ') << '\n';
    return kSuccess;
}

// ------------------------------------------------------------- report

struct ReportSettings {
    Calibration calibration;
    std::string equivalence = "auto";
    EquivalenceConfig eq;
    bool eq_offset_set = false;
    bool eq_seed_set = false;
};

bool apply_report_key(ReportSettings& s, std::string_view key, std::string_view value) {
    if (apply_calibration_key(s.calibration, key, value))
        return true;
    if (key == "equivalence") {
        const std::string v(value);
        if (v != "auto")
            parse_switch(v);
        s.equivalence = v == "auto" ? v : (parse_switch(v) ? "on" : "off");
    } else if (key == "equivalence-benchmark") {
        const auto kind = parse_benchmark_kind(value);
        if (!kind)
            throw std::invalid_argument("unknown benchmark '" + std::string(value) + "'");
        s.eq.spec.kind = *kind;
    } else if (key == "equivalence-n") {
        s.eq.spec.n = parse_uint(value);
    } else if (key == "equivalence-k") {
        s.eq.spec.k = parse_uint(value);
    } else if (key == "equivalence-steps") {
        s.eq.steps = parse_uint(value);
    } else if (key == "equivalence-trials") {
        s.eq.trials = parse_uint(value);
    } else if (key == "equivalence-seed") {
        s.eq.master_seed = parse_uint(value);
        s.eq_seed_set = true;
    } else if (key == "slot-range-offset") {
        s.eq.slot_range_offset = static_cast<int>(parse_int(value));
        s.eq_offset_set = true;
    } else {
        return false;
    }
    return true;
}

int cmd_report(const std::string& in_dir, std::string out_dir, const std::string& config_path,
               const std::map<std::string, std::string>& flags, bool verbose, std::ostream& out,
               std::ostream& err) {
    const fs::path in(in_dir);
    const fs::path trials_path = in / "trials.csv";
    const fs::path traj_path = in / "trajectories.csv";
    const fs::path resolved_path = in / "resolved-config.txt";
    for (const fs::path& p : {trials_path, traj_path, resolved_path})
        if (!fs::is_regular_file(p))
            throw UsageError("missing input " + p.string() + "; report expects trials.csv, " +
                             "trajectories.csv and resolved-config.txt in " + in.string());

    RunSettings run_settings;
    std::string resolved;
    {
        std::ifstream f(resolved_path, std::ios::binary);
        std::ostringstream buf;
        buf << f.rdbuf();
        resolved = buf.str();
    }
    apply_file(resolved_path, [&run_settings](std::string_view key, std::string_view value) {
        return apply_run_key(run_settings, key, value);
    });

    ReportSettings settings;
    auto apply = [&settings](std::string_view key, std::string_view value) {
        return apply_report_key(settings, key, value);
    };
    if (!config_path.empty())
        apply_file(config_path, apply);
    for (const auto& [key, value] : flags)
        apply_flag(apply, key, value);

    LoadOptions load;
    load.interior_init = run_settings.interior_init;
    load.slot_range_offset = run_settings.slot_range_offset;
    load.max_iterations = run_settings.max_iters;
    std::vector<TrialResult> results;
    try {
        std::ifstream trials(trials_path, std::ios::binary);
        std::ifstream traj(traj_path, std::ios::binary);
        results = read_results_csv(trials, traj, load);
    } catch (const NoDataError& e) {
        throw UsageError(trials_path.string() + ": " + e.what());
    } catch (const CsvError& e) {
        throw UsageError(e.what());
    }
    if (verbose)
        err << "loaded " << results.size() << " trials from " << in.string() << '\n';

    std::vector<TrialResult> semo_interior;
    std::vector<TrialResult> original;
    std::vector<TrialResult> modified;
    std::vector<TrialResult> covering;
    for (const TrialResult& r : results) {
        if (r.benchmark.kind == BenchmarkKind::Ojzj && r.algorithm.mutation == Mutation::OneBit &&
            r.algorithm.interior_init) {
            semo_interior.push_back(r);
            continue;
        }
        covering.push_back(r);
        if (r.algorithm.selection == Selection::SlotParent)
            modified.push_back(r);
        else
            original.push_back(r);
    }

    std::vector<HypothesisReport> reports;
    std::vector<std::pair<std::string, ScalingFit>> fits;
    std::vector<std::string> fit_notes;
    try {
        if (!semo_interior.empty())
            reports.push_back(check_semo_ojzj_failure(semo_interior));
        if (!covering.empty())
            reports.push_back(check_coverage(covering, settings.calibration));
        if (!original.empty()) {
            reports.push_back(check_lower_bound_runtime(original, settings.calibration));
            HypothesisReport scaling = check_scaling_exponent(original, settings.calibration);
            if (!scaling.rows.empty())
                reports.push_back(std::move(scaling));
            for (const Series& s : group_series(original)) {
                if (s.by_n.size() < 3)
                    continue;
                std::vector<TrialResult> copy;
                for (const auto& cell : s.by_n)
                    for (const TrialResult* t : cell)
                        copy.push_back(*t);
                FitOptions options;
                options.resamples = settings.calibration.bootstrap_resamples;
                for (ScalingModel model : {ScalingModel::PurePoly, ScalingModel::PolyLog}) {
                    const char* name = model == ScalingModel::PurePoly ? ":pure_poly" : ":poly_log";
                    if (model == ScalingModel::PolyLog && s.representative.kind == BenchmarkKind::Ojzj)
                        continue;
                    try {
                        fits.emplace_back(s.key + name, fit_scaling(copy, model, options));
                    } catch (const std::runtime_error& e) {
                        fit_notes.push_back(s.key + name + ": " + e.what());
                    }
                }
            }
        }
        if (!modified.empty()) {
            reports.push_back(check_front_spread(modified, settings.calibration));
            reports.push_back(check_border_distance(modified, settings.calibration));
        }
        const bool run_equivalence =
            settings.equivalence == "on" || (settings.equivalence == "auto" && !modified.empty());
        if (run_equivalence) {
            EquivalenceConfig eq = settings.eq;
            eq.alpha = settings.calibration.equivalence_alpha;
            eq.mutation = run_settings.alg == "semo" ? Mutation::OneBit : Mutation::Standard;
            if (!settings.eq_offset_set)
                eq.slot_range_offset = run_settings.slot_range_offset;
            if (!settings.eq_seed_set)
                eq.master_seed = run_settings.seed;
            eq.spec.validate();
            reports.push_back(check_equivalence_modified_original(eq));
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (reports.empty())
        throw UsageError("no hypothesis suite applies to the loaded results");

    ReportContext context{run_settings.seed, config_hash(resolved)};
    if (out_dir.empty())
        out_dir = in_dir;
    prepare_output_dir(out_dir);
    {
        auto f = open_output(fs::path(out_dir) / "report.csv");
        write_report_csv(f, reports, context);
    }
    {
        auto f = open_output(fs::path(out_dir) / "summary.txt");
        write_summary(f, reports, fits, context);
        for (const std::string& note : fit_notes)
            f << "  fit skipped: " << note << '\n';
    }

    bool all_pass = true;
    for (const HypothesisReport& r : reports) {
        out << (r.pass() ? "PASS " : "FAIL ") << r.id << '\n';
        all_pass = all_pass && r.pass();
    }
    return all_pass ? kSuccess : kVerdictFailure;
}

// ------------------------------------------------------------- oracle

int cmd_oracle(const std::string& benchmark, std::size_t n, std::size_t k, std::ostream& out) {
    const auto kind = parse_benchmark_kind(benchmark);
    if (!kind)
        throw UsageError("unknown benchmark '" + benchmark + "'");
    BenchmarkSpec spec{*kind, n, *kind == BenchmarkKind::Ojzj ? k : 0};
    try {
        spec.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (n > kBruteForceMaxN)
        throw UsageError("refusing n = " + std::to_string(n) + ": brute force is capped at n = " +
                         std::to_string(kBruteForceMaxN));
    const ParetoFront analytic = analytic_front(spec);
    const ParetoFront brute = brute_force_front(spec);
    auto print = [&out](const char* label, const ParetoFront& front) {
        out << label << " (" << front.size() << " points):";
        for (const ObjectivePair& p : front.points())
            out << " (" << p.f1 << ',' << p.f2 << ')';
        out << '\n';
    };
    print("analytic", analytic);
    print("brute-force", brute);
    if (analytic == brute) {
        out << "MATCH, " << analytic.size() << " front points\n";
        return kSuccess;
    }
    out << "MISMATCH\n";
    return kVerdictFailure;
}

// ------------------------------------------------------------- bounds

struct BoundsParams {
    std::vector<double> p;
    double lambda = 0;
    double mean = 0;
    double delta = 0;
    std::string g = "inverse";
    std::vector<double> xs;
    std::vector<double> ys;
    double alpha = 1;
    double beta = 1;
};

std::vector<double> parse_doubles(std::string_view text) {
    std::vector<double> out;
    for (const std::string& item : split_list(text))
        out.push_back(parse_double(item));
    return out;
}

bool apply_bounds_key(BoundsParams& b, std::string_view key, std::string_view value) {
    if (key == "p")
        b.p = parse_doubles(value);
    else if (key == "lambda")
        b.lambda = parse_double(value);
    else if (key == "mean")
        b.mean = parse_double(value);
    else if (key == "delta")
        b.delta = parse_double(value);
    else if (key == "g")
        b.g = std::string(value);
    else if (key == "xs")
        b.xs = parse_doubles(value);
    else if (key == "ys")
        b.ys = parse_doubles(value);
    else if (key == "alpha")
        b.alpha = parse_double(value);
    else if (key == "beta")
        b.beta = parse_double(value);
    else
        return false;
    return true;
}

int cmd_bounds(const std::string& kind, const std::string& params_path,
               const std::map<std::string, std::string>& flags, std::ostream& out) {
    BoundsParams b;
    auto apply = [&b](std::string_view key, std::string_view value) { return apply_bounds_key(b, key, value); };
    if (!params_path.empty())
        apply_file(params_path, apply);
    for (const auto& [key, value] : flags)
        apply_flag(apply, key, value);

    out.precision(17);
    try {
        if (kind == "witt-upper" || kind == "witt-lower") {
            if (b.p.empty())
                throw UsageError(kind + " needs success probabilities (--p)");
            const GeometricPhaseSet phases(b.p);
            const double bound = kind == "witt-upper" ? witt_upper_tail(phases, b.lambda)
                                                      : witt_lower_tail(phases, b.lambda);
            out << "E[T]=" << phases.expectation() << " s=" << phases.s() << " p_min=" << phases.p_min() << '\n';
            out << kind << " bound: " << bound << '\n';
        } else if (kind == "chernoff") {
            out << "chernoff bound: " << chernoff_lower_tail(b.mean, b.delta) << '\n';
        } else if (kind == "sandwich") {
            std::function<double(double)> g;
            SumSandwich sandwich;
            if (!b.xs.empty() || !b.ys.empty()) {
                const TabulatedFunction table(b.xs, b.ys);
                g = [table](double x) { return table(x); };
                sandwich = harmonic_sum_bounds(table, b.alpha, b.beta);
            } else {
                if (b.g == "inverse")
                    g = [](double x) { return 1.0 / x; };
                else if (b.g == "inverse-sqrt")
                    g = [](double x) { return 1.0 / std::sqrt(x); };
                else if (b.g == "inverse-square")
                    g = [](double x) { return 1.0 / (x * x); };
                else
                    throw UsageError("unknown function '" + b.g + "'; use inverse, inverse-sqrt, "
                                     "inverse-square or --xs/--ys");
                sandwich = harmonic_sum_bounds(g, b.alpha, b.beta);
            }
            out << "lower: " << sandwich.lower << '\n';
            out << "sum: " << sum_over_range(g, b.alpha, b.beta) << '\n';
            out << "upper: " << sandwich.upper << '\n';
        } else {
            throw UsageError("unknown bound '" + kind + "'; use witt-upper, witt-lower, chernoff or sandwich");
        }
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    return kSuccess;
}

}  // namespace

// ------------------------------------------------------------ settings

ExperimentConfig RunSettings::experiment() const {
    ExperimentConfig config;
    config.benchmarks = benchmarks;
    config.n_grid = n;
    config.k_grid = k;
    config.algorithm = alg == "semo" ? AlgorithmSpec::semo() : AlgorithmSpec::gsemo();
    if (variant == "modified")
        config.algorithm = config.algorithm.modified();
    config.algorithm.max_iterations = max_iters;
    config.algorithm.interior_init = interior_init;
    config.algorithm.slot_range_offset = slot_range_offset;
    config.trials_per_cell = trials;
    config.master_seed = seed;
    config.jobs = jobs;
    return config;
}

std::string RunSettings::resolved_text() const {
    std::vector<std::string> names;
    for (BenchmarkKind kind : benchmarks)
        names.emplace_back(to_string(kind));
    std::ostringstream s;
    s << "# semolab resolved run configuration\n"
      << "benchmark=" << join(names) << '\n'
      << "n=" << join_numbers(n) << '\n'
      << "k=" << join_numbers(k) << '\n'
      << "alg=" << alg << '\n'
      << "variant=" << variant << '\n'
      << "trials=" << trials << '\n'
      << "seed=" << seed << '\n'
      << "max-iters=" << max_iters << '\n'
      << "interior-init=" << (interior_init ? "on" : "off") << '\n'
      << "slot-range-offset=" << slot_range_offset << '\n';
    return s.str();
}

bool apply_run_key(RunSettings& s, std::string_view key, std::string_view value) {
    auto sizes = [](std::string_view text) {
        std::vector<std::size_t> out;
        for (const std::string& item : split_list(text))
            out.push_back(static_cast<std::size_t>(parse_uint(item)));
        return out;
    };
    if (key == "benchmark") {
        s.benchmarks.clear();
        for (const std::string& item : split_list(value)) {
            const auto kind = parse_benchmark_kind(item);
            if (!kind)
                throw std::invalid_argument("unknown benchmark '" + item + "'; use cocz, omm or ojzj");
            s.benchmarks.push_back(*kind);
        }
        if (s.benchmarks.empty())
            throw std::invalid_argument("empty benchmark list");
    } else if (key == "n") {
        s.n = sizes(value);
    } else if (key == "k") {
        s.k = sizes(value);
    } else if (key == "alg") {
        if (value != "semo" && value != "gsemo")
            throw std::invalid_argument("unknown algorithm '" + std::string(value) + "'; use semo or gsemo");
        s.alg = std::string(value);
    } else if (key == "variant") {
        if (value != "original" && value != "modified")
            throw std::invalid_argument("unknown variant '" + std::string(value) +
                                        "'; use original or modified");
        s.variant = std::string(value);
    } else if (key == "trials") {
        s.trials = static_cast<std::size_t>(parse_uint(value));
    } else if (key == "seed") {
        s.seed = parse_uint(value);
    } else if (key == "max-iters") {
        s.max_iters = parse_uint(value);
    } else if (key == "interior-init") {
        s.interior_init = parse_switch(value);
    } else if (key == "slot-range-offset") {
        s.slot_range_offset = static_cast<int>(parse_int(value));
    } else if (key == "jobs") {
        s.jobs = static_cast<int>(parse_int(value));
    } else if (key == "out") {
        s.out = std::string(value);
    } else {
        return false;
    }
    return true;
}

std::uint64_t config_hash(std::string_view resolved_text) { return fnv1a(resolved_text); }

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Simulate (G)SEMO on COCZ, OMM and OJZJ and test runtime hypotheses"};
    app.name("semolab");
    app.require_subcommand(1);
    bool verbose = false;
    app.add_flag("-v,--verbose", verbose, "Progress messages on stderr");

    std::map<std::string, std::string> flags;
    std::map<std::string, std::vector<std::string>> lists;
    auto list_option = [&lists](CLI::App* sub, const std::string& key, const std::string& help) {
        return sub->add_option("--" + key, lists[key], help)->delimiter(',');
    };
    auto value_option = [&flags](CLI::App* sub, const std::string& key, const std::string& help) {
        return sub->add_option_function<std::string>(
            "--" + key, [&flags, key](const std::string& v) { flags[key] = v; }, help);
    };

    std::string config_path;
    CLI::App* run_cmd = app.add_subcommand("run", "Execute an experiment grid and write CSV results");
    run_cmd->add_option("--config", config_path, "key=value config file; flags override it");
    list_option(run_cmd, "benchmark", "cocz, omm or ojzj (repeatable)");
    list_option(run_cmd, "n", "Problem sizes (repeatable)");
    list_option(run_cmd, "k", "OJZJ gap sizes (repeatable)");
    value_option(run_cmd, "alg", "semo or gsemo");
    value_option(run_cmd, "variant", "original or modified");
    value_option(run_cmd, "trials", "Trials per cell");
    value_option(run_cmd, "seed", "Master seed");
    value_option(run_cmd, "max-iters", "Iteration cutoff (0 = default)");
    value_option(run_cmd, "interior-init", "on or off (OJZJ only)");
    value_option(run_cmd, "slot-range-offset", "Shift of the slot range (negative control)");
    value_option(run_cmd, "jobs", "Worker cap (0 = all cores)");
    value_option(run_cmd, "out", "Output directory");

    std::string in_dir;
    std::string report_out;
    std::string report_config;
    CLI::App* report_cmd = app.add_subcommand("report", "Evaluate hypothesis suites on stored results");
    report_cmd->add_option("--in", in_dir, "Directory holding trials.csv and trajectories.csv")->required();
    report_cmd->add_option("--out", report_out, "Directory for report.csv and summary.txt (default: --in)");
    report_cmd->add_option("--config", report_config, "Calibration and equivalence settings");
    value_option(report_cmd, "equivalence", "on, off or auto");
    value_option(report_cmd, "equivalence-n", "Problem size of the equivalence test");
    value_option(report_cmd, "equivalence-steps", "Non-idle steps m");
    value_option(report_cmd, "equivalence-trials", "Trials per variant");
    value_option(report_cmd, "slot-range-offset", "Slot range shift for the equivalence test");

    std::string oracle_benchmark;
    std::size_t oracle_n = 0;
    std::size_t oracle_k = 0;
    CLI::App* oracle_cmd = app.add_subcommand("oracle", "Compare the analytic front with brute force");
    oracle_cmd->add_option("--benchmark", oracle_benchmark, "cocz, omm or ojzj")->required();
    oracle_cmd->add_option("--n", oracle_n, "Problem size (at most 20)")->required();
    oracle_cmd->add_option("--k", oracle_k, "OJZJ gap size");

    std::string bound_kind;
    std::string params_path;
    CLI::App* bounds_cmd = app.add_subcommand("bounds", "Evaluate tail bounds and sum sandwiches");
    bounds_cmd->add_option("kind", bound_kind, "witt-upper, witt-lower, chernoff or sandwich")->required();
    bounds_cmd->add_option("--params", params_path, "key=value parameter file");
    for (const char* key : {"p", "xs", "ys"})
        value_option(bounds_cmd, key, "Comma-separated list");
    for (const char* key : {"lambda", "mean", "delta", "g", "alpha", "beta"})
        value_option(bounds_cmd, key, "Scalar parameter");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kUsageError;
    }

    try {
        if (run_cmd->parsed()) {
            for (const auto& [key, values] : lists)
                if (!values.empty())
                    flags[key] = join(values);
            return cmd_run(config_path, flags, verbose, out, err);
        }
        if (report_cmd->parsed())
            return cmd_report(in_dir, report_out, report_config, flags, verbose, out, err);
        if (oracle_cmd->parsed())
            return cmd_oracle(oracle_benchmark, oracle_n, oracle_k, out);
        return cmd_bounds(bound_kind, params_path, flags, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const std::overflow_error& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }
}

}  // namespace semolab::cli
