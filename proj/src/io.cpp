#include "semolab/io.hpp"

#include <charconv>
#include <cmath>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string_view>

namespace semolab {

namespace {

std::string shortest(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& text) {
    if (text.find_first_of(",\"\n") == std::string::npos)
        return text;
    std::string out = "\"";
    for (char c : text) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos)
            break;
        start = comma + 1;
    }
    return out;
}

std::string_view trim_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r')
        line.remove_suffix(1);
    return line;
}

template <typename T>
T parse_number(std::string_view field, const std::string& where) {
    T value{};
    const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (res.ec != std::errc{} || res.ptr != field.data() + field.size())
        throw CsvError(where + ": cannot parse '" + std::string(field) + "' as a number");
    return value;
}

}  // namespace

void write_trials_csv(std::ostream& out, const std::vector<TrialResult>& results) {
    out << kTrialsHeader << '\n';
    for (const TrialResult& r : results) {
        out << to_string(r.benchmark.kind) << ',' << r.benchmark.n << ','
            << (r.benchmark.kind == BenchmarkKind::Ojzj ? r.benchmark.k : 0) << ','
            << r.algorithm.algorithm_name() << ',' << r.algorithm.variant_name() << ',' << r.seed << ','
            << r.runtime_evals << ',' << r.runtime_iters << ',' << (r.censored ? 1 : 0) << '\n';
    }
}

void write_trajectories_csv(std::ostream& out, const std::vector<TrialResult>& results) {
    out << kTrajectoryHeader << '\n';
    for (std::size_t id = 0; id < results.size(); ++id) {
        for (const TrajectoryRecord& rec : results[id].trajectory) {
            out << id << ',' << rec.t << ',' << rec.pop_size << ',' << rec.max_g1 << ',' << rec.z_count
                << ',' << rec.d_pf << ',' << shortest(rec.front_covered()) << '\n';
        }
    }
}

std::vector<TrialResult> read_results_csv(std::istream& trials, std::istream& trajectories,
                                          const LoadOptions& options) {
    std::vector<TrialResult> results;
    std::string line;
    std::size_t line_no = 0;
    if (!std::getline(trials, line))
        throw NoDataError("trials file is empty: no data");
    ++line_no;
    if (trim_cr(line) != kTrialsHeader)
        throw CsvError("trials.csv:1: unexpected header, expected '" + std::string(kTrialsHeader) + "'");

    std::map<std::string, std::size_t> front_sizes;
    while (std::getline(trials, line)) {
        ++line_no;
        const std::string_view row = trim_cr(line);
        if (row.empty())
            continue;
        const std::string where = "trials.csv:" + std::to_string(line_no);
        const auto f = split(row);
        if (f.size() != 9)
            throw CsvError(where + ": expected 9 columns, found " + std::to_string(f.size()));
        TrialResult r;
        const auto kind = parse_benchmark_kind(f[0]);
        if (!kind)
            throw CsvError(where + ": unknown benchmark '" + std::string(f[0]) + "'");
        r.benchmark = {*kind, parse_number<std::size_t>(f[1], where), parse_number<std::size_t>(f[2], where)};
        try {
            r.benchmark.validate();
        } catch (const std::invalid_argument& e) {
            throw CsvError(where + ": " + e.what());
        }
        if (f[3] == "semo")
            r.algorithm = AlgorithmSpec::semo();
        else if (f[3] == "gsemo")
            r.algorithm = AlgorithmSpec::gsemo();
        else
            throw CsvError(where + ": unknown algorithm '" + std::string(f[3]) + "'");
        if (f[4] == "modified")
            r.algorithm = r.algorithm.modified();
        else if (f[4] != "original")
            throw CsvError(where + ": unknown variant '" + std::string(f[4]) + "'");
        r.algorithm.max_iterations = options.max_iterations;
        r.algorithm.interior_init = options.interior_init;
        r.algorithm.slot_range_offset = options.slot_range_offset;
        r.seed = parse_number<std::uint64_t>(f[5], where);
        r.runtime_evals = parse_number<std::uint64_t>(f[6], where);
        r.runtime_iters = parse_number<std::uint64_t>(f[7], where);
        const auto censored = parse_number<int>(f[8], where);
        if (censored != 0 && censored != 1)
            throw CsvError(where + ": censored must be 0 or 1");
        r.censored = censored == 1;
        results.push_back(std::move(r));
    }
    if (results.empty())
        throw NoDataError("trials file has a header but no data rows: no data");

    line_no = 0;
    if (!std::getline(trajectories, line))
        throw CsvError("trajectories.csv: file is empty");
    ++line_no;
    if (trim_cr(line) != kTrajectoryHeader)
        throw CsvError("trajectories.csv:1: unexpected header, expected '" +
                       std::string(kTrajectoryHeader) + "'");
    while (std::getline(trajectories, line)) {
        ++line_no;
        const std::string_view row = trim_cr(line);
        if (row.empty())
            continue;
        const std::string where = "trajectories.csv:" + std::to_string(line_no);
        const auto f = split(row);
        if (f.size() != 7)
            throw CsvError(where + ": expected 7 columns, found " + std::to_string(f.size()));
        const auto id = parse_number<std::size_t>(f[0], where);
        if (id >= results.size())
            throw CsvError(where + ": trial_id " + std::to_string(id) + " has no trials.csv row");
        TrialResult& r = results[id];
        const std::string key = r.benchmark.key();
        auto it = front_sizes.find(key);
        if (it == front_sizes.end())
            it = front_sizes.emplace(key, analytic_front(r.benchmark).size()).first;
        TrajectoryRecord rec;
        rec.t = parse_number<std::uint64_t>(f[1], where);
        rec.pop_size = parse_number<std::size_t>(f[2], where);
        rec.max_g1 = parse_number<std::int64_t>(f[3], where);
        rec.z_count = parse_number<std::int64_t>(f[4], where);
        rec.d_pf = parse_number<std::int64_t>(f[5], where);
        const auto covered = parse_number<double>(f[6], where);
        rec.front_size = it->second;
        rec.front_points = static_cast<std::size_t>(std::llround(covered * static_cast<double>(it->second)));
        r.trajectory.push_back(std::move(rec));
    }
    return results;
}

void write_report_csv(std::ostream& out, const std::vector<HypothesisReport>& reports,
                      const ReportContext& context) {
    out << kReportHeader << '\n';
    for (const HypothesisReport& report : reports) {
        const char* suite_verdict = report.pass() ? "PASS" : "FAIL";
        for (const ReportRow& row : report.rows) {
            out << report.id << ',' << csv_field(row.cell) << ',' << row.passed << ',' << row.total << ','
                << shortest(row.frequency()) << ',' << shortest(row.threshold) << ','
                << (row.ok() ? "PASS" : "FAIL") << ',' << suite_verdict << ',' << csv_field(row.detail)
                << ',' << context.master_seed << ',' << std::hex << std::setw(16) << std::setfill('0')
                << context.config_hash << std::dec << std::setfill(' ') << '\n';
        }
        if (report.rows.empty()) {
            out << report.id << ",(none),0,0,0,0,FAIL," << suite_verdict << ','
                << csv_field(report.notes.empty() ? std::string("no applicable cells") : report.notes.front())
                << ',' << context.master_seed << ',' << std::hex << std::setw(16) << std::setfill('0')
                << context.config_hash << std::dec << std::setfill(' ') << '\n';
        }
    }
}

void write_summary(std::ostream& out, const std::vector<HypothesisReport>& reports,
                   const std::vector<std::pair<std::string, ScalingFit>>& fits,
                   const ReportContext& context) {
    out << "semolab report\n";
    out << "master seed: " << context.master_seed << '\n';
    out << "config hash: " << std::hex << std::setw(16) << std::setfill('0') << context.config_hash
        << std::dec << std::setfill(' ') << "\n\n";
    for (const HypothesisReport& report : reports) {
        out << (report.pass() ? "PASS " : "FAIL ") << report.id << '\n';
        for (const ReportRow& row : report.rows) {
            out << "  [" << (row.ok() ? "ok" : "!!") << "] " << row.cell << "  " << row.passed << '/'
                << row.total << " (threshold " << row.threshold << ")  " << row.detail << '\n';
        }
        for (const std::string& note : report.notes)
            out << "  note: " << note << '\n';
    }
    if (!fits.empty())
        out << "\nscaling fits (log median runtime vs log n)\n";
    for (const auto& [key, fit] : fits) {
        out << "  " << key << ": exponent " << fit.exponent << " [" << fit.exponent_ci_low << ", "
            << fit.exponent_ci_high << "], constant " << fit.constant << ", " << fit.resamples
            << " bootstrap resamples\n";
        for (const CellSummary& c : fit.cells)
            out << "    n=" << c.spec.n << " median=" << c.median << " iqr=[" << c.q25 << ", " << c.q75
                << "] censored=" << c.censored << '/' << c.trials << '\n';
    }
}

}  // namespace semolab
