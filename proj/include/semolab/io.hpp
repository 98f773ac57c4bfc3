#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "semolab/engine.hpp"
#include "semolab/experiments.hpp"

namespace semolab {

inline constexpr const char* kTrialsHeader =
    "benchmark,n,k,algorithm,variant,seed,runtime_evals,runtime_iters,censored";
inline constexpr const char* kTrajectoryHeader = "trial_id,t,pop_size,max_g1,z_count,d_pf,front_covered";
inline constexpr const char* kReportHeader =
    "suite,cell,passed,total,frequency,threshold,cell_verdict,suite_verdict,detail,master_seed,config_hash";

/// One row per trial. trial_id in the trajectory file is the 0-based row
/// index in this file.
void write_trials_csv(std::ostream& out, const std::vector<TrialResult>& results);
void write_trajectories_csv(std::ostream& out, const std::vector<TrialResult>& results);

/// Malformed CSV input; the message names the source and line.
class CsvError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A trials file without data rows.
class NoDataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Run settings that are not part of the trials CSV columns.
struct LoadOptions {
    bool interior_init = false;
    int slot_range_offset = 0;
    std::uint64_t max_iterations = 0;
};

std::vector<TrialResult> read_results_csv(std::istream& trials, std::istream& trajectories,
                                          const LoadOptions& options = {});

struct ReportContext {
    std::uint64_t master_seed = 0;
    std::uint64_t config_hash = 0;
};

void write_report_csv(std::ostream& out, const std::vector<HypothesisReport>& reports,
                      const ReportContext& context);
void write_summary(std::ostream& out, const std::vector<HypothesisReport>& reports,
                   const std::vector<std::pair<std::string, ScalingFit>>& fits,
                   const ReportContext& context);

}  // namespace semolab
