#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "semolab/benchmarks.hpp"
#include "semolab/engine.hpp"
#include "semolab/experiments.hpp"

namespace semolab::cli {

enum ExitStatus : int { kSuccess = 0, kVerdictFailure = 1, kUsageError = 2 };

/// Settings of a `run` invocation after merging the config file and flags.
struct RunSettings {
    std::vector<BenchmarkKind> benchmarks{BenchmarkKind::Cocz};
    std::vector<std::size_t> n;
    std::vector<std::size_t> k;
    std::string alg = "gsemo";
    std::string variant = "original";
    std::size_t trials = 1;
    std::uint64_t seed = 1;
    std::uint64_t max_iters = 0;
    bool interior_init = false;
    int slot_range_offset = 0;
    int jobs = 0;
    std::string out = "out";

    ExperimentConfig experiment() const;
    /// key=value snapshot; `out` and `jobs` are left out because they do
    /// not influence results.
    std::string resolved_text() const;
};

/// Returns false for an unknown key; throws std::invalid_argument for a bad value.
bool apply_run_key(RunSettings& settings, std::string_view key, std::string_view value);

/// FNV-1a of the resolved-config snapshot.
std::uint64_t config_hash(std::string_view resolved_text);

/// Entry point shared by the executable and the integration tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace semolab::cli
