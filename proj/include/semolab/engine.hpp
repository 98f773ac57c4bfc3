#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semolab/benchmarks.hpp"
#include "semolab/core.hpp"
#include "semolab/rng.hpp"

namespace semolab {

enum class Mutation { OneBit, Standard };
enum class Selection { UniformParent, SlotParent };

/// SEMO = OneBit + UniformParent, GSEMO = Standard + UniformParent; the
/// modified variants draw a slot index instead of a member.
struct AlgorithmSpec {
    Mutation mutation = Mutation::Standard;
    Selection selection = Selection::UniformParent;
    std::uint64_t max_iterations = 0;  ///< 0 selects default_max_iterations()
    /// OJZJ only: draw the initial individual with k <= |x|_1 <= n - k.
    bool interior_init = false;
    /// Shifts the upper end of the slot range drawn by SlotParent. Only
    /// non-zero in negative-control experiments.
    int slot_range_offset = 0;
    /// Store per-sample slot occupancy bitmaps in the trajectory.
    bool record_occupancy = false;

    static AlgorithmSpec semo() { return {Mutation::OneBit, Selection::UniformParent}; }
    static AlgorithmSpec gsemo() { return {Mutation::Standard, Selection::UniformParent}; }
    AlgorithmSpec modified() const {
        AlgorithmSpec out = *this;
        out.selection = Selection::SlotParent;
        return out;
    }

    /// "semo" or "gsemo".
    std::string_view algorithm_name() const noexcept;
    /// "original" or "modified".
    std::string_view variant_name() const noexcept;

    friend bool operator==(const AlgorithmSpec&, const AlgorithmSpec&) = default;
};

/// 50 n^2 ln n for COCZ and OMM, 50 n^(k+1) for OJZJ. Throws
/// std::overflow_error when the value does not fit the iteration counter.
std::uint64_t default_max_iterations(const BenchmarkSpec& spec);

struct RunState {
    Population population;
    std::uint64_t iteration = 0;
    std::uint64_t evaluations = 0;
    Rng rng;
    Individual offspring;  ///< scratch buffer reused across iterations
};

/// Snapshot of the processes tracked during a run. max_g1 and z_count are
/// COCZ-only and are -1 for the other benchmarks.
struct TrajectoryRecord {
    std::uint64_t t = 0;
    std::size_t pop_size = 0;
    std::int64_t max_g1 = -1;
    std::int64_t z_count = -1;
    std::int64_t d_pf = 0;
    std::size_t front_points = 0;  ///< distinct front points present
    std::size_t front_size = 0;
    std::vector<bool> occupancy;   ///< empty unless requested

    double front_covered() const noexcept {
        return front_size == 0 ? 0.0
                               : static_cast<double>(front_points) / static_cast<double>(front_size);
    }

    friend bool operator==(const TrajectoryRecord&, const TrajectoryRecord&) = default;
};

struct TrialResult {
    BenchmarkSpec benchmark;
    AlgorithmSpec algorithm;
    std::uint64_t seed = 0;
    std::uint64_t runtime_evals = 0;
    std::uint64_t runtime_iters = 0;
    bool censored = false;
    std::vector<TrajectoryRecord> trajectory;

    friend bool operator==(const TrialResult&, const TrialResult&) = default;
};

/// Flips exactly one uniformly chosen position. Returns the position.
std::size_t mutate_one_bit(Individual& x, Rng& rng);
/// Flips each position independently with probability 1/n. Returns the
/// number of flipped positions.
std::size_t mutate_standard(Individual& x, Rng& rng);

/// Index in [0, P.size()) of a uniformly chosen member.
std::size_t select_parent_uniform(const Population& population, Rng& rng);

/// Draws a slot uniformly from [0, max_slot + offset]; returns it if
/// occupied, nothing for an idle iteration.
std::optional<std::size_t> select_parent_slot(const Population& population,
                                              const Benchmark& benchmark, Rng& rng,
                                              int slot_range_offset = 0);

/// Initial state: one uniformly random (or interior, if requested) individual,
/// evaluated once.
RunState initial_state(const Benchmark& benchmark, const AlgorithmSpec& algorithm,
                       std::uint64_t seed);

struct StepResult {
    bool idle = false;
    InsertOutcome outcome = InsertOutcome::Rejected;
};

/// One iteration of the (G)SEMO loop.
StepResult step(RunState& state, const AlgorithmSpec& algorithm, const Benchmark& benchmark);

TrajectoryRecord measure(const RunState& state, const Benchmark& benchmark,
                         bool with_occupancy = false);

/// Iterations between periodic trajectory samples: ceil(n^2 / 200).
std::uint64_t sample_interval(std::size_t n) noexcept;

/// Iterates step() until the population covers the front or the iteration
/// cutoff is reached. Records a trajectory sample at t = 0, every
/// sample_interval(n) iterations, whenever the number of covered front
/// points, d_PF or max g1 changes, and at the final iteration.
TrialResult run_until_cover(const BenchmarkSpec& spec, const AlgorithmSpec& algorithm,
                            std::uint64_t seed);

}  // namespace semolab
