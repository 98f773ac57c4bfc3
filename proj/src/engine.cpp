#include "semolab/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace semolab {

std::string_view AlgorithmSpec::algorithm_name() const noexcept {
    return mutation == Mutation::OneBit ? "semo" : "gsemo";
}

std::string_view AlgorithmSpec::variant_name() const noexcept {
    return selection == Selection::UniformParent ? "original" : "modified";
}

std::uint64_t default_max_iterations(const BenchmarkSpec& spec) {
    const auto n = static_cast<long double>(spec.n);
    long double value = 0;
    if (spec.kind == BenchmarkKind::Ojzj)
        value = 50.0L * std::pow(n, static_cast<long double>(spec.k + 1));
    else
        value = 50.0L * n * n * std::log(n);
    if (!(value < 0x1p62L))
        throw std::overflow_error("iteration cutoff for " + spec.key() +
                                  " overflows the iteration counter");
    return static_cast<std::uint64_t>(std::ceil(value));
}

std::size_t mutate_one_bit(Individual& x, Rng& rng) {
    const std::size_t pos = static_cast<std::size_t>(rng.below(x.size()));
    x.flip(pos);
    return pos;
}

std::size_t mutate_standard(Individual& x, Rng& rng) {
    const std::size_t n = x.size();
    if (n == 1) {
        x.flip(0);
        return 1;
    }
    // Gaps between flipped positions are geometric with success rate 1/n.
    std::geometric_distribution<std::uint64_t> gap(1.0 / static_cast<double>(n));
    std::size_t flips = 0;
    std::uint64_t pos = gap(rng.engine());
    while (pos < n) {
        x.flip(static_cast<std::size_t>(pos));
        ++flips;
        pos += 1 + gap(rng.engine());
    }
    return flips;
}

std::size_t select_parent_uniform(const Population& population, Rng& rng) {
    return static_cast<std::size_t>(rng.below(population.size()));
}

std::optional<std::size_t> select_parent_slot(const Population& population,
                                              const Benchmark& benchmark, Rng& rng,
                                              int slot_range_offset) {
    const auto top = static_cast<std::int64_t>(benchmark.max_slot()) + slot_range_offset;
    if (top < 0)
        throw std::invalid_argument("slot range offset leaves no slots to draw");
    const auto slot = static_cast<std::size_t>(rng.below(static_cast<std::uint64_t>(top) + 1));
    if (slot >= population.slot_count() || !population.occupied(slot))
        return std::nullopt;
    return slot;
}

RunState initial_state(const Benchmark& benchmark, const AlgorithmSpec& algorithm,
                       std::uint64_t seed) {
    RunState state{Population(benchmark.slot_count()), 0, 0, Rng(seed), Individual{}};
    const std::size_t n = benchmark.n();
    const bool interior = algorithm.interior_init && benchmark.kind() == BenchmarkKind::Ojzj;
    const std::size_t k = benchmark.spec().k;
    if (interior && 2 * k > n)
        throw std::invalid_argument("interior initialization needs 2k <= n");

    Individual x(n);
    for (;;) {
        for (std::size_t i = 0; i < n; ++i)
            x.set(i, state.rng.coin());
        if (!interior)
            break;
        const std::size_t ones = x.count();
        if (ones >= k && ones <= n - k)
            break;
    }
    const ObjectivePair f = benchmark.evaluate(x);
    state.evaluations = 1;
    state.population.insert(x, f, benchmark.slot_key(x));
    state.offspring = Individual(n);
    return state;
}

StepResult step(RunState& state, const AlgorithmSpec& algorithm, const Benchmark& benchmark) {
    StepResult result;
    const Member* parent = nullptr;
    if (algorithm.selection == Selection::UniformParent) {
        parent = &state.population.member(select_parent_uniform(state.population, state.rng));
    } else {
        const auto slot = select_parent_slot(state.population, benchmark, state.rng,
                                             algorithm.slot_range_offset);
        if (!slot) {
            ++state.iteration;
            result.idle = true;
            return result;
        }
        parent = &state.population.at_slot(*slot);
    }

    state.offspring.assign(parent->x);
    const std::size_t flips = algorithm.mutation == Mutation::OneBit
                                  ? (mutate_one_bit(state.offspring, state.rng), 1)
                                  : mutate_standard(state.offspring, state.rng);
    ++state.evaluations;
    ++state.iteration;

    if (flips == 0) {
        // A copy of the parent only replaces the parent itself.
        result.outcome = InsertOutcome::Replaced;
        return result;
    }
    const ObjectivePair f = benchmark.evaluate(state.offspring);
    result.outcome = state.population.insert(state.offspring, f, benchmark.slot_key(state.offspring));
    return result;
}

TrajectoryRecord measure(const RunState& state, const Benchmark& benchmark, bool with_occupancy) {
    TrajectoryRecord rec;
    const Population& pop = state.population;
    rec.t = state.iteration;
    rec.pop_size = pop.size();
    rec.front_size = benchmark.front().size();
    const bool cocz = benchmark.kind() == BenchmarkKind::Cocz;

    std::int64_t d_pf = std::numeric_limits<std::int64_t>::max();
    std::int64_t max_g1 = -1;
    std::int64_t z_count = 0;
    for (std::size_t i = 0; i < pop.size(); ++i) {
        const ObjectivePair& f = pop.member(i).f;
        d_pf = std::min(d_pf, static_cast<std::int64_t>(benchmark.border_distance(pop.slot_of(i))));
        if (benchmark.is_pareto_optimal(f))
            ++rec.front_points;
        if (cocz) {
            const std::int64_t g1 = benchmark.cocz_g1(f);
            if (g1 > max_g1) {
                max_g1 = g1;
                z_count = 1;
            } else if (g1 == max_g1) {
                ++z_count;
            }
        }
    }
    rec.d_pf = pop.empty() ? 0 : d_pf;
    if (cocz) {
        rec.max_g1 = max_g1;
        rec.z_count = z_count;
    }
    if (with_occupancy) {
        rec.occupancy.assign(pop.slot_count(), false);
        for (std::uint32_t s : pop.occupied_slots())
            rec.occupancy[s] = true;
    }
    return rec;
}

std::uint64_t sample_interval(std::size_t n) noexcept {
    const std::uint64_t sq = static_cast<std::uint64_t>(n) * n;
    return std::max<std::uint64_t>(1, (sq + 199) / 200);
}

TrialResult run_until_cover(const BenchmarkSpec& spec, const AlgorithmSpec& algorithm,
                            std::uint64_t seed) {
    const Benchmark benchmark(spec);
    TrialResult result;
    result.benchmark = spec;
    result.algorithm = algorithm;
    result.seed = seed;
    const std::uint64_t cutoff =
        algorithm.max_iterations != 0 ? algorithm.max_iterations : default_max_iterations(spec);
    const std::uint64_t interval = sample_interval(spec.n);
    const bool occupancy = algorithm.record_occupancy;

    RunState state = initial_state(benchmark, algorithm, seed);
    TrajectoryRecord current = measure(state, benchmark, occupancy);
    result.trajectory.push_back(current);
    auto covered = [&] { return current.front_points == current.front_size; };

    while (!covered() && state.iteration < cutoff) {
        const StepResult s = step(state, algorithm, benchmark);
        bool record = state.iteration % interval == 0;
        if (s.outcome == InsertOutcome::Changed) {
            TrajectoryRecord next = measure(state, benchmark, occupancy);
            record = record || next.front_points != current.front_points ||
                     next.d_pf != current.d_pf || next.max_g1 != current.max_g1;
            current = std::move(next);
        }
        current.t = state.iteration;
        if (record)
            result.trajectory.push_back(current);
    }
    if (result.trajectory.back().t != state.iteration)
        result.trajectory.push_back(current);

    result.censored = !covered();
    result.runtime_evals = state.evaluations;
    result.runtime_iters = state.iteration;
    return result;
}

}  // namespace semolab
