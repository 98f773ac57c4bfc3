#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semolab/core.hpp"

namespace semolab {

enum class BenchmarkKind { Cocz, Omm, Ojzj };

std::string_view to_string(BenchmarkKind kind) noexcept;
std::optional<BenchmarkKind> parse_benchmark_kind(std::string_view name) noexcept;

/// Problem description. `k` is the OJZJ gap size and is ignored otherwise.
struct BenchmarkSpec {
    BenchmarkKind kind = BenchmarkKind::Cocz;
    std::size_t n = 0;
    std::size_t k = 0;

    /// Throws std::invalid_argument when the combination is not defined:
    /// n < 2, odd n for COCZ, or k outside [2..n] for OJZJ.
    void validate() const;

    /// Stable textual key such as "ojzj:n=12:k=2".
    std::string key() const;

    friend bool operator==(const BenchmarkSpec&, const BenchmarkSpec&) = default;
};

/// Set of maximal objective values, sorted ascending by f1.
class ParetoFront {
public:
    ParetoFront() = default;
    /// Sorts and de-duplicates `points`; does not check maximality.
    explicit ParetoFront(std::vector<ObjectivePair> points);

    std::size_t size() const noexcept { return points_.size(); }
    const std::vector<ObjectivePair>& points() const noexcept { return points_; }
    bool contains(const ObjectivePair& f) const noexcept;

    /// Writes a header row "f1,f2" followed by one row per point.
    void write_csv(std::ostream& out) const;

    friend bool operator==(const ParetoFront&, const ParetoFront&) = default;

private:
    std::vector<ObjectivePair> points_;
};

ObjectivePair eval_cocz(const Individual& x);
ObjectivePair eval_omm(const Individual& x);
ObjectivePair eval_ojzj(const Individual& x, std::size_t k);

ParetoFront analytic_front(const BenchmarkSpec& spec);

/// Largest n accepted by brute_force_front.
inline constexpr std::size_t kBruteForceMaxN = 20;

/// Exact front by enumerating all 2^n individuals. OpenMP-parallel over the
/// search space; throws std::length_error for n > kBruteForceMaxN.
ParetoFront brute_force_front(const BenchmarkSpec& spec);
/// Single-threaded reference for brute_force_front.
ParetoFront brute_force_front_serial(const BenchmarkSpec& spec);

bool is_pareto_optimal(const BenchmarkSpec& spec, const ObjectivePair& f);

/// Validated benchmark instance used by the engine. Besides evaluation it
/// knows the slot key used for per-slot population storage (g2 for COCZ,
/// the number of ones otherwise) and the border distance d_PF.
class Benchmark {
public:
    explicit Benchmark(const BenchmarkSpec& spec);

    const BenchmarkSpec& spec() const noexcept { return spec_; }
    BenchmarkKind kind() const noexcept { return spec_.kind; }
    std::size_t n() const noexcept { return spec_.n; }

    ObjectivePair evaluate(const Individual& x) const;

    /// Largest slot index: n/2 for COCZ, n for OMM and OJZJ.
    std::size_t max_slot() const noexcept { return max_slot_; }
    std::size_t slot_count() const noexcept { return max_slot_ + 1; }
    std::size_t slot_key(const Individual& x) const;

    /// min{slot, max_slot - slot}: distance of an individual to the front borders.
    std::size_t border_distance(std::size_t slot) const noexcept {
        return slot < max_slot_ - slot ? slot : max_slot_ - slot;
    }

    /// Number of ones in the first half, recovered from a COCZ objective value.
    std::int64_t cocz_g1(const ObjectivePair& f) const noexcept {
        return (f.f1 + f.f2 - static_cast<std::int64_t>(spec_.n / 2)) / 2;
    }

    /// Closed-form membership test; agrees with front().contains().
    bool is_pareto_optimal(const ObjectivePair& f) const noexcept;
    const ParetoFront& front() const noexcept { return front_; }

private:
    BenchmarkSpec spec_;
    std::size_t max_slot_;
    ParetoFront front_;
};

}  // namespace semolab
