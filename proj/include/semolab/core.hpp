#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semolab/bitstring.hpp"

namespace semolab {

/// Bi-objective value (f1, f2) under maximization.
struct ObjectivePair {
    std::int64_t f1 = 0;
    std::int64_t f2 = 0;

    friend constexpr bool operator==(const ObjectivePair&, const ObjectivePair&) = default;
    friend constexpr auto operator<=>(const ObjectivePair&, const ObjectivePair&) = default;
};

/// u weakly dominates v: componentwise u >= v.
constexpr bool weak_dominates(const ObjectivePair& u, const ObjectivePair& v) noexcept {
    return u.f1 >= v.f1 && u.f2 >= v.f2;
}

/// u weakly dominates v and u != v.
constexpr bool strict_dominates(const ObjectivePair& u, const ObjectivePair& v) noexcept {
    return weak_dominates(u, v) && u != v;
}

constexpr bool incomparable(const ObjectivePair& u, const ObjectivePair& v) noexcept {
    return !weak_dominates(u, v) && !weak_dominates(v, u);
}

struct Member {
    Individual x;
    ObjectivePair f;
};

enum class InsertOutcome {
    Rejected,  ///< offspring strictly dominated; population untouched
    Replaced,  ///< offspring took the place of a member with equal objective value
    Changed,   ///< the set of objective values in the population changed
};

/// Mutually non-dominated population, stored as a dense array of slots
/// indexed by a benchmark-specific key. At most one member per slot.
///
/// The slot key must be such that two individuals with the same key are
/// always comparable; then the Algorithm-1 update keeps at most one of them
/// and slot uniqueness follows. A violation is reported as std::logic_error.
class Population {
public:
    explicit Population(std::size_t slot_count);

    std::size_t size() const noexcept { return occupied_.size(); }
    bool empty() const noexcept { return occupied_.empty(); }
    std::size_t slot_count() const noexcept { return slots_.size(); }

    bool occupied(std::size_t slot) const noexcept { return position_[slot] != kNone; }
    const Member& at_slot(std::size_t slot) const noexcept { return slots_[slot]; }

    /// i-th member in internal order, i in [0, size()).
    const Member& member(std::size_t i) const noexcept { return slots_[occupied_[i]]; }
    std::size_t slot_of(std::size_t i) const noexcept { return occupied_[i]; }
    std::span<const std::uint32_t> occupied_slots() const noexcept { return occupied_; }

    /// Removes every member whose objective value `fy` weakly dominates, then
    /// adds `y` unless a remaining member strictly dominates `fy`. On
    /// acceptance the storage of `y` is swapped into the population and `y`
    /// is left holding unspecified bits of the same length (or empty).
    InsertOutcome insert(Individual& y, const ObjectivePair& fy, std::size_t slot);

    /// Copying variant of insert().
    InsertOutcome insert_copy(const Individual& y, const ObjectivePair& fy, std::size_t slot);

    /// Objective values of all members, sorted ascending by f1.
    std::vector<ObjectivePair> objectives() const;

    /// Exhaustive pairwise check of mutual non-domination and slot
    /// bookkeeping. Returns a description of the first violation found.
    std::optional<std::string> validate() const;

private:
    static constexpr std::uint32_t kNone = 0xffffffffU;

    void erase_slot(std::size_t slot) noexcept;
    void occupy_slot(std::size_t slot);

    std::vector<Member> slots_;
    std::vector<std::uint32_t> occupied_;
    std::vector<std::uint32_t> position_;
    std::vector<std::uint32_t> scratch_;
};

}  // namespace semolab
