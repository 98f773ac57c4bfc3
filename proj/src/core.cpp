#include "semolab/core.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace semolab {

Population::Population(std::size_t slot_count) : slots_(slot_count), position_(slot_count, kNone) {
    if (slot_count == 0 || slot_count >= kNone)
        throw std::invalid_argument("population slot count out of range");
    occupied_.reserve(slot_count);
    scratch_.reserve(slot_count);
}

void Population::erase_slot(std::size_t slot) noexcept {
    const std::uint32_t pos = position_[slot];
    const std::uint32_t last = occupied_.back();
    occupied_[pos] = last;
    position_[last] = pos;
    occupied_.pop_back();
    position_[slot] = kNone;
}

void Population::occupy_slot(std::size_t slot) {
    position_[slot] = static_cast<std::uint32_t>(occupied_.size());
    occupied_.push_back(static_cast<std::uint32_t>(slot));
}

InsertOutcome Population::insert(Individual& y, const ObjectivePair& fy, std::size_t slot) {
    if (slot >= slots_.size())
        throw std::out_of_range("slot key outside population range");

    scratch_.clear();
    bool dominated = false;
    for (std::uint32_t s : occupied_) {
        const ObjectivePair& fz = slots_[s].f;
        if (weak_dominates(fy, fz))
            scratch_.push_back(s);
        else if (strict_dominates(fz, fy))
            dominated = true;
    }

    const bool replaced_equal =
        scratch_.size() == 1 && scratch_.front() == slot && slots_[slot].f == fy;
    for (std::uint32_t s : scratch_)
        erase_slot(s);

    if (dominated)
        return scratch_.empty() ? InsertOutcome::Rejected : InsertOutcome::Changed;

    if (occupied(slot)) {
        std::ostringstream msg;
        msg << "slot " << slot << " already holds an incomparable member";
        throw std::logic_error(msg.str());
    }
    std::swap(slots_[slot].x, y);
    slots_[slot].f = fy;
    occupy_slot(slot);
    return replaced_equal ? InsertOutcome::Replaced : InsertOutcome::Changed;
}

InsertOutcome Population::insert_copy(const Individual& y, const ObjectivePair& fy, std::size_t slot) {
    Individual copy = y;
    return insert(copy, fy, slot);
}

std::vector<ObjectivePair> Population::objectives() const {
    std::vector<ObjectivePair> out;
    out.reserve(occupied_.size());
    for (std::uint32_t s : occupied_)
        out.push_back(slots_[s].f);
    std::sort(out.begin(), out.end());
    return out;
}

std::optional<std::string> Population::validate() const {
    std::size_t marked = 0;
    for (std::size_t s = 0; s < slots_.size(); ++s) {
        if (position_[s] == kNone)
            continue;
        ++marked;
        if (position_[s] >= occupied_.size() || occupied_[position_[s]] != s)
            return "slot index bookkeeping is inconsistent at slot " + std::to_string(s);
    }
    if (marked != occupied_.size())
        return "occupied list size does not match slot markers";

    for (std::size_t i = 0; i < occupied_.size(); ++i) {
        for (std::size_t j = i + 1; j < occupied_.size(); ++j) {
            const ObjectivePair& a = slots_[occupied_[i]].f;
            const ObjectivePair& b = slots_[occupied_[j]].f;
            if (weak_dominates(a, b) || weak_dominates(b, a)) {
                std::ostringstream msg;
                msg << "members in slots " << occupied_[i] << " and " << occupied_[j]
                    << " are comparable: (" << a.f1 << ',' << a.f2 << ") vs (" << b.f1 << ','
                    << b.f2 << ')';
                return msg.str();
            }
        }
    }
    return std::nullopt;
}

}  // namespace semolab
