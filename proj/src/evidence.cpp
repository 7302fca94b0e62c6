#include "rcpac/evidence.hpp"

#include <algorithm>

#include "rcpac/pairing.hpp"

namespace rcpac {

bool proves(std::uint64_t formula, std::uint64_t evidence) {
    auto [target, step] = u64_unpair(evidence);
    if (target != formula) return false;
    auto s = first_halting_step(formula, 0, step);
    return s && *s == step;
}

std::uint64_t evidence_index(std::uint64_t formula, std::uint64_t halting_step) {
    return u64_pair(formula, halting_step);
}

TautologyAnswer is_tautology_bounded(std::uint64_t formula, std::uint64_t search_budget) {
    // Evidence for formula i only exists at j = pair(i, s) with s the exact
    // halting step, so one run with the largest step budget that still fits
    // under pair(i, s) <= search_budget answers the whole search.
    auto pair_fits = [&](std::uint64_t s) {
        unsigned __int128 sum = static_cast<unsigned __int128>(formula) + s;
        unsigned __int128 v = sum * (sum + 1) / 2 + s;
        return v <= search_budget;
    };
    if (!pair_fits(0)) return TautologyAnswer::UnknownWithinBudget;
    // pair(formula, s) >= s^2/2, so steps beyond 2^33 never fit a 64-bit budget
    std::uint64_t lo = 0, hi = std::min<std::uint64_t>(search_budget, std::uint64_t(1) << 33);
    while (lo < hi) {
        std::uint64_t mid = lo + (hi - lo + 1) / 2;
        if (pair_fits(mid))
            lo = mid;
        else
            hi = mid - 1;
    }
    auto s = first_halting_step(formula, 0, lo);
    if (s && pair_fits(*s)) return TautologyAnswer::Yes;
    return TautologyAnswer::UnknownWithinBudget;
}

}  // namespace rcpac
