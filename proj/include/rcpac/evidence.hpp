#pragma once

#include <cstdint>

#include "rcpac/machine.hpp"

namespace rcpac {

// A decidable pair relation whose projection is r.e.-complete. Formula i
// stands for "machine i halts on input 0"; evidence index j decodes as a
// pair (i', s) and certifies i exactly when i' = i and the run halts at
// step s precisely. Each evidence index certifies at most one formula.

bool proves(std::uint64_t formula, std::uint64_t evidence);

enum class TautologyAnswer { Yes, UnknownWithinBudget };

// Yes iff some evidence index j <= search_budget has proves(formula, j).
TautologyAnswer is_tautology_bounded(std::uint64_t formula, std::uint64_t search_budget);

// The unique evidence index for a machine halting at step s on input 0.
std::uint64_t evidence_index(std::uint64_t formula, std::uint64_t halting_step);

}  // namespace rcpac
