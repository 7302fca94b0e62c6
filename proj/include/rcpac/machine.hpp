#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "rcpac/pairing.hpp"

namespace rcpac {

// A tiny deterministic expression language over the naturals. Programs take
// one natural input; multi-argument functions are modelled through the
// canonical pairing. Every natural number decodes to a program (decode is a
// bijection), index 0 being the canonical diverger. One step = one AST-node
// reduction. Runtime errors (division by zero) diverge by convention.

enum class Kind : std::uint8_t {
    Const,  // natural literal
    Input,  // the program's input value
    Acc,    // innermost loop accumulator (0 outside any loop)
    Fst, Snd,                                // unpairing
    Add, Sub, Mul, Div, Mod, Less, Eq,       // arithmetic & comparison (Sub truncated)
    Pair,                                    // value-level Cantor pairing
    Eval,                                    // run decode(code) on an input value
    If,                                      // (if c t e): nonzero cond takes t
    Loop,                                    // (loop init cond body): acc-driven while
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
    Kind kind;
    Nat value;       // Const payload
    ExprPtr a, b, c; // children (arity by kind)
};

ExprPtr e_const(Nat v);
ExprPtr e_input();
ExprPtr e_acc();
ExprPtr e_fst(ExprPtr x);
ExprPtr e_snd(ExprPtr x);
ExprPtr e_add(ExprPtr l, ExprPtr r);
ExprPtr e_sub(ExprPtr l, ExprPtr r);
ExprPtr e_mul(ExprPtr l, ExprPtr r);
ExprPtr e_div(ExprPtr l, ExprPtr r);
ExprPtr e_mod(ExprPtr l, ExprPtr r);
ExprPtr e_less(ExprPtr l, ExprPtr r);
ExprPtr e_eq(ExprPtr l, ExprPtr r);
ExprPtr e_pair(ExprPtr l, ExprPtr r);
ExprPtr e_eval(ExprPtr code, ExprPtr arg);
ExprPtr e_if(ExprPtr c, ExprPtr t, ExprPtr e);
ExprPtr e_loop(ExprPtr init, ExprPtr cond, ExprPtr body);

struct Program {
    ExprPtr root;
};

bool structurally_equal(const ExprPtr& x, const ExprPtr& y);

// Total bijection between naturals and programs. decode(0) yields the
// canonical diverger (an unconditional loop); encode inverts decode exactly.
Program decode(const Nat& index);
Nat encode(const Program& p);

// Parenthesized prefix text format; grammar documented in the README.
std::string to_text(const Program& p);
Program parse_program(std::string_view text);

struct Halted {
    Nat output;
    std::uint64_t steps;
};

struct RunOutcome {
    std::optional<Halted> halted;  // nullopt: budget exhausted (or error-divergence)
    std::uint64_t budget = 0;
    bool ok() const { return halted.has_value(); }
};

RunOutcome run_program(const Program& p, const Nat& input, std::uint64_t budget);
RunOutcome run_bounded(const Nat& index, const Nat& input, std::uint64_t budget);
bool halts_within(const Nat& index, const Nat& input, std::uint64_t j);

// Memoized variant of the halting question answered by run_bounded: the
// first halting step when it is <= budget. Deterministic runs make the memo
// behavior-invisible; it is internally synchronized.
std::optional<std::uint64_t> first_halting_step(std::uint64_t index, std::uint64_t input,
                                                std::uint64_t budget);

// Index of eval(fst(input), snd(input)): runs any quoted program on an input.
// Its step overhead over the direct run is additive and below kUniversalOverhead.
Nat universal_index();
inline constexpr std::uint64_t kUniversalOverhead = 6;

// Currying instance: smn(i, fixed) names a program q with q(y) ~ decode(i)
// applied to pair(fixed, y), up to a small additive step overhead.
Nat smn(const Nat& index, const Nat& fixed);

// The two-fold recursion construction: for indices f1, f2 of total two-argument
// functions, returns (c1, c2) with T_c1 extensionally equal to T_{f1(c1,c2)}
// and T_c2 to T_{f2(c1,c2)}. Built from the four-argument dispatchers and their
// S-m-n currying; misuse with non-total f1/f2 voids the fixed-point property.
std::pair<Nat, Nat> twofold_fixed_point(const Nat& f1, const Nat& f2);

}  // namespace rcpac
