#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>

#include "rcpac/constructions.hpp"
#include "rcpac/learning.hpp"

namespace rcpac {

// The oracle taxonomy: weak/strong/agnostic RERM, the Perfect Attack Oracle,
// and the learner-to-RERM extraction.

struct NoStrongOracle : std::runtime_error {
    explicit NoStrongOracle(const std::string& w) : std::runtime_error(w) {}
};
struct NoAgnosticOracle : std::runtime_error {
    explicit NoAgnosticOracle(const std::string& w) : std::runtime_error(w) {}
};

struct RermOutcome {
    enum class Kind { Hypothesis, NotRobustlyRealizable, ExceededBudget };
    Kind kind;
    std::optional<Predictor> hypothesis;
    std::optional<Rational> risk;  // empirical (robust) risk of the hypothesis
};

// Enumerates the family in canonical code order and returns the first member
// of zero empirical robust risk. Without a budget this loops forever on
// robustly non-realizable samples, which is its contract.
RermOutcome weak_realizable_rerm(const ConstructionBundle& b, const LabeledSample& s,
                                 std::optional<std::uint64_t> budget);

// Always halts: a zero-risk member or NotRobustlyRealizable. Only bundles
// whose analysis supplies one register it.
RermOutcome strong_realizable_rerm(const ConstructionBundle& b, const LabeledSample& s);

// Minimizer over the bundle's registered candidate structure, with the
// robust loss, or the standard loss where only that is registered (thm5).
// Ties break toward the smallest parameter code. Empty samples yield the
// code-smallest candidate.
Predictor agnostic_rerm(const ConstructionBundle& b, const LabeledSample& s);
Rational agnostic_rerm_risk(const ConstructionBundle& b, const LabeledSample& s);

struct AttackOutcome {
    enum class Kind { Counterexample, NoAttack, ExceededBudget };
    Kind kind;
    Point z = 0;
    Label y = 0;
};

// The Perfect Attack Oracle: a z in U(x) with h(z) != y when one is found,
// NoAttack only under a closed-form certificate, ExceededBudget otherwise.
// Returned counterexamples are re-verified against the perturbation type.
AttackOutcome pao(const ConstructionBundle& b, const Predictor& h, Point x, Label y,
                  std::optional<std::uint64_t> budget);

// Extraction of an RERM from a proper learner: runs the learner on all k^m
// resamplings of S and returns an exact empirical-robust-risk minimizer
// among the outputs (ties: smallest parameter code, then sequence index).
Predictor rerm_from_proper_learner(const Learner& learner,
                                   const SampleComplexityFn& sample_complexity,
                                   const LabeledSample& s, const ConstructionBundle& b);

}  // namespace rcpac
