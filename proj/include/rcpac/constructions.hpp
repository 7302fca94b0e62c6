#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rcpac/evidence.hpp"
#include "rcpac/learning.hpp"
#include "rcpac/zoo.hpp"

namespace rcpac {

// The five concrete (family, perturbation type) pairs, each with its
// deciders, enumerators, exact evaluators and window builders. Bundles come
// in two modes: honest (everything computed by bounded runs only) and
// oracle-backed (closed forms that hinge on halting truth consult an
// injected oracle; tests inject zoo truth).

enum class BundleMode { Honest, OracleBacked };

struct AttackResult {
    // a found perturbation z in U(x) with h(z) != true label, or a certified
    // absence of one
    std::optional<std::pair<Point, Label>> counterexample;
};

struct DeclaredProperties {
    std::optional<int> vc;
    std::optional<int> margin_vc;
    bool decidable_pert = true;       // DR claim (ex1 declares RER-only)
    bool honest_exact_loss = false;   // robust loss evaluable without any oracle
    bool strong_rerm = false;
    bool robust_agnostic_rerm = false;  // false + agnostic_standard_loss: thm5
    bool agnostic_standard_loss = false;
};

struct ConstructionBundle {
    std::string name;
    BundleMode mode = BundleMode::Honest;
    HypothesisFamily family;
    PerturbationType pert;
    DeclaredProperties declared;

    // Exact evaluators. They throw NoExactEvaluator outside their domain
    // (which for thm4's general members in honest mode is the theorem's
    // point, not a gap).
    std::function<Label(const Predictor& h, Point x, Label y)> exact_robust_loss;
    std::function<Label(std::uint64_t param, Point x)> exact_margin;

    // Closed-form attack search: nullopt when no closed form applies for
    // (h, x); otherwise a counterexample or a certified NoAttack.
    std::function<std::optional<AttackResult>(const Predictor& h, Point x, Label y)> exact_attack;

    // Candidate member codes sufficient to reach the optimum on S.
    std::function<std::vector<std::uint64_t>(const LabeledSample&)> erm_candidates;
    std::function<std::vector<std::uint64_t>(const LabeledSample&)> rerm_candidates;  // empty fn: none

    // The construction's indexed distribution family (second index used by
    // thm3 only).
    std::function<FiniteDistribution(std::uint64_t, std::uint64_t)> distribution;

    // Deterministic zoo-derived windows, capped per axis.
    std::function<std::vector<Point>(std::size_t)> point_window;
    std::function<std::vector<std::uint64_t>(std::size_t)> param_window;

    Predictor member(std::uint64_t code) const { return family.member(code); }

    Label exact_loss_of_code(std::uint64_t code, Point x, Label y) const {
        return exact_robust_loss(family.member(code), x, y);
    }
};

ConstructionBundle thm2_construction(const Zoo& zoo, BundleMode mode);
ConstructionBundle thm3_construction(const Zoo& zoo, BundleMode mode);
ConstructionBundle thm4_construction(const Zoo& zoo, BundleMode mode);
ConstructionBundle thm5_construction(const Zoo& zoo, BundleMode mode);
ConstructionBundle ex1_construction(const Zoo& zoo, BundleMode mode);
ConstructionBundle bundle_by_name(const std::string& name, const Zoo& zoo, BundleMode mode);
std::vector<std::string> bundle_names();

// Parameter code conventions (total decodings; the canonical enumeration of
// a family is code order 0, 1, 2, ...).
struct Thm2Param {
    bool inf;
    std::uint64_t a;
};
Thm2Param thm2_param(std::uint64_t code);
std::uint64_t thm2_code_inf();
std::uint64_t thm2_code(std::uint64_t a);

struct Thm3Param {
    std::uint64_t a, b;  // a <= b
    Label c;
};
Thm3Param thm3_param(std::uint64_t code);
std::uint64_t thm3_code(std::uint64_t a, std::uint64_t b, Label c);

struct Thm4Param {
    bool a_inf, b_inf;
    std::uint64_t a, b;
};
Thm4Param thm4_param(std::uint64_t code);
std::uint64_t thm4_code(std::optional<std::uint64_t> a, std::optional<std::uint64_t> b);

struct Thm5Param {
    std::uint64_t i, j;
};
Thm5Param thm5_param(std::uint64_t code);
std::uint64_t thm5_code(std::uint64_t i, std::uint64_t j);

struct Ex1Param {
    std::uint64_t a, b;  // a <= b
};
Ex1Param ex1_param(std::uint64_t code);
std::uint64_t ex1_code(std::uint64_t a, std::uint64_t b);

// Distribution families from the constructions' proofs.
FiniteDistribution thm2_distribution(std::uint64_t i);
FiniteDistribution thm3_distribution(std::uint64_t i, std::uint64_t k);
FiniteDistribution thm45_distribution(std::uint64_t i);  // point ((i,0),1) with mass 1
FiniteDistribution ex1_distribution(std::uint64_t i);

}  // namespace rcpac
