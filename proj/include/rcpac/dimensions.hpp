#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rcpac/constructions.hpp"
#include "rcpac/learning.hpp"

namespace rcpac {

// Brute-force dimension computation over finite windows, witness functions,
// and the constructive robust No-Free-Lunch adversary. The heavy inner
// enumerations have OpenMP paths; results do not depend on the schedule
// (integer reductions and totally ordered argmins only).

struct PairList {
    std::vector<std::pair<Point, Point>> pairs;  // (z_i^0, z_i^1)
};

using Labeling = std::vector<Label>;

// Largest d such that some d-subset of the window is shattered by the
// member restrictions; windows are limited to 64 points.
int vc_dimension_bruteforce(const std::vector<Predictor>& members,
                            const std::vector<Point>& window);

// Same search over the margin sets of the bundle's members.
int margin_vc_bruteforce(const ConstructionBundle& b, const std::vector<Point>& window,
                         const std::vector<std::uint64_t>& params);

struct ShatterableOutcome {
    enum class Kind { ShatterableWith, NotShatterable, ExceededBudget };
    Kind kind;
    std::vector<Point> points;  // one x_i per pair when shatterable
};

// Finds x_i in U(z_i^0) n U(z_i^1) by alternating enumeration and certifies
// pairwise disjointness of U(z_i^1) and U(z_j^0). Certificates come from
// finite closed forms (plus deciders); otherwise the outcome degrades to
// ExceededBudget rather than guessing.
ShatterableOutcome shatterable_check(const PerturbationType& u, const PairList& z,
                                     std::uint64_t budget);

// Largest k <= max_k with a shatterable PairList over the window whose every
// labeling is robustly realized by some member (exact evaluators).
int robust_shattering_bruteforce(const ConstructionBundle& b, const std::vector<Point>& window,
                                 const std::vector<std::uint64_t>& params, int max_k,
                                 std::uint64_t budget);

struct ShatteredSetExists : std::runtime_error {
    explicit ShatteredSetExists(const std::string& w) : std::runtime_error(w) {}
};
struct WitnessUnavailable : std::runtime_error {
    explicit WitnessUnavailable(const std::string& w) : std::runtime_error(w) {}
};

struct WitnessFunction {
    std::size_t arity = 0;  // inputs carry arity+1 points (or pairs)
    std::function<Labeling(const std::vector<Point>&)> on_points;
    std::function<Labeling(const PairList&)> on_pairs;
};

// A k-witness for the window members: on any k+1 points it exhaustively
// finds a labeling no member achieves (lexicographically first).
WitnessFunction vc_witness_bruteforce(std::vector<Predictor> members, std::vector<Point> window,
                                      std::size_t k);

// Composition of the shatterable-set search with a VC witness: on a pair
// list admitting a shatterable set X, outputs w(X).
WitnessFunction robust_witness_from_vc_witness(WitnessFunction w, PerturbationType u,
                                               std::uint64_t budget);

struct NflCertificate {
    Labeling chosen_labeling;
    FiniteDistribution distribution;
    Rational witnessed_bound;    // gate value of the chosen labeling, >= 1/8
    Rational exact_expectation;  // true E[robust risk] when evaluable, else the bound
    Rational tail_probability;   // Pr[risk >= 1/8] (witnessed route when not evaluable)
    bool exact_route = false;
    std::size_t labeling_index = 0;  // 1-based, in lexicographic order
    std::vector<Point> shatter_points;
};

struct NoQualifyingLabeling : std::runtime_error {
    NoQualifyingLabeling() : std::runtime_error("nfl: no labeling reaches the 1/8 gate") {}
};

// The constructive adversary: iterates the 2^(2m) robust labelings in
// lexicographic order, runs the learner on all (2m)^m sequences of each
// induced distribution, and returns the first labeling whose witnessed
// expected-risk lower bound reaches 1/8.
NflCertificate nfl_adversary(const Learner& learner, std::size_t m, const PairList& z,
                             const ConstructionBundle& b, std::uint64_t budget);

// Thm-6 style extraction: the witness runs the adversary and emits the
// chosen labeling, which no member robustly realizes.
WitnessFunction witness_from_learner(const Learner& learner, std::size_t m,
                                     const ConstructionBundle& b, std::uint64_t budget);

// Check used by witness verification: true when some member robustly
// realizes the labeling on the pair list (exact evaluators).
bool robustly_realized(const ConstructionBundle& b, const std::vector<std::uint64_t>& params,
                       const PairList& z, const Labeling& y);

}  // namespace rcpac
