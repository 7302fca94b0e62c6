#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rcpac/pairing.hpp"
#include "rcpac/rational.hpp"

namespace rcpac {

// Domain model: points, samples, distributions, predictors, families and
// perturbation types, plus the standard and robust losses with exact
// rational arithmetic throughout.

using Point = std::uint64_t;  // domain N; two-coordinate constructions use u64_pair
using Label = int;            // 0 / 1

struct LabeledExample {
    Point point;
    Label label;
    bool operator==(const LabeledExample&) const = default;
    bool operator<(const LabeledExample& o) const {
        return point < o.point || (point == o.point && label < o.label);
    }
};

// Ordered sequence with multiplicity: enumeration procedures range over
// sequences, never sets.
using LabeledSample = std::vector<LabeledExample>;

struct FiniteDistribution {
    struct Atom {
        Point point;
        Label label;
        Rational mass;
    };
    std::vector<Atom> support;

    // masses positive, summing to one, atoms distinct
    void validate() const;
};

FiniteDistribution uniform_on(const LabeledSample& examples);

// Where a predictor came from: a family member (parameter code), a majority
// vote over family members (online learners produce these), or opaque.
struct Provenance {
    enum class Kind { Opaque, FamilyMember, MajorityOfMembers };
    Kind kind = Kind::Opaque;
    std::string family;
    std::uint64_t param = 0;                 // FamilyMember
    std::vector<std::uint64_t> member_codes; // MajorityOfMembers

    static Provenance opaque() { return {}; }
    static Provenance member(std::string fam, std::uint64_t code) {
        Provenance p;
        p.kind = Kind::FamilyMember;
        p.family = std::move(fam);
        p.param = code;
        return p;
    }
    static Provenance majority(std::string fam, std::vector<std::uint64_t> codes) {
        Provenance p;
        p.kind = Kind::MajorityOfMembers;
        p.family = std::move(fam);
        p.member_codes = std::move(codes);
        return p;
    }
};

struct Predictor {
    std::function<Label(Point)> eval;  // total by contract
    Provenance prov;

    Label operator()(Point x) const { return eval(x); }
};

enum class Representation { DR, RER };

struct HypothesisFamily {
    std::string name;
    Representation repr = Representation::DR;
    // Total parameter decoding: every code names a member (families here are
    // trivially RER through the identity enumeration of codes).
    std::function<Predictor(std::uint64_t)> member;
    std::string parameter_space;  // human-readable description
};

// A perturbation map x -> U(x). Reflexive by convention (x in U(x)).
struct PerturbationType {
    std::string name;
    // DR side: decider for z in U(x); absent for RER-only types.
    std::function<bool(Point x, Point z)> member;
    // RER side: all elements discovered within `budget` dovetailing steps.
    // Monotone: a larger budget extends the list, never rewrites it.
    std::function<std::vector<Point>(Point x, std::uint64_t budget)> enumerate;
    // Exact finite description when one is determinable (possibly via an
    // injected ground-truth oracle); nullopt when U(x) is infinite/unknown.
    std::function<std::optional<std::vector<Point>>(Point x)> finite_set;

    bool decidable() const { return static_cast<bool>(member); }
};

// Bounded semi-decision results: Zero/One answers are stable under budget
// increase, UnknownWithinBudget is not an answer.
enum class ThreeValuedBit { Zero, One, UnknownWithinBudget };

struct NoExactEvaluator : std::runtime_error {
    explicit NoExactEvaluator(const std::string& what) : std::runtime_error(what) {}
};
struct EmptySampleError : std::runtime_error {
    EmptySampleError() : std::runtime_error("empty sample") {}
};

// ---------------------------------------------------------------------------
// losses and risks
// ---------------------------------------------------------------------------

inline Label zero_one_loss(const Predictor& h, Point x, Label y) {
    return h(x) != y ? 1 : 0;
}

Rational empirical_risk(const Predictor& h, const LabeledSample& s);
Rational risk(const Predictor& h, const FiniteDistribution& d);

// Exact robust loss evaluator for (a subclass of) a family, registered per
// construction; throws NoExactEvaluator outside its domain.
using ExactRobustLoss = std::function<Label(const Predictor& h, Point x, Label y)>;

// Witness search within `budget` enumeration steps. Zero is certified only
// by exhausting a finite U(x).
ThreeValuedBit robust_loss_bounded(const Predictor& h, Point x, Label y,
                                   const PerturbationType& u, std::uint64_t budget);

// Mass-weighted robust risk; exact variant takes a registered evaluator.
Rational robust_risk_exact(const ExactRobustLoss& loss, const Predictor& h,
                           const FiniteDistribution& d);
std::optional<Rational> robust_risk_bounded(const Predictor& h, const FiniteDistribution& d,
                                            const PerturbationType& u, std::uint64_t budget);

Rational empirical_robust_risk_exact(const ExactRobustLoss& loss, const Predictor& h,
                                     const LabeledSample& s);
std::optional<Rational> empirical_robust_risk_bounded(const Predictor& h, const LabeledSample& s,
                                                      const PerturbationType& u,
                                                      std::uint64_t budget);

// Margin membership: does some z in U(x) disagree with h(x)?
using ExactMargin = std::function<Label(const Predictor& h, Point x)>;
ThreeValuedBit margin_membership_bounded(const Predictor& h, Point x, const PerturbationType& u,
                                         std::uint64_t budget);

// A batch learner and a sample-complexity function m(epsilon, delta).
using Learner = std::function<Predictor(const LabeledSample&)>;
using SampleComplexityFn = std::function<std::uint64_t(const Rational&, const Rational&)>;

}  // namespace rcpac
