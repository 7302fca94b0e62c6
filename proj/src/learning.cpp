#include "rcpac/learning.hpp"

#include <algorithm>
#include <set>

namespace rcpac {

void FiniteDistribution::validate() const {
    Rational total(0);
    std::set<std::pair<Point, Label>> seen;
    for (const auto& a : support) {
        if (!(a.mass > Rational(0)))
            throw std::invalid_argument("distribution: non-positive mass");
        if (!seen.insert({a.point, a.label}).second)
            throw std::invalid_argument("distribution: duplicate atom");
        total += a.mass;
    }
    if (total != Rational(1))
        throw std::invalid_argument("distribution: masses sum to " + total.str());
}

FiniteDistribution uniform_on(const LabeledSample& examples) {
    if (examples.empty()) throw EmptySampleError{};
    // collapse duplicates into mass
    std::vector<LabeledExample> sorted = examples;
    std::sort(sorted.begin(), sorted.end());
    FiniteDistribution d;
    Rational unit(1, static_cast<std::int64_t>(examples.size()));
    for (std::size_t i = 0; i < sorted.size();) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        d.support.push_back({sorted[i].point, sorted[i].label,
                             unit * Rational(static_cast<std::int64_t>(j - i))});
        i = j;
    }
    d.validate();
    return d;
}

Rational empirical_risk(const Predictor& h, const LabeledSample& s) {
    if (s.empty()) throw EmptySampleError{};
    std::int64_t errors = 0;
    for (const auto& ex : s) errors += zero_one_loss(h, ex.point, ex.label);
    return Rational(errors, static_cast<std::int64_t>(s.size()));
}

Rational risk(const Predictor& h, const FiniteDistribution& d) {
    Rational total(0);
    for (const auto& a : d.support)
        if (zero_one_loss(h, a.point, a.label)) total += a.mass;
    return total;
}

ThreeValuedBit robust_loss_bounded(const Predictor& h, Point x, Label y,
                                   const PerturbationType& u, std::uint64_t budget) {
    if (h(x) != y) return ThreeValuedBit::One;  // x in U(x)
    if (u.finite_set) {
        if (auto set = u.finite_set(x)) {
            for (Point z : *set)
                if (h(z) != y) return ThreeValuedBit::One;
            return ThreeValuedBit::Zero;
        }
    }
    if (u.enumerate) {
        for (Point z : u.enumerate(x, budget))
            if (h(z) != y) return ThreeValuedBit::One;
        return ThreeValuedBit::UnknownWithinBudget;
    }
    if (u.member) {
        // no enumerator: decider-only scan over a bounded window of points
        for (std::uint64_t z = 0; z <= budget; ++z)
            if (u.member(x, z) && h(z) != y) return ThreeValuedBit::One;
        return ThreeValuedBit::UnknownWithinBudget;
    }
    throw std::invalid_argument("robust_loss_bounded: perturbation type has no representation");
}

Rational robust_risk_exact(const ExactRobustLoss& loss, const Predictor& h,
                           const FiniteDistribution& d) {
    Rational total(0);
    for (const auto& a : d.support)
        if (loss(h, a.point, a.label)) total += a.mass;
    return total;
}

std::optional<Rational> robust_risk_bounded(const Predictor& h, const FiniteDistribution& d,
                                            const PerturbationType& u, std::uint64_t budget) {
    Rational total(0);
    for (const auto& a : d.support) {
        switch (robust_loss_bounded(h, a.point, a.label, u, budget)) {
            case ThreeValuedBit::One: total += a.mass; break;
            case ThreeValuedBit::Zero: break;
            case ThreeValuedBit::UnknownWithinBudget: return std::nullopt;
        }
    }
    return total;
}

Rational empirical_robust_risk_exact(const ExactRobustLoss& loss, const Predictor& h,
                                     const LabeledSample& s) {
    if (s.empty()) throw EmptySampleError{};
    std::int64_t errors = 0;
    for (const auto& ex : s) errors += loss(h, ex.point, ex.label);
    return Rational(errors, static_cast<std::int64_t>(s.size()));
}

std::optional<Rational> empirical_robust_risk_bounded(const Predictor& h, const LabeledSample& s,
                                                      const PerturbationType& u,
                                                      std::uint64_t budget) {
    if (s.empty()) throw EmptySampleError{};
    std::int64_t errors = 0;
    for (const auto& ex : s) {
        switch (robust_loss_bounded(h, ex.point, ex.label, u, budget)) {
            case ThreeValuedBit::One: ++errors; break;
            case ThreeValuedBit::Zero: break;
            case ThreeValuedBit::UnknownWithinBudget: return std::nullopt;
        }
    }
    return Rational(errors, static_cast<std::int64_t>(s.size()));
}

ThreeValuedBit margin_membership_bounded(const Predictor& h, Point x, const PerturbationType& u,
                                         std::uint64_t budget) {
    Label hx = h(x);
    if (u.finite_set) {
        if (auto set = u.finite_set(x)) {
            for (Point z : *set)
                if (h(z) != hx) return ThreeValuedBit::One;
            return ThreeValuedBit::Zero;
        }
    }
    if (u.enumerate) {
        for (Point z : u.enumerate(x, budget))
            if (h(z) != hx) return ThreeValuedBit::One;
        return ThreeValuedBit::UnknownWithinBudget;
    }
    throw std::invalid_argument("margin_membership_bounded: no enumerator");
}

}  // namespace rcpac
