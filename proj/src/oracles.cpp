#include "rcpac/oracles.hpp"

#include <algorithm>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rcpac/parallel.hpp"

namespace rcpac {

namespace {

// argmin of empirical risk over candidate codes with (risk, code) tie-break
struct ArgminResult {
    std::uint64_t code;
    Rational risk;
};

ArgminResult argmin_over_codes(const ConstructionBundle& b,
                               const std::vector<std::uint64_t>& codes, const LabeledSample& s,
                               bool robust) {
    if (codes.empty()) throw std::invalid_argument("argmin: no candidate codes");
    std::uint64_t best_code = *std::min_element(codes.begin(), codes.end());
    if (s.empty()) return {best_code, Rational(0)};

    std::optional<ArgminResult> best;
    for (auto code : codes) {
        Predictor h = b.member(code);
        Rational r = robust ? empirical_robust_risk_exact(b.exact_robust_loss, h, s)
                            : empirical_risk(h, s);
        if (!best || r < best->risk || (r == best->risk && code < best->code))
            best = ArgminResult{code, r};
    }
    return *best;
}

}  // namespace

RermOutcome weak_realizable_rerm(const ConstructionBundle& b, const LabeledSample& s,
                                 std::optional<std::uint64_t> budget) {
    if (s.empty()) {
        Predictor h = b.member(0);
        return {RermOutcome::Kind::Hypothesis, h, Rational(0)};
    }
    for (std::uint64_t code = 0; !budget || code < *budget; ++code) {
        Predictor h = b.member(code);
        Rational r = empirical_robust_risk_exact(b.exact_robust_loss, h, s);
        if (r == Rational(0)) return {RermOutcome::Kind::Hypothesis, h, r};
    }
    return {RermOutcome::Kind::ExceededBudget, std::nullopt, std::nullopt};
}

RermOutcome strong_realizable_rerm(const ConstructionBundle& b, const LabeledSample& s) {
    if (!b.declared.strong_rerm)
        throw NoStrongOracle(b.name + ": no strong realizable RERM oracle");
    if (!b.rerm_candidates)
        throw NoStrongOracle(b.name + ": strong oracle lacks a candidate structure");
    auto best = argmin_over_codes(b, b.rerm_candidates(s), s, /*robust=*/true);
    if (best.risk == Rational(0))
        return {RermOutcome::Kind::Hypothesis, b.member(best.code), best.risk};
    return {RermOutcome::Kind::NotRobustlyRealizable, std::nullopt, best.risk};
}

namespace {

ArgminResult agnostic_argmin(const ConstructionBundle& b, const LabeledSample& s) {
    if (b.rerm_candidates && b.declared.robust_agnostic_rerm)
        return argmin_over_codes(b, b.rerm_candidates(s), s, /*robust=*/true);
    if (b.declared.agnostic_standard_loss)
        return argmin_over_codes(b, b.erm_candidates(s), s, /*robust=*/false);
    throw NoAgnosticOracle(b.name + ": no agnostic RERM oracle registered");
}

}  // namespace

Predictor agnostic_rerm(const ConstructionBundle& b, const LabeledSample& s) {
    return b.member(agnostic_argmin(b, s).code);
}

Rational agnostic_rerm_risk(const ConstructionBundle& b, const LabeledSample& s) {
    return agnostic_argmin(b, s).risk;
}

namespace {

bool in_perturbation(const ConstructionBundle& b, Point x, Point z, std::uint64_t budget) {
    if (b.pert.member) return b.pert.member(x, z);
    if (b.pert.finite_set) {
        if (auto set = b.pert.finite_set(x))
            return std::find(set->begin(), set->end(), z) != set->end();
    }
    if (b.pert.enumerate) {
        auto elems = b.pert.enumerate(x, budget);
        return std::find(elems.begin(), elems.end(), z) != elems.end();
    }
    return false;
}

}  // namespace

AttackOutcome pao(const ConstructionBundle& b, const Predictor& h, Point x, Label y,
                  std::optional<std::uint64_t> budget) {
    std::uint64_t enum_budget = budget.value_or(4096);
    auto checked = [&](Point z) {
        if (h(z) == y || !in_perturbation(b, x, z, enum_budget))
            throw std::logic_error("pao: unsound counterexample for " + b.name);
        return AttackOutcome{AttackOutcome::Kind::Counterexample, z, y};
    };
    if (h(x) != y) return checked(x);  // x in U(x)
    if (b.exact_attack) {
        if (auto r = b.exact_attack(h, x, y)) {
            if (r->counterexample) return checked(r->counterexample->first);
            return {AttackOutcome::Kind::NoAttack, 0, 0};
        }
    }
    if (b.pert.enumerate) {
        for (Point z : b.pert.enumerate(x, enum_budget))
            if (h(z) != y) return checked(z);
    }
    return {AttackOutcome::Kind::ExceededBudget, 0, 0};
}

Predictor rerm_from_proper_learner(const Learner& learner,
                                   const SampleComplexityFn& sample_complexity,
                                   const LabeledSample& s, const ConstructionBundle& b) {
    if (s.empty()) throw EmptySampleError{};
    const std::uint64_t k = s.size();
    const std::uint64_t m = sample_complexity(Rational(1, static_cast<std::int64_t>(k + 1)),
                                              Rational(1, 7));
    // k^m resamplings, overflow-guarded: this extraction is a desk-scale tool
    std::uint64_t total = 1;
    for (std::uint64_t t = 0; t < m; ++t) {
        if (total > (std::uint64_t(1) << 24) / std::max<std::uint64_t>(k, 1))
            throw std::invalid_argument("rerm_from_proper_learner: k^m too large");
        total *= k;
    }

    struct Best {
        Rational risk;
        std::uint64_t code;
        std::uint64_t seq;
        bool set = false;
    };
    const long nthreads = parallel::max_threads();
    std::vector<Best> bests(static_cast<std::size_t>(std::max(1L, nthreads)));

    const bool par = parallel::enabled();
    parallel::ExceptionCollector errors;
#pragma omp parallel for schedule(dynamic, 64) if (par)
    for (std::int64_t l = 0; l < static_cast<std::int64_t>(total); ++l) {
        errors.run([&, l] {
            LabeledSample seq(m);
            std::uint64_t idx = static_cast<std::uint64_t>(l);
            for (std::uint64_t t = 0; t < m; ++t) {
                seq[t] = s[idx % k];
                idx /= k;
            }
            Predictor h = learner(seq);
            if (h.prov.kind != Provenance::Kind::FamilyMember || h.prov.family != b.family.name)
                throw std::invalid_argument("rerm_from_proper_learner: learner is not proper");
            Rational r = empirical_robust_risk_exact(b.exact_robust_loss, h, s);
            std::size_t slot = 0;
#ifdef _OPENMP
            slot = static_cast<std::size_t>(omp_in_parallel() ? omp_get_thread_num() : 0);
#endif
            Best& best = bests[slot % bests.size()];
            std::uint64_t code = h.prov.param;
            if (!best.set || r < best.risk || (r == best.risk && code < best.code) ||
                (r == best.risk && code == best.code && static_cast<std::uint64_t>(l) < best.seq)) {
                best = Best{r, code, static_cast<std::uint64_t>(l), true};
            }
        });
    }
    errors.rethrow_if_failed();
    std::optional<Best> overall;
    for (const auto& cand : bests) {
        if (!cand.set) continue;
        if (!overall || cand.risk < overall->risk ||
            (cand.risk == overall->risk && cand.code < overall->code) ||
            (cand.risk == overall->risk && cand.code == overall->code && cand.seq < overall->seq))
            overall = cand;
    }
    return b.member(overall->code);
}

}  // namespace rcpac
