#include "rcpac/learners.hpp"

#include <algorithm>

#include "rcpac/parallel.hpp"

namespace rcpac {

Predictor erm_pac_learner(const ConstructionBundle& b, const LabeledSample& s) {
    auto codes = b.erm_candidates(s);
    if (codes.empty()) throw std::invalid_argument("erm_pac_learner: no candidates");
    std::uint64_t best_code = *std::min_element(codes.begin(), codes.end());
    if (!s.empty()) {
        std::optional<Rational> best_risk;
        for (auto code : codes) {
            Rational r = empirical_risk(b.member(code), s);
            if (!best_risk || r < *best_risk || (r == *best_risk && code < best_code)) {
                best_risk = r;
                best_code = code;
            }
        }
    }
    return b.member(best_code);
}

HalvingLearner::HalvingLearner(std::string family, std::vector<std::uint64_t> codes,
                               std::vector<Predictor> members)
    : family_(std::move(family)) {
    if (codes.empty() || codes.size() != members.size())
        throw std::invalid_argument("halving: need a nonempty code-aligned member list");
    auto st = std::make_shared<State>();
    st->codes = std::move(codes);
    st->members = std::move(members);
    st->alive.assign(st->codes.size(), true);
    st->alive_count = st->codes.size();
    state_ = std::move(st);
    mistake_bound_ = 0;
    while ((std::uint64_t(1) << mistake_bound_) < state_->codes.size()) ++mistake_bound_;
}

HalvingLearner HalvingLearner::over_param_window(const ConstructionBundle& b, std::size_t window) {
    auto codes = b.param_window(window);
    std::vector<Predictor> members;
    members.reserve(codes.size());
    for (auto code : codes) members.push_back(b.member(code));
    return HalvingLearner(b.family.name, std::move(codes), std::move(members));
}

std::size_t HalvingLearner::version_space_size() const { return state_->alive_count; }

Label HalvingLearner::predict(Point x) const {
    std::size_t ones = 0;
    for (std::size_t i = 0; i < state_->members.size(); ++i)
        if (state_->alive[i] && state_->members[i](x) == 1) ++ones;
    return 2 * ones > state_->alive_count ? 1 : 0;
}

void HalvingLearner::materialize() {
    if (state_.use_count() > 1) state_ = std::make_shared<State>(*state_);
}

void HalvingLearner::update(Point x, Label y) {
    materialize();
    for (std::size_t i = 0; i < state_->members.size(); ++i) {
        if (state_->alive[i] && state_->members[i](x) != y) {
            state_->alive[i] = false;
            --state_->alive_count;
        }
    }
    if (state_->alive_count == 0) throw VersionSpaceEmpty{};
}

Predictor HalvingLearner::hypothesis() const {
    auto st = state_;  // immutable snapshot: updates copy-on-write
    std::vector<std::uint64_t> alive_codes;
    for (std::size_t i = 0; i < st->codes.size(); ++i)
        if (st->alive[i]) alive_codes.push_back(st->codes[i]);
    return Predictor{[st](Point x) {
                         std::size_t ones = 0;
                         for (std::size_t i = 0; i < st->members.size(); ++i)
                             if (st->alive[i] && st->members[i](x) == 1) ++ones;
                         return 2 * ones > st->alive_count ? 1 : 0;
                     },
                     Provenance::majority(family_, std::move(alive_codes))};
}

LearnerReport cycle_robust(const LabeledSample& s, HalvingLearner online, const AttackFn& attack) {
    LearnerReport report{online.hypothesis(), 0, 0};
    while (true) {
        bool clean = true;
        for (const auto& ex : s) {
            AttackOutcome a = attack(report.output, ex.point, ex.label);
            ++report.pao_calls;
            if (a.kind == AttackOutcome::Kind::ExceededBudget) throw PaoBudgetExceeded{};
            if (a.kind == AttackOutcome::Kind::Counterexample) {
                ++report.mistakes;
                if (report.mistakes > online.mistake_bound()) throw MistakeBoundExceeded{};
                try {
                    online.update(a.z, a.y);
                } catch (const VersionSpaceEmpty&) {
                    // the stream refuted every member: non-realizability, the
                    // same condition the mistake bound guards
                    throw MistakeBoundExceeded{};
                }
                report.output = online.hypothesis();
                clean = false;
                break;  // restart the scan from the first sample point
            }
        }
        if (clean) return report;
    }
}

Label majority_vote_decoder(const Learner& learner, const std::vector<LabeledExample>& support,
                            std::uint64_t m, Point probe) {
    if (support.empty()) throw std::invalid_argument("majority_vote_decoder: empty support");
    const std::uint64_t n = support.size();
    std::uint64_t total = 1;
    for (std::uint64_t t = 0; t < m; ++t) {
        if (total > (std::uint64_t(1) << 24) / n)
            throw std::invalid_argument("majority_vote_decoder: |support|^m too large");
        total *= n;
    }

    std::int64_t ones = 0;
    const bool par = parallel::enabled();
    parallel::ExceptionCollector errors;
#pragma omp parallel for schedule(dynamic, 16) reduction(+ : ones) if (par)
    for (std::int64_t l = 0; l < static_cast<std::int64_t>(total); ++l) {
        errors.run([&, l] {
            LabeledSample seq(m);
            std::uint64_t idx = static_cast<std::uint64_t>(l);
            for (std::uint64_t t = 0; t < m; ++t) {
                seq[t] = support[idx % n];
                idx /= n;
            }
            if (learner(seq)(probe) == 1) ++ones;
        });
    }
    errors.rethrow_if_failed();
    return 2 * ones > static_cast<std::int64_t>(total) ? 1 : 0;
}

}  // namespace rcpac
