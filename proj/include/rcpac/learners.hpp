#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <vector>

#include "rcpac/constructions.hpp"
#include "rcpac/learning.hpp"
#include "rcpac/oracles.hpp"

namespace rcpac {

struct VersionSpaceEmpty : std::runtime_error {
    VersionSpaceEmpty() : std::runtime_error("halving: stream inconsistent with every member") {}
};
struct MistakeBoundExceeded : std::runtime_error {
    MistakeBoundExceeded() : std::runtime_error("cycle_robust: mistake bound exceeded") {}
};
struct PaoBudgetExceeded : std::runtime_error {
    PaoBudgetExceeded() : std::runtime_error("cycle_robust: attack oracle ran out of budget") {}
};

// Standard-loss ERM over the bundle's registered candidate structure.
Predictor erm_pac_learner(const ConstructionBundle& b, const LabeledSample& s);

// Halving over a finite effective subfamily: majority-vote prediction over
// the consistent version space, mistake bound ceil(log2 n). Tie votes
// predict 0.
class HalvingLearner {
public:
    HalvingLearner(std::string family, std::vector<std::uint64_t> codes,
                   std::vector<Predictor> members);

    Label predict(Point x) const;
    void update(Point x, Label y);  // keep members consistent with (x, y)
    std::uint64_t mistake_bound() const { return mistake_bound_; }
    std::size_t version_space_size() const;
    Predictor hypothesis() const;  // majority predictor, MajorityOfMembers provenance

    static HalvingLearner over_param_window(const ConstructionBundle& b, std::size_t window);

private:
    struct State {
        std::vector<std::uint64_t> codes;
        std::vector<Predictor> members;
        std::vector<bool> alive;
        std::size_t alive_count;
    };
    std::string family_;
    std::shared_ptr<State> state_;  // hypothesis() snapshots share it immutably
    std::uint64_t mistake_bound_;

    void materialize();  // copy-on-write before an update
};

struct LearnerReport {
    Predictor output;
    std::uint64_t pao_calls = 0;
    std::uint64_t mistakes = 0;
};

using AttackFn = std::function<AttackOutcome(const Predictor&, Point, Label)>;

// The PAO-driven robust learner: scan the sample, feed each counterexample
// to the online learner, restart the scan, stop at the first clean pass.
LearnerReport cycle_robust(const LabeledSample& s, HalvingLearner online, const AttackFn& attack);

// Runs the learner on all |support|^m sequences over the support and takes
// the majority of the outputs' predictions at the probe (ties decode to 0).
Label majority_vote_decoder(const Learner& learner, const std::vector<LabeledExample>& support,
                            std::uint64_t m, Point probe);

}  // namespace rcpac
