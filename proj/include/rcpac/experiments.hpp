#pragma once

#include <cstdint>
#include <string>

#include "rcpac/constructions.hpp"
#include "rcpac/dimensions.hpp"
#include "rcpac/report.hpp"
#include "rcpac/zoo.hpp"

namespace rcpac {

struct ExperimentConfig {
    std::string bundle = "thm2";       // or "all" where a runner supports it
    std::string zoo_path;              // empty: builtin fixtures
    std::size_t n_test = 64;           // domain window size
    std::size_t a_test = 32;           // parameter window size (per axis)
    std::uint64_t step_budget = 100000;
    std::uint64_t enum_budget = 4096;
    std::uint64_t rerm_budget = 1 << 21;  // weak-RERM enumeration cap
    std::uint64_t m = 2;               // NFL training-set size
    std::uint64_t big_m = 0;           // demo sequence length M; 0 = per-demo default
    std::string learner = "erm";       // nfl: const0 | const1 | erm | arbitrary
    std::string out_path;              // empty: stdout
    std::string format = "json";
    bool timing = false;               // wall-clock in the summary (breaks byte-stability)

    void validate() const;
    Zoo load_zoo() const;
};

// Reduction demonstrations, one per construction; accuracy is always
// measured against zoo ground truth.
DemoReport demo_thm2(const ExperimentConfig& cfg);
DemoReport demo_thm3_twohalt(const ExperimentConfig& cfg);
DemoReport demo_thm4(const ExperimentConfig& cfg);
DemoReport demo_thm5_halting(const ExperimentConfig& cfg);
DemoReport demo_ex1(const ExperimentConfig& cfg);

// The NFL certificate runner for one learner id.
DemoReport run_nfl(const ExperimentConfig& cfg, const std::string& learner_id);

// Dimension table with pass/fail rows against the declared properties.
DemoReport dims_report(const ExperimentConfig& cfg);

DemoReport zoo_list_report(const ExperimentConfig& cfg);

// Named learners used by run_nfl (all deterministic).
Learner make_nfl_learner(const std::string& id, const ConstructionBundle& b);

// The default NFL pair list of a bundle: 2m pairs over zoo-halting machines.
PairList default_pair_list(const ConstructionBundle& b, const Zoo& zoo, std::size_t m);

}  // namespace rcpac
