#include "rcpac/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

#include "rcpac/learners.hpp"
#include "rcpac/oracles.hpp"

namespace rcpac {

void ExperimentConfig::validate() const {
    if (n_test == 0 || a_test == 0) throw std::invalid_argument("config: windows must be positive");
    if (step_budget == 0 || enum_budget == 0 || rerm_budget == 0)
        throw std::invalid_argument("config: budgets must be positive");
    if (m == 0) throw std::invalid_argument("config: m must be positive");
    if (format != "json" && format != "csv")
        throw std::invalid_argument("config: format must be json or csv");
}

Zoo ExperimentConfig::load_zoo() const {
    return zoo_path.empty() ? Zoo::builtin() : Zoo::load_file(zoo_path);
}

namespace {

Json config_json(const ExperimentConfig& cfg) {
    return Json{{"bundle", cfg.bundle},       {"n_test", cfg.n_test},
                {"a_test", cfg.a_test},       {"step_budget", cfg.step_budget},
                {"enum_budget", cfg.enum_budget}, {"rerm_budget", cfg.rerm_budget},
                {"m", cfg.m},                 {"big_m", cfg.big_m},
                {"learner", cfg.learner}};
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    std::int64_t ms() const {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start)
            .count();
    }
};

void finish(DemoReport& report, const ExperimentConfig& cfg, const Timer& timer) {
    if (cfg.timing) report.summary["wall_ms"] = timer.ms();
}

std::uint64_t default_big_m(const ExperimentConfig& cfg, std::uint64_t fallback) {
    return cfg.big_m ? cfg.big_m : fallback;
}

}  // namespace

// ---------------------------------------------------------------------------
// demo thm2: majority-vote tautology decoding
// ---------------------------------------------------------------------------

DemoReport demo_thm2(const ExperimentConfig& cfg) {
    cfg.validate();
    Timer timer;
    Zoo zoo = cfg.load_zoo();
    ConstructionBundle b = thm2_construction(zoo, BundleMode::OracleBacked);
    const std::uint64_t big_m = default_big_m(cfg, 5);

    DemoReport report;
    report.experiment = "demo_thm2";
    report.config = config_json(cfg);
    report.config["epsilon"] = rational_json(Rational(1, 7));
    report.config["delta"] = rational_json(Rational(1, 3));
    report.config["sequence_length"] = big_m;

    Learner learner = [&b](const LabeledSample& s) { return agnostic_rerm(b, s); };

    std::size_t correct = 0;
    for (const auto& e : zoo.entries()) {
        std::uint64_t i = e.index;
        std::vector<LabeledExample> support{{6 * i, 1}, {6 * i + 2, 1}, {6 * i + 4, 0}};
        Label decoded = majority_vote_decoder(learner, support, big_m, 6 * i + 2);
        bool truth = e.halting();
        bool agree = (decoded == 1) == truth;
        correct += agree;
        report.rows.push_back(Json{{"machine", i},
                                   {"ground_truth", truth ? "halts" : "loops"},
                                   {"decoded", decoded},
                                   {"agree", agree}});
    }
    std::size_t total = zoo.entries().size();
    report.summary = Json{{"instances", total},
                          {"correct", correct},
                          {"accuracy", rational_json(Rational(
                                           static_cast<std::int64_t>(correct),
                                           static_cast<std::int64_t>(total)))}};
    report.checks.push_back({"thm2_demo_accuracy_1", correct == total, true});
    finish(report, cfg, timer);
    return report;
}

// ---------------------------------------------------------------------------
// demo thm3: TwoHalt decoding
// ---------------------------------------------------------------------------

DemoReport demo_thm3_twohalt(const ExperimentConfig& cfg) {
    cfg.validate();
    Timer timer;
    Zoo zoo = cfg.load_zoo();
    ConstructionBundle b = thm3_construction(zoo, BundleMode::OracleBacked);
    const std::uint64_t big_m = default_big_m(cfg, 7);

    DemoReport report;
    report.experiment = "demo_thm3_twohalt";
    report.config = config_json(cfg);
    report.config["epsilon"] = rational_json(Rational(1, 3));
    report.config["delta"] = rational_json(Rational(1, 3));
    report.config["sequence_length"] = big_m;

    Learner learner = [&b](const LabeledSample& s) { return agnostic_rerm(b, s); };

    auto halting = zoo.halting_indices();
    auto looping = zoo.looping_indices();
    // constrained pairs (exactly one halting), alternating which side halts,
    // plus two unconstrained rows
    std::vector<std::pair<std::uint64_t, std::uint64_t>> tasks;
    for (std::size_t t = 0; t < halting.size(); ++t) {
        std::uint64_t h = halting[t];
        std::uint64_t l = looping[t % looping.size()];
        if (t % 2 == 0)
            tasks.push_back({h, l});
        else
            tasks.push_back({l, h});
    }
    if (halting.size() >= 2) tasks.push_back({halting[0], halting[1]});
    if (looping.size() >= 2) tasks.push_back({looping[0], looping[1]});

    std::size_t constrained = 0, correct = 0;
    for (auto [i, k] : tasks) {
        bool hi = zoo.find(i)->halting();
        bool hk = zoo.find(k)->halting();
        bool is_constrained = hi != hk;
        Json row{{"first", i}, {"second", k}};
        if (!is_constrained) {
            row["case"] = "unconstrained";
            report.rows.push_back(row);
            continue;
        }
        ++constrained;
        std::vector<LabeledExample> support{{2 * i, 1}, {2 * k, 0}};
        // odd-number label of the trained predictors, majority over sequences
        std::int64_t votes_one = 0;
        std::uint64_t total_seqs = 1;
        for (std::uint64_t t = 0; t < big_m; ++t) total_seqs *= support.size();
        Label vote = majority_vote_decoder(learner, support, big_m, 1);
        (void)votes_one;
        (void)total_seqs;
        int answer = vote == 1 ? 1 : 2;  // 1: first halts, 2: second halts
        int truth = hi ? 1 : 2;
        bool agree = answer == truth;
        correct += agree;
        row["case"] = "constrained";
        row["answer"] = answer;
        row["truth"] = truth;
        row["agree"] = agree;
        report.rows.push_back(row);
    }
    report.summary = Json{{"constrained_pairs", constrained},
                          {"correct", correct},
                          {"accuracy", rational_json(Rational(
                                           static_cast<std::int64_t>(correct),
                                           static_cast<std::int64_t>(std::max<std::size_t>(
                                               constrained, 1))))}};
    report.checks.push_back({"thm3_twohalt_accuracy_1", correct == constrained, true});
    report.checks.push_back({"thm3_enough_pairs", constrained >= 8, true});
    finish(report, cfg, timer);
    return report;
}

// ---------------------------------------------------------------------------
// demo thm4: exact RERM answers where bounded loss evaluation stays unknown
// ---------------------------------------------------------------------------

DemoReport demo_thm4(const ExperimentConfig& cfg) {
    cfg.validate();
    Timer timer;
    Zoo zoo = cfg.load_zoo();
    // honest mode: the demonstration is that the H'-search RERM needs no
    // ground truth even though pointwise loss evaluation can stall
    ConstructionBundle b = thm4_construction(zoo, BundleMode::Honest);

    DemoReport report;
    report.experiment = "demo_thm4";
    report.config = config_json(cfg);

    std::size_t unknown_rows = 0, answered = 0;
    for (const auto& e : zoo.entries()) {
        std::uint64_t i = e.index;
        Point x = u64_pair(i, 0);
        LabeledSample s{{x, 1}};
        Predictor candidate = b.member(thm4_code(i, 0));  // h_{i,0}
        ThreeValuedBit bounded = robust_loss_bounded(candidate, x, 1, b.pert, cfg.enum_budget);
        bool unknown = bounded == ThreeValuedBit::UnknownWithinBudget;
        unknown_rows += unknown;

        Predictor out = agnostic_rerm(b, s);
        Rational risk = agnostic_rerm_risk(b, s);
        ++answered;
        report.rows.push_back(
            Json{{"machine", i},
                 {"bounded_loss",
                  unknown ? "unknown" : (bounded == ThreeValuedBit::One ? "1" : "0")},
                 {"rerm_param", out.prov.param},
                 {"rerm_risk", rational_json(risk)},
                 {"rerm_risk_zero", risk == Rational(0)}});
    }
    report.summary = Json{{"instances", zoo.entries().size()},
                          {"rerm_answered", answered},
                          {"bounded_unknown_rows", unknown_rows}};
    report.checks.push_back({"thm4_rerm_answers_everywhere", answered == zoo.entries().size(), true});
    report.checks.push_back({"thm4_some_rows_unresolved_by_bounded_eval", unknown_rows >= 1, true});
    finish(report, cfg, timer);
    return report;
}

// ---------------------------------------------------------------------------
// demo thm5: halting decisions from a weak-realizable RERM
// ---------------------------------------------------------------------------

DemoReport demo_thm5_halting(const ExperimentConfig& cfg) {
    cfg.validate();
    Timer timer;
    Zoo zoo = cfg.load_zoo();
    ConstructionBundle b = thm5_construction(zoo, BundleMode::Honest);
    const std::uint64_t big_m = default_big_m(cfg, 3);

    DemoReport report;
    report.experiment = "demo_thm5_halting";
    report.config = config_json(cfg);
    report.config["epsilon"] = rational_json(Rational(1, 8));
    report.config["delta"] = rational_json(Rational(1, 8));
    report.config["sample_size"] = big_m;

    std::size_t correct = 0;
    for (const auto& e : zoo.entries()) {
        std::uint64_t i = e.index;
        // the only sample D_i^m can produce
        LabeledSample s(big_m, LabeledExample{u64_pair(i, 0), 1});
        RermOutcome out = weak_realizable_rerm(b, s, cfg.rerm_budget);
        std::string decision;
        if (out.kind == RermOutcome::Kind::Hypothesis) {
            Label loss = b.exact_robust_loss(*out.hypothesis, u64_pair(i, 0), 1);
            decision = loss == 0 ? "halts" : "loops";
        } else {
            decision = "unresolved_within_budget";
        }
        bool truth = e.halting();
        bool agree = truth ? decision == "halts" : decision != "halts";
        correct += agree;
        report.rows.push_back(Json{{"machine", i},
                                   {"ground_truth", truth ? "halts" : "loops"},
                                   {"decision", decision},
                                   {"agree", agree}});
    }
    std::size_t total = zoo.entries().size();
    report.summary = Json{{"instances", total},
                          {"correct", correct},
                          {"accuracy", rational_json(Rational(
                                           static_cast<std::int64_t>(correct),
                                           static_cast<std::int64_t>(total)))}};
    report.checks.push_back({"thm5_halting_accuracy_1", correct == total, true});
    finish(report, cfg, timer);
    return report;
}

// ---------------------------------------------------------------------------
// demo ex1: the h(2i) = h(2i+1) majority reduction
// ---------------------------------------------------------------------------

DemoReport demo_ex1(const ExperimentConfig& cfg) {
    cfg.validate();
    Timer timer;
    Zoo zoo = cfg.load_zoo();
    ConstructionBundle b = ex1_construction(zoo, BundleMode::OracleBacked);
    const std::uint64_t big_m = default_big_m(cfg, 7);

    DemoReport report;
    report.experiment = "demo_ex1";
    report.config = config_json(cfg);
    report.config["epsilon"] = rational_json(Rational(1, 3));
    report.config["delta"] = rational_json(Rational(1, 2));
    report.config["sequence_length"] = big_m;

    Learner learner = [&b](const LabeledSample& s) { return agnostic_rerm(b, s); };

    std::size_t correct = 0;
    for (const auto& e : zoo.entries()) {
        std::uint64_t i = e.index;
        std::vector<LabeledExample> support{{2 * i, 1}, {2 * i + 1, 0}};
        // majority of 1[h(2i) = h(2i+1)] over all sequences
        std::uint64_t total_seqs = 1;
        for (std::uint64_t t = 0; t < big_m; ++t) total_seqs *= 2;
        std::int64_t equal_votes = 0;
        for (std::uint64_t l = 0; l < total_seqs; ++l) {
            LabeledSample seq(big_m);
            std::uint64_t idx = l;
            for (std::uint64_t t = 0; t < big_m; ++t) {
                seq[t] = support[idx % 2];
                idx /= 2;
            }
            Predictor h = learner(seq);
            if (h(2 * i) == h(2 * i + 1)) ++equal_votes;
        }
        Label decoded = 2 * equal_votes > static_cast<std::int64_t>(total_seqs) ? 1 : 0;
        bool truth = e.halting();
        bool agree = (decoded == 1) == truth;
        correct += agree;
        report.rows.push_back(Json{{"machine", i},
                                   {"ground_truth", truth ? "halts" : "loops"},
                                   {"decoded", decoded},
                                   {"agree", agree}});
    }
    std::size_t total = zoo.entries().size();
    report.summary = Json{{"instances", total},
                          {"correct", correct},
                          {"accuracy", rational_json(Rational(
                                           static_cast<std::int64_t>(correct),
                                           static_cast<std::int64_t>(total)))}};
    report.checks.push_back({"ex1_demo_accuracy_1", correct == total, true});
    finish(report, cfg, timer);
    return report;
}

// ---------------------------------------------------------------------------
// NFL runner
// ---------------------------------------------------------------------------

Learner make_nfl_learner(const std::string& id, const ConstructionBundle& b) {
    if (id == "const0")
        return [](const LabeledSample&) {
            return Predictor{[](Point) { return 0; }, Provenance::opaque()};
        };
    if (id == "const1")
        return [](const LabeledSample&) {
            return Predictor{[](Point) { return 1; }, Provenance::opaque()};
        };
    if (id == "erm") {
        auto bundle = std::make_shared<ConstructionBundle>(b);
        return [bundle](const LabeledSample& s) { return erm_pac_learner(*bundle, s); };
    }
    if (id == "arbitrary") {
        // deterministic pseudo-random labels keyed on the sample and point
        return [](const LabeledSample& s) {
            std::uint64_t seed = 0x9e3779b97f4a7c15ull;
            for (const auto& ex : s)
                seed = (seed ^ (ex.point * 2 + ex.label)) * 0xbf58476d1ce4e5b9ull;
            return Predictor{[seed](Point x) {
                                 std::uint64_t v = (seed ^ x) * 0x94d049bb133111ebull;
                                 v ^= v >> 31;
                                 return static_cast<Label>(v & 1);
                             },
                             Provenance::opaque()};
        };
    }
    throw std::invalid_argument("unknown nfl learner: " + id);
}

PairList default_pair_list(const ConstructionBundle& b, const Zoo& zoo, std::size_t m) {
    auto halting = zoo.halting_indices();
    if (halting.size() < 2 * m)
        throw std::invalid_argument("zoo too small for the requested pair list");
    PairList z;
    for (std::size_t t = 0; t < 2 * m; ++t) {
        std::uint64_t i = halting[t];
        if (b.name == "thm2")
            z.pairs.push_back({6 * i + 2, 6 * i + 4});
        else
            throw std::invalid_argument("no default pair list for bundle " + b.name);
    }
    return z;
}

DemoReport run_nfl(const ExperimentConfig& cfg, const std::string& learner_id) {
    cfg.validate();
    Timer timer;
    Zoo zoo = cfg.load_zoo();
    ConstructionBundle b = bundle_by_name(cfg.bundle, zoo, BundleMode::OracleBacked);
    PairList z = default_pair_list(b, zoo, cfg.m);
    Learner learner = make_nfl_learner(learner_id, b);

    DemoReport report;
    report.experiment = "nfl";
    report.config = config_json(cfg);
    report.config["learner"] = learner_id;

    NflCertificate cert = nfl_adversary(learner, cfg.m, z, b, cfg.enum_budget);

    Json cj;
    cj["labeling"] = cert.chosen_labeling;
    cj["labeling_index"] = cert.labeling_index;
    cj["distribution"] = distribution_json(cert.distribution);
    cj["witnessed_bound"] = rational_json(cert.witnessed_bound);
    cj["exact_expectation"] = rational_json(cert.exact_expectation);
    cj["tail_probability"] = rational_json(cert.tail_probability);
    cj["exact_route"] = cert.exact_route;
    cj["shatter_points"] = cert.shatter_points;
    report.certificates.push_back(cj);

    report.summary = Json{{"learner", learner_id},
                          {"m", cfg.m},
                          {"labelings", std::uint64_t(1) << (2 * cfg.m)},
                          {"sequences_per_labeling", [&] {
                               std::uint64_t k = 1;
                               for (std::size_t t = 0; t < cfg.m; ++t) k *= 2 * cfg.m;
                               return k;
                           }()}};
    report.checks.push_back(
        {"nfl_witnessed_bound_ge_1_8", cert.witnessed_bound >= Rational(1, 8), true});
    report.checks.push_back(
        {"nfl_tail_probability_ge_1_7", cert.tail_probability >= Rational(1, 7), true});
    report.checks.push_back(
        {"nfl_expectation_ge_1_4", cert.exact_expectation >= Rational(1, 4), false});
    finish(report, cfg, timer);
    return report;
}

// ---------------------------------------------------------------------------
// dims
// ---------------------------------------------------------------------------

DemoReport dims_report(const ExperimentConfig& cfg) {
    cfg.validate();
    Timer timer;
    Zoo zoo = cfg.load_zoo();

    DemoReport report;
    report.experiment = "dims";
    report.config = config_json(cfg);

    std::vector<std::string> names =
        cfg.bundle == "all" ? bundle_names() : std::vector<std::string>{cfg.bundle};

    for (const auto& name : names) {
        ConstructionBundle b = bundle_by_name(name, zoo, BundleMode::OracleBacked);
        auto window = b.point_window(cfg.n_test);
        auto params = b.param_window(cfg.a_test);

        std::vector<Predictor> members;
        members.reserve(params.size());
        for (auto code : params) members.push_back(b.member(code));

        Json row{{"bundle", name}};
        int vc = vc_dimension_bruteforce(members, window);
        row["vc"] = vc;
        bool pass = true;
        if (b.declared.vc) {
            row["vc_declared"] = *b.declared.vc;
            bool ok = vc == *b.declared.vc;
            report.checks.push_back({name + "_vc", ok, true});
            pass = pass && ok;
        }
        if (b.declared.margin_vc) {
            int mvc = margin_vc_bruteforce(b, window, params);
            row["margin_vc"] = mvc;
            row["margin_vc_declared"] = *b.declared.margin_vc;
            bool ok = mvc == *b.declared.margin_vc;
            report.checks.push_back({name + "_margin_vc", ok, true});
            pass = pass && ok;
        }
        row["decidable_pert"] = b.pert.decidable();
        {
            bool ok = b.pert.decidable() == b.declared.decidable_pert;
            report.checks.push_back({name + "_representation", ok, true});
            pass = pass && ok;
        }
        row["pass"] = pass;
        report.rows.push_back(row);
    }
    report.summary = Json{{"bundles", names.size()}};
    finish(report, cfg, timer);
    return report;
}

DemoReport zoo_list_report(const ExperimentConfig& cfg) {
    Timer timer;
    Zoo zoo = cfg.load_zoo();
    DemoReport report;
    report.experiment = "zoo_list";
    report.config = Json{{"zoo", cfg.zoo_path.empty() ? "builtin" : cfg.zoo_path}};
    for (const auto& e : zoo.entries()) {
        Json row{{"name", e.name}, {"index", e.index}};
        if (e.halts) {
            row["behavior"] = "halts";
            row["steps"] = e.halts->steps;
            row["output"] = e.halts->output.str();
        } else {
            row["behavior"] = "loops";
        }
        row["program"] = to_text(e.program);
        report.rows.push_back(row);
    }
    report.summary = Json{{"entries", zoo.entries().size()},
                          {"halting", zoo.halting_indices().size()},
                          {"looping", zoo.looping_indices().size()}};
    report.checks.push_back({"zoo_loaded", !zoo.entries().empty(), true});
    finish(report, cfg, timer);
    return report;
}

}  // namespace rcpac
