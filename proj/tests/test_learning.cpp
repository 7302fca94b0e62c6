#include <doctest.h>

#include <algorithm>

#include "rcpac/constructions.hpp"
#include "rcpac/learning.hpp"
#include "rcpac/zoo.hpp"

using namespace rcpac;

namespace {

Predictor constant(Label v) {
    return Predictor{[v](Point) { return v; }, Provenance::opaque()};
}

}  // namespace

TEST_CASE("zero-one loss and empirical risk basics") {
    CHECK(zero_one_loss(constant(1), 5, 1) == 0);
    CHECK(zero_one_loss(constant(1), 5, 0) == 1);

    LabeledSample match{{4, 1}, {9, 1}};
    CHECK(empirical_risk(constant(1), match) == Rational(0));
    LabeledSample twice_wrong{{4, 0}, {4, 0}};
    CHECK(empirical_risk(constant(1), twice_wrong) == Rational(1));
    CHECK_THROWS_AS(empirical_risk(constant(1), LabeledSample{}), EmptySampleError);

    // thm2 member h_5 labels 12 = 2*6 with 6 > 5 as 0
    Zoo zoo = Zoo::builtin();
    auto b = thm2_construction(zoo, BundleMode::Honest);
    Predictor h5 = b.member(thm2_code(5));
    CHECK(zero_one_loss(h5, 12, 1) == 1);
    LabeledSample s{{10, 1}, {12, 1}};
    CHECK(empirical_risk(h5, s) == Rational(1, 2));
}

TEST_CASE("rational arithmetic stays exact") {
    Rational r(1, 6);
    r += Rational(1, 3);
    CHECK(r == Rational(1, 2));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, 7) + Rational(1, 8) == Rational(15, 56));
    CHECK(Rational(1, 8) < Rational(1, 7));
    CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("distributions validate mass and distinctness") {
    FiniteDistribution d;
    d.support = {{0, 1, Rational(1, 2)}, {2, 0, Rational(1, 2)}};
    CHECK_NOTHROW(d.validate());
    d.support[1].mass = Rational(1, 3);
    CHECK_THROWS(d.validate());
    d.support = {{0, 1, Rational(1, 2)}, {0, 1, Rational(1, 2)}};
    CHECK_THROWS(d.validate());

    LabeledSample s{{7, 1}, {7, 1}, {9, 0}, {11, 0}};
    FiniteDistribution u = uniform_on(s);
    CHECK(u.support.size() == 3);
    for (const auto& a : u.support)
        if (a.point == 7) CHECK(a.mass == Rational(1, 2));
}

TEST_CASE("perturbation types are reflexive and decider/enumerator agree") {
    Zoo zoo = Zoo::builtin();
    for (const auto& name : bundle_names()) {
        auto b = bundle_by_name(name, zoo, BundleMode::OracleBacked);
        auto window = b.point_window(24);
        for (Point x : window) {
            if (b.pert.member) CHECK(b.pert.member(x, x));
            auto elems = b.pert.enumerate(x, 600);
            REQUIRE(!elems.empty());
            CHECK(elems.front() == x);
            if (b.pert.member)
                for (Point z : elems) CHECK(b.pert.member(x, z));
            // enumeration is monotone in the budget (prefix extension)
            auto fewer = b.pert.enumerate(x, 100);
            REQUIRE(fewer.size() <= elems.size());
            for (std::size_t i = 0; i < fewer.size(); ++i) CHECK(fewer[i] == elems[i]);
            // finite closed forms absorb everything the enumerator finds
            if (b.pert.finite_set) {
                if (auto set = b.pert.finite_set(x)) {
                    if (b.pert.member)
                        for (Point z : *set) CHECK(b.pert.member(x, z));
                    for (Point z : elems)
                        CHECK(std::find(set->begin(), set->end(), z) != set->end());
                }
            }
        }
    }
}

TEST_CASE("robust loss: trivial cases") {
    Zoo zoo = Zoo::builtin();
    auto b = thm2_construction(zoo, BundleMode::OracleBacked);
    // singleton U and matching label
    Point x = 6 * zoo.entries()[0].index + 2;  // U(6i+2) = {6i+2}
    Predictor h = b.member(thm2_code_inf());
    CHECK(robust_loss_bounded(h, x, 1, b.pert, 10) == ThreeValuedBit::Zero);
    // mislabeled points are robust losses by reflexivity, whatever U is
    CHECK(robust_loss_bounded(h, x, 0, b.pert, 10) == ThreeValuedBit::One);
}

TEST_CASE("thm3 odd witness appears at budget >= halting step") {
    Zoo zoo = Zoo::builtin();
    auto b = thm3_construction(zoo, BundleMode::OracleBacked);
    for (auto i : zoo.halting_indices()) {
        std::uint64_t s = *zoo.oracle()(i);
        // h odd-constant 0, true label 1 at 2i: the odd tail is the witness
        Predictor h = b.member(thm3_code(i, i, 0));
        // h(2i) = 1 = y, so only odd witnesses decide
        CHECK(robust_loss_bounded(h, 2 * i, 1, b.pert, s) == ThreeValuedBit::One);
        auto elems = b.pert.enumerate(2 * i, s);
        CHECK(std::find(elems.begin(), elems.end(), 2 * s + 1) != elems.end());
    }
}

TEST_CASE("paper risk values: thm2 distributions") {
    Zoo zoo = Zoo::builtin();
    auto b = thm2_construction(zoo, BundleMode::OracleBacked);
    for (const auto& e : zoo.entries()) {
        FiniteDistribution d = thm2_distribution(e.index);
        Predictor hinf = b.member(thm2_code_inf());
        Predictor h3i = b.member(thm2_code(3 * e.index));
        if (e.halting()) {
            CHECK(robust_risk_exact(b.exact_robust_loss, hinf, d) == Rational(1, 3));
        } else {
            CHECK(robust_risk_exact(b.exact_robust_loss, h3i, d) == Rational(1, 6));
        }
    }
}

TEST_CASE("empirical robust risk mirrors the distribution computation") {
    Zoo zoo = Zoo::builtin();
    auto b = thm2_construction(zoo, BundleMode::OracleBacked);
    auto i = zoo.halting_indices()[0];
    Predictor hinf = b.member(thm2_code_inf());
    LabeledSample consistent{{6 * i, 1}, {6 * i + 2, 1}};
    CHECK(empirical_robust_risk_exact(b.exact_robust_loss, hinf, consistent) == Rational(0));
    LabeledSample one_forced{{6 * i, 1}, {6 * i + 4, 0}};  // (6i+4,0) is hopeless for h_inf
    CHECK(empirical_robust_risk_exact(b.exact_robust_loss, hinf, one_forced) == Rational(1, 2));
    LabeledSample all_wrong{{6 * i, 0}, {6 * i + 2, 0}};
    CHECK(empirical_robust_risk_exact(b.exact_robust_loss, hinf, all_wrong) == Rational(1));
}

TEST_CASE("margin membership: paper closed forms") {
    Zoo zoo = Zoo::builtin();
    auto b2 = thm2_construction(zoo, BundleMode::OracleBacked);
    auto b3 = thm3_construction(zoo, BundleMode::OracleBacked);
    for (auto i : zoo.halting_indices()) {
        // thm3: h_{a,b,0} has margin at 2a when machine a halts
        CHECK(b3.exact_margin(thm3_code(i, i, 0), 2 * i) == 1);
        // thm2: point 6i with 6i <= 2a is outside mar_a
        std::uint64_t a = 3 * i + 1;
        CHECK(b2.exact_margin(thm2_code(a), 6 * i) == 0);
        // singleton U points are never margin points
        CHECK(b2.exact_margin(thm2_code(0), 6 * i + 2) == 0);
    }
}

TEST_CASE("exact and bounded robust losses agree wherever bounded resolves") {
    Zoo zoo = Zoo::builtin();
    for (const auto& name : bundle_names()) {
        auto b = bundle_by_name(name, zoo, BundleMode::OracleBacked);
        auto window = b.point_window(20);
        auto params = b.param_window(8);
        for (auto code : params) {
            Predictor h = b.member(code);
            for (Point x : window) {
                for (Label y : {0, 1}) {
                    auto bounded = robust_loss_bounded(h, x, y, b.pert, 700);
                    if (bounded == ThreeValuedBit::UnknownWithinBudget) continue;
                    Label expect = bounded == ThreeValuedBit::One ? 1 : 0;
                    CHECK(b.exact_robust_loss(h, x, y) == expect);
                }
            }
        }
    }
}

TEST_CASE("margin closed forms agree with bounded enumeration wherever it resolves") {
    Zoo zoo = Zoo::builtin();
    for (const auto& name : bundle_names()) {
        auto b = bundle_by_name(name, zoo, BundleMode::OracleBacked);
        auto window = b.point_window(20);
        auto params = b.param_window(8);
        for (auto code : params) {
            Predictor h = b.member(code);
            for (Point x : window) {
                auto bounded = margin_membership_bounded(h, x, b.pert, 700);
                if (bounded == ThreeValuedBit::UnknownWithinBudget) continue;
                Label expect = bounded == ThreeValuedBit::One ? 1 : 0;
                CHECK(b.exact_margin(code, x) == expect);
            }
        }
    }
}

TEST_CASE("dominance: robust loss is at least the standard loss") {
    Zoo zoo = Zoo::builtin();
    for (const auto& name : bundle_names()) {
        auto b = bundle_by_name(name, zoo, BundleMode::OracleBacked);
        auto window = b.point_window(16);
        auto params = b.param_window(6);
        for (auto code : params) {
            Predictor h = b.member(code);
            for (Point x : window)
                for (Label y : {0, 1})
                    CHECK(b.exact_robust_loss(h, x, y) >= zero_one_loss(h, x, y));
        }
    }
}

TEST_CASE("thm5 exact loss follows the five-case procedure") {
    Zoo zoo = Zoo::builtin();
    auto b = thm5_construction(zoo, BundleMode::Honest);
    auto halting = zoo.halting_indices();
    auto looping = zoo.looping_indices();
    std::uint64_t ih = halting[2];
    std::uint64_t s = *zoo.oracle()(ih);
    std::uint64_t il = looping[0];

    // off-row points: loss equals the label
    Predictor h = b.member(thm5_code(ih, 1));
    CHECK(b.exact_robust_loss(h, u64_pair(il, 0), 1) == 1);
    CHECK(b.exact_robust_loss(h, u64_pair(il, 0), 0) == 0);
    // (i,0) with label 0: h(i,0) = 1 forces loss
    CHECK(b.exact_robust_loss(h, u64_pair(ih, 0), 0) == 1);
    // (i,0) with label 1: loss iff the machine is still running after j+1 steps
    for (std::uint64_t j = 0; j <= s + 1; ++j) {
        Predictor hj = b.member(thm5_code(ih, j));
        Label expect = (j + 1 < s) ? 1 : 0;
        CHECK(b.exact_robust_loss(hj, u64_pair(ih, 0), 1) == expect);
    }
    // looping machine: every member of its row keeps loss 1 at ((i,0),1)
    for (std::uint64_t j = 0; j <= 4; ++j)
        CHECK(b.exact_robust_loss(b.member(thm5_code(il, j)), u64_pair(il, 0), 1) == 1);
}

TEST_CASE("thm4: general members lack an exact evaluator in honest mode") {
    Zoo zoo = Zoo::builtin();
    auto honest = thm4_construction(zoo, BundleMode::Honest);
    auto backed = thm4_construction(zoo, BundleMode::OracleBacked);
    auto i = zoo.halting_indices()[0];
    Predictor general = honest.member(thm4_code(i, 0));  // h_{i,0}
    CHECK_THROWS_AS(honest.exact_robust_loss(general, u64_pair(i, 0), 1), NoExactEvaluator);
    // the oracle-backed bundle evaluates the same query
    CHECK_NOTHROW(backed.exact_robust_loss(backed.member(thm4_code(i, 0)), u64_pair(i, 0), 1));
    // H' members evaluate honestly
    Predictor hprime = honest.member(thm4_code(i, std::nullopt));  // h_{i,inf}
    CHECK(honest.exact_robust_loss(hprime, u64_pair(i, 0), 1) == 0);
}

TEST_CASE("thm5 perturbation sets: zoo closed forms") {
    Zoo zoo = Zoo::builtin();
    auto b = thm5_construction(zoo, BundleMode::OracleBacked);
    for (auto i : zoo.halting_indices()) {
        std::uint64_t s = *zoo.oracle()(i);
        // U((i,j)) = {(i,j)} once the machine has halted within j steps
        auto set = b.pert.finite_set(u64_pair(i, s));
        REQUIRE(set.has_value());
        CHECK(*set == std::vector<Point>{u64_pair(i, s)});
        if (s > 1) {
            auto set2 = b.pert.finite_set(u64_pair(i, s - 1));
            REQUIRE(set2.has_value());
            CHECK(*set2 == std::vector<Point>{u64_pair(i, s - 1), u64_pair(i, 0)});
        }
        // U((i,0)) = {(i,k) : k < s}
        auto base = b.pert.finite_set(u64_pair(i, 0));
        REQUIRE(base.has_value());
        CHECK(base->size() == s);
    }
    for (auto i : zoo.looping_indices())
        CHECK_FALSE(b.pert.finite_set(u64_pair(i, 0)).has_value());
}
