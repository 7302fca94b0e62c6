#include <doctest.h>

#include <algorithm>

#include "rcpac/constructions.hpp"
#include "rcpac/evidence.hpp"
#include "rcpac/zoo.hpp"

using namespace rcpac;

TEST_CASE("parameter codes decode and re-encode canonically") {
    for (std::uint64_t code = 0; code < 500; ++code) {
        auto p2 = thm2_param(code);
        CHECK((p2.inf ? thm2_code_inf() : thm2_code(p2.a)) == code);
        auto p3 = thm3_param(code);
        CHECK(thm3_code(p3.a, p3.b, p3.c) == code);
        auto p4 = thm4_param(code);
        CHECK(thm4_code(p4.a_inf ? std::nullopt : std::optional(p4.a),
                        p4.b_inf ? std::nullopt : std::optional(p4.b)) == code);
        auto p5 = thm5_param(code);
        CHECK(thm5_code(p5.i, p5.j) == code);
        auto pe = ex1_param(code);
        CHECK(ex1_code(pe.a, pe.b) == code);
    }
    // unordered pairs normalize
    CHECK(thm3_code(9, 4, 1) == thm3_code(4, 9, 1));
    CHECK(ex1_code(9, 4) == ex1_code(4, 9));
}

TEST_CASE("thm2: family shape and perturbation decider") {
    Zoo zoo = Zoo::builtin();
    auto b = thm2_construction(zoo, BundleMode::OracleBacked);

    Predictor hinf = b.member(thm2_code_inf());
    for (Point x : {1ull, 2ull, 7ull, 100ull, 6001ull}) CHECK(hinf(x) == 1);

    Predictor h3 = b.member(thm2_code(3));
    CHECK(h3(6) == 1);   // 2*3
    CHECK(h3(8) == 0);   // 2*4
    CHECK(h3(9) == 1);   // odd

    for (const auto& e : zoo.entries()) {
        std::uint64_t i = e.index;
        // the decider at 6i+4 on odd points is exactly the evidence relation
        for (std::uint64_t j = 0; j <= 400; ++j)
            CHECK(b.pert.member(6 * i + 4, 2 * j + 1) == proves(i, j));
        CHECK(b.pert.member(6 * i + 4, 6 * i + 2));
        CHECK(b.pert.member(6 * i + 4, 6 * i + 4));
        CHECK_FALSE(b.pert.member(6 * i + 4, 6 * i));
        // 6i reaches every odd
        CHECK(b.pert.member(6 * i, 2 * i + 1));
        CHECK(b.pert.member(6 * i, 1));
        CHECK_FALSE(b.pert.member(6 * i, 6 * i + 2));
        if (!e.halting()) {
            // U(6i+4) is exactly {6i+2, 6i+4}: enumeration finds nothing else
            auto elems = b.pert.enumerate(6 * i + 4, 3000);
            std::sort(elems.begin(), elems.end());
            CHECK(elems == std::vector<Point>{6 * i + 2, 6 * i + 4});
            auto set = b.pert.finite_set(6 * i + 4);
            REQUIRE(set.has_value());
            CHECK(set->size() == 2);
        } else {
            auto set = b.pert.finite_set(6 * i + 4);
            REQUIRE(set.has_value());
            CHECK(set->size() == 3);  // the unique proof joins the pair
        }
    }
}

TEST_CASE("thm3: the two-even-points family and Algorithm-2 decider cases") {
    Zoo zoo = Zoo::builtin();
    auto b = thm3_construction(zoo, BundleMode::OracleBacked);

    Predictor h = b.member(thm3_code(4, 9, 1));
    CHECK(h(8) == 1);
    CHECK(h(18) == 1);
    CHECK(h(10) == 0);
    CHECK(h(3) == 1);  // odd-constant c = 1

    for (auto i : zoo.halting_indices()) {
        std::uint64_t s = *zoo.oracle()(i);
        CHECK(b.pert.member(2 * i, 2 * s + 1));          // halts within s steps
        if (s > 1) CHECK_FALSE(b.pert.member(2 * i, 2 * (s - 1) + 1));
        CHECK(b.pert.member(2 * i, 2 * i));              // even-even: identity only
        CHECK_FALSE(b.pert.member(2 * i, 2 * i + 2));
        CHECK(b.pert.member(2 * i + 1, 2 * i + 1));      // odd points are singletons
        CHECK_FALSE(b.pert.member(2 * i + 1, 2 * i));
        CHECK_FALSE(b.pert.member(2 * i + 1, 2 * i + 3));
    }
    for (auto i : zoo.looping_indices()) {
        for (std::uint64_t j = 0; j <= 300; ++j) CHECK_FALSE(b.pert.member(2 * i, 2 * j + 1));
        auto set = b.pert.finite_set(2 * i);
        REQUIRE(set.has_value());
        CHECK(*set == std::vector<Point>{2 * i});
    }
}

TEST_CASE("thm4: proof-pair perturbations") {
    Zoo zoo = Zoo::builtin();
    auto b = thm4_construction(zoo, BundleMode::OracleBacked);
    for (const auto& e : zoo.entries()) {
        std::uint64_t i = e.index;
        for (std::uint64_t j = 1; j <= 400; ++j)
            CHECK(b.pert.member(u64_pair(i, 0), u64_pair(i, j)) == proves(i, j));
        // U((i,j)) = {(i,0), (i,j)}
        CHECK(b.pert.member(u64_pair(i, 5), u64_pair(i, 0)));
        CHECK(b.pert.member(u64_pair(i, 5), u64_pair(i, 5)));
        CHECK_FALSE(b.pert.member(u64_pair(i, 5), u64_pair(i, 4)));
        CHECK_FALSE(b.pert.member(u64_pair(i, 5), u64_pair(i + 1, 5)));
    }
}

TEST_CASE("thm5: initial segments per row") {
    Zoo zoo = Zoo::builtin();
    auto b = thm5_construction(zoo, BundleMode::Honest);
    std::uint64_t i = zoo.halting_indices()[0];
    Predictor h = b.member(thm5_code(i, 3));
    for (std::uint64_t k = 0; k <= 3; ++k) CHECK(h(u64_pair(i, k)) == 1);
    CHECK(h(u64_pair(i, 4)) == 0);
    CHECK(h(u64_pair(i + 1, 0)) == 0);
}

TEST_CASE("ex1: RER-only perturbation type") {
    Zoo zoo = Zoo::builtin();
    auto honest = ex1_construction(zoo, BundleMode::Honest);
    CHECK_FALSE(honest.pert.decidable());
    CHECK_FALSE(honest.declared.decidable_pert);
    CHECK(honest.family.repr == Representation::RER);

    Predictor h = honest.member(ex1_code(10, 23));
    CHECK(h(10) == 1);
    CHECK(h(23) == 1);
    CHECK(h(11) == 0);

    for (auto i : zoo.halting_indices()) {
        std::uint64_t s = *zoo.oracle()(i);
        auto elems = honest.pert.enumerate(2 * i, s + 10);
        CHECK(std::find(elems.begin(), elems.end(), 2 * i + 1) != elems.end());
    }
    for (auto i : zoo.looping_indices()) {
        auto elems = honest.pert.enumerate(2 * i, 2500);
        CHECK(elems == std::vector<Point>{2 * i});
    }
}

TEST_CASE("every member is total over the windows") {
    Zoo zoo = Zoo::builtin();
    for (const auto& name : bundle_names()) {
        auto b = bundle_by_name(name, zoo, BundleMode::OracleBacked);
        auto window = b.point_window(64);
        auto params = b.param_window(32);
        for (auto code : params) {
            Predictor h = b.member(code);
            for (Point x : window) {
                Label v = h(x);
                CHECK((v == 0 || v == 1));
            }
        }
    }
}

TEST_CASE("thm4 domination: the b = inf slice never does worse") {
    Zoo zoo = Zoo::builtin();
    auto b = thm4_construction(zoo, BundleMode::OracleBacked);
    auto window = b.point_window(24);
    std::uint64_t seed = 99;
    for (int trial = 0; trial < 60; ++trial) {
        LabeledSample s;
        for (int n = 0; n < 4; ++n) {
            seed = seed * 6364136223846793005ull + 1442695040888963407ull;
            s.push_back({window[seed % window.size()], static_cast<Label>((seed >> 20) & 1)});
        }
        for (auto i : zoo.halting_indices()) {
            Predictor dom = b.member(thm4_code(i, std::nullopt));
            Rational rd = empirical_robust_risk_exact(b.exact_robust_loss, dom, s);
            for (std::uint64_t bv : {0ull, 1ull, 2ull, 50ull}) {
                Predictor gen = b.member(thm4_code(i, bv));
                CHECK(rd <= empirical_robust_risk_exact(b.exact_robust_loss, gen, s));
            }
        }
    }
}

TEST_CASE("declared properties match the registration surface") {
    Zoo zoo = Zoo::builtin();
    auto t2 = thm2_construction(zoo, BundleMode::OracleBacked);
    CHECK(t2.declared.strong_rerm);
    CHECK(t2.declared.robust_agnostic_rerm);
    auto t3 = thm3_construction(zoo, BundleMode::OracleBacked);
    CHECK_FALSE(t3.declared.strong_rerm);
    auto t5 = thm5_construction(zoo, BundleMode::Honest);
    CHECK(t5.declared.honest_exact_loss);
    CHECK_FALSE(t5.declared.strong_rerm);
    CHECK_FALSE(t5.declared.robust_agnostic_rerm);
    CHECK(t5.declared.agnostic_standard_loss);
    auto t4 = thm4_construction(zoo, BundleMode::Honest);
    CHECK(t4.declared.strong_rerm);
    CHECK(t4.declared.robust_agnostic_rerm);  // H'-search works without ground truth
}
