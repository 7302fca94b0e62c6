#include <doctest.h>

#include <algorithm>

#include "rcpac/dimensions.hpp"
#include "rcpac/experiments.hpp"
#include "rcpac/oracles.hpp"
#include "rcpac/parallel.hpp"
#include "rcpac/zoo.hpp"
#include "support/test_support.hpp"

using namespace rcpac;
using namespace rcpac::testsupport;

namespace {

Predictor constant(Label v) {
    return Predictor{[v](Point) { return v; }, Provenance::opaque()};
}

// a toy bundle with singleton perturbations: robust notions collapse to the
// standard ones on it
ConstructionBundle singleton_bundle(const Zoo& zoo) {
    auto b = thm3_construction(zoo, BundleMode::OracleBacked);
    b.name = "singleton-toy";
    b.pert.name = "singleton";
    b.pert.member = [](Point x, Point z) { return x == z; };
    b.pert.enumerate = [](Point x, std::uint64_t) { return std::vector<Point>{x}; };
    b.pert.finite_set = [](Point x) { return std::optional(std::vector<Point>{x}); };
    b.exact_robust_loss = [](const Predictor& h, Point x, Label y) -> Label {
        return h(x) != y ? 1 : 0;
    };
    b.exact_margin = [](std::uint64_t, Point) -> Label { return 0; };
    return b;
}

}  // namespace

TEST_CASE("vc brute force: small shapes") {
    std::vector<Point> window{3, 8};
    CHECK(vc_dimension_bruteforce({constant(0)}, window) == 0);
    CHECK(vc_dimension_bruteforce({constant(0), constant(1)}, {5}) == 1);
    CHECK(vc_dimension_bruteforce({constant(0), constant(1)}, window) == 1);  // no (0,1) pattern
}

TEST_CASE("vc brute force: thm3 shatters {2i, 2j, 2k+1}") {
    Zoo zoo = Zoo::builtin();
    auto b = thm3_construction(zoo, BundleMode::OracleBacked);
    auto params = b.param_window(8);
    std::vector<Predictor> members;
    for (auto c : params) members.push_back(b.member(c));
    auto h = zoo.halting_indices();
    std::vector<Point> window{2 * h[0], 2 * h[1], 2 * h[2] + 1};
    CHECK(vc_dimension_bruteforce(members, window) == 3);
}

TEST_CASE("shatterable_check: singleton geometry") {
    Zoo zoo = Zoo::builtin();
    auto toy = singleton_bundle(zoo);
    // distinct z0 != z1 have empty singleton intersections
    PairList z1{{{2, 4}, {6, 8}}};
    CHECK(shatterable_check(toy.pert, z1, 64).kind == ShatterableOutcome::Kind::NotShatterable);
    // z0 = z1 with distinct points across pairs is shatterable
    PairList z2{{{2, 2}, {6, 6}}};
    auto out = shatterable_check(toy.pert, z2, 64);
    REQUIRE(out.kind == ShatterableOutcome::Kind::ShatterableWith);
    CHECK(out.points == std::vector<Point>{2, 6});
}

TEST_CASE("shatterable_check: thm2 halting pair lists are shatterable") {
    Zoo zoo = Zoo::builtin();
    auto b = thm2_construction(zoo, BundleMode::OracleBacked);
    auto h = zoo.halting_indices();
    PairList z;
    for (std::size_t k = 0; k < 4; ++k) z.pairs.push_back({6 * h[k] + 2, 6 * h[k] + 4});
    auto out = shatterable_check(b.pert, z, 512);
    REQUIRE(out.kind == ShatterableOutcome::Kind::ShatterableWith);
    for (std::size_t k = 0; k < 4; ++k) CHECK(out.points[k] == 6 * h[k] + 2);
}

TEST_CASE("shatterable_check: thm3 halting evens refuse to shatter") {
    Zoo zoo = Zoo::builtin();
    auto b = thm3_construction(zoo, BundleMode::OracleBacked);
    auto h = zoo.halting_indices();
    // the odd witness tails of two halting machines intersect
    PairList z{{{2 * h[0], 2 * h[0]}, {2 * h[1], 2 * h[1]}}};
    CHECK(shatterable_check(b.pert, z, 512).kind == ShatterableOutcome::Kind::NotShatterable);
}

TEST_CASE("robust shattering collapses to VC under singleton perturbations") {
    Zoo zoo = Zoo::builtin();
    auto toy = singleton_bundle(zoo);
    auto params = toy.param_window(3);
    auto h = zoo.halting_indices();
    std::vector<Point> window{2 * h[0], 2 * h[1], 2 * h[2] + 1};
    std::vector<Predictor> members;
    for (auto c : params) members.push_back(toy.member(c));
    int vc = vc_dimension_bruteforce(members, window);
    int rob = robust_shattering_bruteforce(toy, window, params, 3, 64);
    CHECK(rob == vc);
    CHECK(robust_shattering_bruteforce(toy, window, {}, 2, 64) == 0);  // empty parameter window
}

TEST_CASE("robust shattering: thm4 small window reaches exactly 1") {
    Zoo zoo = Zoo::builtin();
    auto b = thm4_construction(zoo, BundleMode::OracleBacked);
    auto h = zoo.halting_indices();
    std::vector<Point> window{u64_pair(h[0], 0), u64_pair(h[1], 0), u64_pair(h[0], 1)};
    auto params = b.param_window(12);
    CHECK(robust_shattering_bruteforce(b, window, params, 2, 512) == 1);
}

TEST_CASE("monotonicity: larger parameter windows never shrink dimensions") {
    Zoo zoo = Zoo::builtin();
    auto b = thm3_construction(zoo, BundleMode::OracleBacked);
    auto window = b.point_window(20);
    int prev = 0;
    for (std::size_t n : {2, 4, 8, 13}) {
        auto params = b.param_window(n);
        std::vector<Predictor> members;
        for (auto c : params) members.push_back(b.member(c));
        int vc = vc_dimension_bruteforce(members, window);
        CHECK(vc >= prev);
        prev = vc;
    }
}

TEST_CASE("vc witness: single constant-0 member refuses all-ones") {
    WitnessFunction w = vc_witness_bruteforce({constant(0)}, {4, 10}, 0);
    Labeling y = w.on_points({12});
    CHECK(y == Labeling{1});
}

TEST_CASE("vc witness: thm2 has a 1-witness; too-small arity is rejected") {
    Zoo zoo = Zoo::builtin();
    auto b = thm2_construction(zoo, BundleMode::OracleBacked);
    auto params = b.param_window(16);
    std::vector<Predictor> members;
    for (auto c : params) members.push_back(b.member(c));
    auto window = b.point_window(24);
    WitnessFunction w = vc_witness_bruteforce(members, window, 1);
    // unachieved labelings are genuinely unachieved
    std::vector<Point> probe{window[0], window[2]};
    Labeling y = w.on_points(probe);
    for (const auto& h : members) {
        bool realizes = h(probe[0]) == y[0] && h(probe[1]) == y[1];
        CHECK_FALSE(realizes);
    }
    CHECK_THROWS_AS(vc_witness_bruteforce(members, window, 0), ShatteredSetExists);
}

TEST_CASE("robust witness composition: outputs are never robustly realized") {
    Zoo zoo = Zoo::builtin();
    auto b = thm2_construction(zoo, BundleMode::OracleBacked);
    auto params = b.param_window(16);
    std::vector<Predictor> members;
    for (auto c : params) members.push_back(b.member(c));
    WitnessFunction w = vc_witness_bruteforce(members, b.point_window(24), 1);
    WitnessFunction rw = robust_witness_from_vc_witness(w, b.pert, 512);

    auto h = zoo.halting_indices();
    PairList z{{{6 * h[0] + 2, 6 * h[0] + 4}, {6 * h[1] + 2, 6 * h[1] + 4}}};
    Labeling y = rw.on_pairs(z);
    CHECK_FALSE(robustly_realized(b, params, z, y));

    // non-qualifying input: behavior is unconstrained, the artifact reports it
    Zoo zoo2 = Zoo::builtin();
    auto b3 = thm3_construction(zoo2, BundleMode::OracleBacked);
    PairList bad{{{2 * h[0], 2 * h[0]}, {2 * h[1], 2 * h[1]}}};
    WitnessFunction rw3 = robust_witness_from_vc_witness(w, b3.pert, 128);
    CHECK_THROWS_AS(rw3.on_pairs(bad), WitnessUnavailable);
}

TEST_CASE("robust witness composition under trivial perturbations equals the vc witness") {
    Zoo zoo = Zoo::builtin();
    auto toy = singleton_bundle(zoo);
    auto params = toy.param_window(6);
    std::vector<Predictor> members;
    for (auto c : params) members.push_back(toy.member(c));
    auto window = toy.point_window(10);
    int vc = vc_dimension_bruteforce(members, window);
    WitnessFunction w = vc_witness_bruteforce(members, window, vc);
    WitnessFunction rw = robust_witness_from_vc_witness(w, toy.pert, 64);
    PairList z;
    for (int i = 0; i <= vc; ++i) z.pairs.push_back({window[i], window[i]});
    std::vector<Point> pts;
    for (auto& pr : z.pairs) pts.push_back(pr.first);
    CHECK(rw.on_pairs(z) == w.on_points(pts));
}

TEST_CASE("nfl adversary: hand-enumerated m=1 case for the constant-0 learner") {
    Zoo zoo = Zoo::builtin();
    auto toy = singleton_bundle(zoo);
    Learner const0 = [](const LabeledSample&) { return constant(0); };
    PairList z{{{2, 2}, {6, 6}}};  // trivial shatterable pairs
    auto cert = nfl_adversary(const0, 1, z, toy, 64);
    // 4 labelings x 2 sequences by hand: (0,0) scores 0, (0,1) scores 1/2
    CHECK(cert.labeling_index == 2);
    CHECK(cert.chosen_labeling == Labeling{0, 1});
    CHECK(cert.witnessed_bound == Rational(1, 2));
    CHECK(cert.tail_probability == Rational(1));
    CHECK(cert.distribution.support.size() == 2);
}

TEST_CASE("nfl adversary: certificates clear the gates for the learner battery") {
    Zoo zoo = Zoo::builtin();
    auto b = thm2_construction(zoo, BundleMode::OracleBacked);
    for (std::size_t m : {1, 2}) {
        PairList z = default_pair_list(b, zoo, m);
        for (const std::string& id : {"const0", "const1", "erm", "arbitrary"}) {
            Learner learner = make_nfl_learner(id, b);
            auto cert = nfl_adversary(learner, m, z, b, 512);
            CHECK(cert.witnessed_bound >= Rational(1, 8));
            CHECK(cert.exact_expectation >= cert.witnessed_bound);
            CHECK(cert.tail_probability >= Rational(1, 7));
            CHECK(cert.chosen_labeling.size() == 2 * m);
            cert.distribution.validate();
        }
    }
}

TEST_CASE("nfl adversary: learners ignoring the sample lose immediately") {
    Zoo zoo = Zoo::builtin();
    auto b = thm2_construction(zoo, BundleMode::OracleBacked);
    PairList z = default_pair_list(b, zoo, 1);
    for (const std::string& id : {"const0", "const1"}) {
        auto cert = nfl_adversary(make_nfl_learner(id, b), 1, z, b, 512);
        CHECK(cert.labeling_index <= 2);
    }
}

TEST_CASE("witness_from_learner emits unrealizable labelings for robust learners") {
    // the extraction presumes a purported robust learner; a planted exact
    // RERM plays that role, and the constant-0 learner's certificate happens
    // to land on an unrealizable labeling here too
    Zoo zoo = Zoo::builtin();
    auto b = thm2_construction(zoo, BundleMode::OracleBacked);
    auto params = b.param_window(32);
    std::vector<Learner> learners;
    learners.push_back([&b](const LabeledSample& s) { return agnostic_rerm(b, s); });
    learners.push_back(make_nfl_learner("const0", b));
    for (std::size_t m : {1, 2}) {
        for (const auto& learner : learners) {
            WitnessFunction w = witness_from_learner(learner, m, b, 512);
            CHECK(w.arity == 2 * m - 1);
            PairList z = default_pair_list(b, zoo, m);
            Labeling y = w.on_pairs(z);
            CHECK(y.size() == 2 * m);
            CHECK_FALSE(robustly_realized(b, params, z, y));
        }
    }
}

TEST_CASE("parallel and serial kernels agree bit for bit") {
    Zoo zoo = Zoo::builtin();
    auto b = thm2_construction(zoo, BundleMode::OracleBacked);
    PairList z = default_pair_list(b, zoo, 2);
    Learner learner = make_nfl_learner("erm", b);

    rcpac::parallel::set_enabled(false);
    auto serial = nfl_adversary(learner, 2, z, b, 512);
    auto window = b.point_window(64);
    auto params = b.param_window(32);
    std::vector<Predictor> members;
    for (auto c : params) members.push_back(b.member(c));
    int vc_serial = vc_dimension_bruteforce(members, window);

    rcpac::parallel::set_enabled(true);
    auto par = nfl_adversary(learner, 2, z, b, 512);
    int vc_par = vc_dimension_bruteforce(members, window);

    CHECK(serial.labeling_index == par.labeling_index);
    CHECK(serial.chosen_labeling == par.chosen_labeling);
    CHECK(serial.witnessed_bound == par.witnessed_bound);
    CHECK(serial.exact_expectation == par.exact_expectation);
    CHECK(serial.tail_probability == par.tail_probability);
    CHECK(vc_serial == vc_par);
}
