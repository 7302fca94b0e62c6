#include "rcpac/constructions.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <shared_mutex>

namespace rcpac {

namespace {

constexpr std::uint64_t kProbeBudget = 4096;

bool halts_within_memo(std::uint64_t index, std::uint64_t input, std::uint64_t j) {
    return first_halting_step(index, input, j).has_value();
}

// Truth source for closed forms: the injected oracle in OracleBacked mode,
// a bounded probe (which may answer "unknown") in Honest mode.
struct Truth {
    BundleMode mode;
    HaltingOracle oracle;  // set in OracleBacked mode

    // halting step of machine `i` on input 0; nullopt = loops (oracle) or
    // unresolved (honest probe)
    std::optional<std::uint64_t> step_on_zero(std::uint64_t i) const {
        if (mode == BundleMode::OracleBacked) return oracle(i);
        return first_halting_step(i, 0, kProbeBudget);
    }
    std::optional<std::uint64_t> step_on_self(std::uint64_t i) const {
        if (mode == BundleMode::OracleBacked) return oracle(i);
        return first_halting_step(i, i, kProbeBudget);
    }
    // certified loops: only the oracle can say so
    bool certified_loops(std::uint64_t i) const {
        return mode == BundleMode::OracleBacked && !oracle(i).has_value();
    }
};

std::uint64_t param_of(const Predictor& h, const std::string& family) {
    if (h.prov.kind != Provenance::Kind::FamilyMember || h.prov.family != family)
        throw NoExactEvaluator("predictor is not a " + family + " member");
    return h.prov.param;
}

bool is_member_or_majority(const Predictor& h, const std::string& family) {
    return (h.prov.kind == Provenance::Kind::FamilyMember ||
            h.prov.kind == Provenance::Kind::MajorityOfMembers) &&
           h.prov.family == family;
}

std::vector<std::uint64_t> zoo_index_list(const Zoo& zoo) {
    std::vector<std::uint64_t> out;
    for (const auto& e : zoo.entries()) out.push_back(e.index);
    return out;
}

void dedupe_keep_order(std::vector<std::uint64_t>& v) {
    std::set<std::uint64_t> seen;
    std::vector<std::uint64_t> out;
    for (auto x : v)
        if (seen.insert(x).second) out.push_back(x);
    v = std::move(out);
}

}  // namespace

// ---------------------------------------------------------------------------
// parameter codes
// ---------------------------------------------------------------------------

Thm2Param thm2_param(std::uint64_t code) {
    if (code == 0) return {true, 0};
    return {false, code - 1};
}
std::uint64_t thm2_code_inf() { return 0; }
std::uint64_t thm2_code(std::uint64_t a) { return a + 1; }

Thm3Param thm3_param(std::uint64_t code) {
    Label c = static_cast<Label>(code & 1);
    auto [a, d] = u64_unpair(code >> 1);
    return {a, a + d, c};
}
std::uint64_t thm3_code(std::uint64_t a, std::uint64_t b, Label c) {
    if (a > b) std::swap(a, b);
    return (u64_pair(a, b - a) << 1) | static_cast<std::uint64_t>(c);
}

Thm4Param thm4_param(std::uint64_t code) {
    auto [ca, cb] = u64_unpair(code);
    Thm4Param p;
    p.a_inf = ca == 0;
    p.a = ca == 0 ? 0 : ca - 1;
    p.b_inf = cb == 0;
    p.b = cb == 0 ? 0 : cb - 1;
    return p;
}
std::uint64_t thm4_code(std::optional<std::uint64_t> a, std::optional<std::uint64_t> b) {
    return u64_pair(a ? *a + 1 : 0, b ? *b + 1 : 0);
}

Thm5Param thm5_param(std::uint64_t code) {
    auto [i, j] = u64_unpair(code);
    return {i, j};
}
std::uint64_t thm5_code(std::uint64_t i, std::uint64_t j) { return u64_pair(i, j); }

Ex1Param ex1_param(std::uint64_t code) {
    auto [a, d] = u64_unpair(code);
    return {a, a + d};
}
std::uint64_t ex1_code(std::uint64_t a, std::uint64_t b) {
    if (a > b) std::swap(a, b);
    return u64_pair(a, b - a);
}

// ---------------------------------------------------------------------------
// distributions
// ---------------------------------------------------------------------------

FiniteDistribution thm2_distribution(std::uint64_t i) {
    FiniteDistribution d;
    d.support = {{6 * i, 1, Rational(1, 2)},
                 {6 * i + 2, 1, Rational(1, 6)},
                 {6 * i + 4, 0, Rational(1, 3)}};
    d.validate();
    return d;
}

FiniteDistribution thm3_distribution(std::uint64_t i, std::uint64_t k) {
    if (i == k) throw std::invalid_argument("thm3 distribution needs distinct machines");
    FiniteDistribution d;
    d.support = {{2 * i, 1, Rational(1, 2)}, {2 * k, 0, Rational(1, 2)}};
    d.validate();
    return d;
}

FiniteDistribution thm45_distribution(std::uint64_t i) {
    FiniteDistribution d;
    d.support = {{u64_pair(i, 0), 1, Rational(1)}};
    d.validate();
    return d;
}

FiniteDistribution ex1_distribution(std::uint64_t i) {
    FiniteDistribution d;
    d.support = {{2 * i, 1, Rational(1, 2)}, {2 * i + 1, 0, Rational(1, 2)}};
    d.validate();
    return d;
}

// ---------------------------------------------------------------------------
// thm2: thresholds on evens, proof-pair perturbations
// ---------------------------------------------------------------------------

namespace {

Label thm2_eval(const Thm2Param& p, Point x) {
    if (x % 2 == 1) return 1;
    if (p.inf) return 1;
    return (x / 2 <= p.a) ? 1 : 0;
}

std::shared_ptr<Truth> make_truth(const Zoo& zoo, BundleMode mode) {
    auto t = std::make_shared<Truth>();
    t->mode = mode;
    if (mode == BundleMode::OracleBacked) t->oracle = zoo.oracle();
    return t;
}

}  // namespace

ConstructionBundle thm2_construction(const Zoo& zoo, BundleMode mode) {
    auto truth = make_truth(zoo, mode);
    const std::string fam = "thm2";

    ConstructionBundle b;
    b.name = fam;
    b.mode = mode;

    b.family.name = fam;
    b.family.repr = Representation::DR;
    b.family.parameter_space = "a in N u {inf}; code 0 = inf, code c>=1 = threshold c-1";
    b.family.member = [fam](std::uint64_t code) {
        Thm2Param p = thm2_param(code);
        return Predictor{[p](Point x) { return thm2_eval(p, x); }, Provenance::member(fam, code)};
    };

    b.pert.name = fam + "-pert";
    b.pert.member = [](Point x, Point z) {
        if (x % 2 == 1 || x % 6 == 2) return z == x;
        if (x % 6 == 0) return z == x || z % 2 == 1;
        std::uint64_t i = (x - 4) / 6;  // x = 6i + 4
        if (z == x || z == x - 2) return true;
        return z % 2 == 1 && proves(i, (z - 1) / 2);
    };
    b.pert.enumerate = [](Point x, std::uint64_t budget) {
        std::vector<Point> out;
        if (x % 2 == 1 || x % 6 == 2) {
            out.push_back(x);
        } else if (x % 6 == 0) {
            out.push_back(x);
            for (std::uint64_t j = 0; j <= budget; ++j) out.push_back(2 * j + 1);
        } else {
            std::uint64_t i = (x - 4) / 6;
            out.push_back(x);
            out.push_back(x - 2);
            for (std::uint64_t j = 0; j <= budget; ++j)
                if (proves(i, j)) out.push_back(2 * j + 1);
        }
        return out;
    };
    b.pert.finite_set = [truth](Point x) -> std::optional<std::vector<Point>> {
        if (x % 2 == 1 || x % 6 == 2) return std::vector<Point>{x};
        if (x % 6 == 0) return std::nullopt;  // {x} u all odds
        std::uint64_t i = (x - 4) / 6;
        if (auto s = truth->step_on_zero(i))
            return std::vector<Point>{x, x - 2, 2 * evidence_index(i, *s) + 1};
        if (truth->certified_loops(i)) return std::vector<Point>{x, x - 2};
        return std::nullopt;
    };

    if (mode == BundleMode::OracleBacked) {
        b.exact_robust_loss = [truth, fam](const Predictor& h, Point x, Label y) -> Label {
            if (!is_member_or_majority(h, fam))
                throw NoExactEvaluator("thm2 exact loss: structured predictors only");
            // members and their majorities are constant 1 on odd points
            if (x % 2 == 1) return 1 != y;
            if (x % 6 == 2) return h(x) != y;
            if (x % 6 == 0) return (h(x) != y) || (1 != y);
            std::uint64_t i = (x - 4) / 6;
            if (h(x) != y || h(x - 2) != y) return 1;
            return (truth->step_on_zero(i).has_value() && 1 != y) ? 1 : 0;
        };
        b.exact_margin = [truth](std::uint64_t code, Point x) -> Label {
            Thm2Param p = thm2_param(code);
            if (p.inf || x % 2 == 1 || x % 6 == 2) return 0;
            if (x % 6 == 0) return x > 2 * p.a;
            std::uint64_t i = (x - 4) / 6;
            if (truth->step_on_zero(i).has_value()) return x > 2 * p.a;
            return x - 2 == 2 * p.a;
        };
    } else {
        b.exact_robust_loss = [](const Predictor&, Point, Label) -> Label {
            throw NoExactEvaluator("thm2: no exact robust loss without ground truth");
        };
        b.exact_margin = [](std::uint64_t, Point) -> Label {
            throw NoExactEvaluator("thm2: no exact margin without ground truth");
        };
    }

    b.exact_attack = [truth, finite = b.pert.finite_set, fam](
                         const Predictor& h, Point x, Label y) -> std::optional<AttackResult> {
        if (auto set = finite(x)) {
            for (Point z : *set)
                if (h(z) != y) return AttackResult{{{z, y}}};
            return AttackResult{std::nullopt};
        }
        if (x % 6 == 0 && is_member_or_majority(h, fam)) {
            // U(6i) = {6i} u odds; structured predictors are constant 1 on odds
            if (h(x) != y) return AttackResult{{{x, y}}};
            if (1 != y) return AttackResult{{{Point(1), y}}};
            return AttackResult{std::nullopt};
        }
        return std::nullopt;
    };

    b.erm_candidates = [](const LabeledSample& s) {
        std::vector<std::uint64_t> codes{thm2_code_inf(), thm2_code(0)};
        for (const auto& ex : s)
            if (ex.point % 2 == 0) {
                std::uint64_t k = ex.point / 2;
                codes.push_back(thm2_code(k));
                if (k > 0) codes.push_back(thm2_code(k - 1));
            }
        dedupe_keep_order(codes);
        return codes;
    };
    if (mode == BundleMode::OracleBacked) {
        b.rerm_candidates = [](const LabeledSample& s) {
            // robust loss of h_a on S depends on h at the even sample points
            // and at x-2 for x = 6i+4; thresholds flip at k and k-1
            std::vector<std::uint64_t> codes{thm2_code_inf(), thm2_code(0)};
            auto add = [&](std::uint64_t k) {
                codes.push_back(thm2_code(k));
                if (k > 0) codes.push_back(thm2_code(k - 1));
            };
            for (const auto& ex : s)
                if (ex.point % 2 == 0) {
                    add(ex.point / 2);
                    if (ex.point % 6 == 4) add((ex.point - 2) / 2);
                }
            dedupe_keep_order(codes);
            return codes;
        };
    }

    b.distribution = [](std::uint64_t i, std::uint64_t) { return thm2_distribution(i); };

    auto zoo_idx = zoo_index_list(zoo);
    b.point_window = [zoo_idx](std::size_t n) {
        std::vector<Point> pts;
        for (auto z : zoo_idx) {
            for (Point p : {6 * z, 6 * z + 1, 6 * z + 2, 6 * z + 4}) pts.push_back(p);
        }
        if (pts.size() > n) pts.resize(n);
        return pts;
    };
    b.param_window = [zoo_idx](std::size_t n) {
        std::vector<std::uint64_t> values{0};
        for (auto z : zoo_idx)
            for (std::uint64_t a : {3 * z, 3 * z + 1, 3 * z + 2}) values.push_back(a);
        dedupe_keep_order(values);
        if (values.size() + 1 > n && n > 0) values.resize(n - 1);
        std::vector<std::uint64_t> codes{thm2_code_inf()};
        for (auto a : values) codes.push_back(thm2_code(a));
        return codes;
    };

    b.declared.vc = 1;
    b.declared.margin_vc = 1;
    b.declared.decidable_pert = true;
    b.declared.honest_exact_loss = false;
    b.declared.strong_rerm = mode == BundleMode::OracleBacked;
    b.declared.robust_agnostic_rerm = mode == BundleMode::OracleBacked;
    return b;
}

// ---------------------------------------------------------------------------
// thm3: two-even-points class, halting-step perturbations
// ---------------------------------------------------------------------------

namespace {

Label thm3_eval(const Thm3Param& p, Point x) {
    if (x % 2 == 1) return p.c;
    std::uint64_t i = x / 2;
    return (i == p.a || i == p.b) ? 1 : 0;
}

}  // namespace

ConstructionBundle thm3_construction(const Zoo& zoo, BundleMode mode) {
    auto truth = make_truth(zoo, mode);
    const std::string fam = "thm3";

    ConstructionBundle b;
    b.name = fam;
    b.mode = mode;

    b.family.name = fam;
    b.family.repr = Representation::DR;
    b.family.parameter_space = "(a, b, c): at most the evens 2a, 2b map to 1, odds map to c";
    b.family.member = [fam](std::uint64_t code) {
        Thm3Param p = thm3_param(code);
        return Predictor{[p](Point x) { return thm3_eval(p, x); }, Provenance::member(fam, code)};
    };

    b.pert.name = fam + "-pert";
    // the program of Algorithm 2: parity cases, then a run of the point's
    // machine on itself for (z-1)/2 steps
    b.pert.member = [](Point x, Point z) {
        if (x % 2 == 1) return z == x;
        if (z % 2 == 0) return z == x;
        std::uint64_t i = x / 2;
        return halts_within_memo(i, i, (z - 1) / 2);
    };
    b.pert.enumerate = [](Point x, std::uint64_t budget) {
        std::vector<Point> out{x};
        if (x % 2 == 1) return out;
        std::uint64_t i = x / 2;
        for (std::uint64_t j = 0; j <= budget; ++j)
            if (halts_within_memo(i, i, j)) out.push_back(2 * j + 1);
        return out;
    };
    b.pert.finite_set = [truth](Point x) -> std::optional<std::vector<Point>> {
        if (x % 2 == 1) return std::vector<Point>{x};
        std::uint64_t i = x / 2;
        if (truth->certified_loops(i)) return std::vector<Point>{x};
        return std::nullopt;  // halting machines have an infinite odd tail
    };

    if (mode == BundleMode::OracleBacked) {
        b.exact_robust_loss = [truth, fam](const Predictor& h, Point x, Label y) -> Label {
            if (!is_member_or_majority(h, fam))
                throw NoExactEvaluator("thm3 exact loss: structured predictors only");
            // structured predictors are constant on odds; h(1) reads it off
            if (x % 2 == 1) return h(x) != y;
            std::uint64_t i = x / 2;
            if (h(x) != y) return 1;
            return (truth->step_on_self(i).has_value() && h(1) != y) ? 1 : 0;
        };
        b.exact_margin = [truth](std::uint64_t code, Point x) -> Label {
            if (x % 2 == 1) return 0;
            std::uint64_t i = x / 2;
            if (!truth->step_on_self(i).has_value()) return 0;
            Thm3Param p = thm3_param(code);
            bool covered = (i == p.a || i == p.b);
            return (p.c == 0) == covered ? 1 : 0;
        };
    } else {
        b.exact_robust_loss = [](const Predictor&, Point, Label) -> Label {
            throw NoExactEvaluator("thm3: no exact robust loss without ground truth");
        };
        b.exact_margin = [](std::uint64_t, Point) -> Label {
            throw NoExactEvaluator("thm3: no exact margin without ground truth");
        };
    }

    b.exact_attack = [truth, finite = b.pert.finite_set, fam](
                         const Predictor& h, Point x, Label y) -> std::optional<AttackResult> {
        if (auto set = finite(x)) {
            for (Point z : *set)
                if (h(z) != y) return AttackResult{{{z, y}}};
            return AttackResult{std::nullopt};
        }
        if (x % 2 == 0 && is_member_or_majority(h, fam)) {
            std::uint64_t i = x / 2;
            if (h(x) != y) return AttackResult{{{x, y}}};
            if (auto s = truth->step_on_self(i)) {
                if (h(1) != y) return AttackResult{{{2 * *s + 1, y}}};  // minimal odd witness
                return AttackResult{std::nullopt};
            }
        }
        return std::nullopt;
    };

    auto candidates = [](const LabeledSample& s) {
        std::vector<std::uint64_t> values;
        for (const auto& ex : s)
            if (ex.point % 2 == 0) values.push_back(ex.point / 2);
        dedupe_keep_order(values);
        std::uint64_t fresh = 0;
        for (auto v : values) fresh = std::max(fresh, v + 1);
        values.push_back(fresh);
        values.push_back(fresh + 1);
        std::vector<std::uint64_t> codes;
        for (std::size_t i = 0; i < values.size(); ++i)
            for (std::size_t j = i; j < values.size(); ++j)
                for (Label c : {0, 1}) codes.push_back(thm3_code(values[i], values[j], c));
        dedupe_keep_order(codes);
        return codes;
    };
    b.erm_candidates = candidates;
    if (mode == BundleMode::OracleBacked) b.rerm_candidates = candidates;

    b.distribution = [](std::uint64_t i, std::uint64_t k) { return thm3_distribution(i, k); };

    auto zoo_idx = zoo_index_list(zoo);
    b.point_window = [zoo_idx](std::size_t n) {
        std::vector<Point> pts;
        for (auto z : zoo_idx) {
            pts.push_back(2 * z);
            pts.push_back(2 * z + 1);
        }
        if (pts.size() > n) pts.resize(n);
        return pts;
    };
    b.param_window = [zoo_idx](std::size_t n) {
        std::vector<std::uint64_t> values = zoo_idx;
        dedupe_keep_order(values);
        if (values.size() > n) values.resize(n);
        std::vector<std::uint64_t> codes;
        for (std::size_t i = 0; i < values.size(); ++i)
            for (std::size_t j = i; j < values.size(); ++j)
                for (Label c : {0, 1}) codes.push_back(thm3_code(values[i], values[j], c));
        dedupe_keep_order(codes);
        return codes;
    };

    b.declared.vc = 3;
    b.declared.margin_vc = 5;
    b.declared.decidable_pert = true;
    b.declared.honest_exact_loss = false;
    b.declared.strong_rerm = false;
    b.declared.robust_agnostic_rerm = mode == BundleMode::OracleBacked;
    return b;
}

// ---------------------------------------------------------------------------
// thm4: proof-pair domain, loss not evaluable yet agnostic RERM exists
// ---------------------------------------------------------------------------

namespace {

Label thm4_eval(const Thm4Param& p, Point x) {
    auto [i, j] = u64_unpair(x);
    if (p.a_inf) return 1;
    if (i < p.a) return 1;
    if (i == p.a) return (p.b_inf || j <= p.b) ? 1 : 0;
    return 0;
}

bool thm4_row_constant(const Thm4Param& p) { return p.a_inf || p.b_inf; }

}  // namespace

ConstructionBundle thm4_construction(const Zoo& zoo, BundleMode mode) {
    auto truth = make_truth(zoo, mode);
    const std::string fam = "thm4";

    ConstructionBundle b;
    b.name = fam;
    b.mode = mode;

    b.family.name = fam;
    b.family.repr = Representation::DR;
    b.family.parameter_space = "(a, b) in (N u {inf})^2: 1 iff i < a or (i = a and j <= b)";
    b.family.member = [fam](std::uint64_t code) {
        Thm4Param p = thm4_param(code);
        return Predictor{[p](Point x) { return thm4_eval(p, x); }, Provenance::member(fam, code)};
    };

    b.pert.name = fam + "-pert";
    b.pert.member = [](Point x, Point z) {
        auto [i, j] = u64_unpair(x);
        auto [zi, zj] = u64_unpair(z);
        if (zi != i) return false;
        if (j == 0) return zj == 0 || proves(i, zj);
        return zj == 0 || zj == j;
    };
    b.pert.enumerate = [](Point x, std::uint64_t budget) {
        auto [i, j] = u64_unpair(x);
        std::vector<Point> out{x};
        if (j != 0) {
            out.push_back(u64_pair(i, 0));
            return out;
        }
        for (std::uint64_t jj = 1; jj <= budget; ++jj)
            if (proves(i, jj)) out.push_back(u64_pair(i, jj));
        return out;
    };
    b.pert.finite_set = [truth](Point x) -> std::optional<std::vector<Point>> {
        auto [i, j] = u64_unpair(x);
        if (j != 0) return std::vector<Point>{x, u64_pair(i, 0)};
        if (auto s = truth->step_on_zero(i))
            return std::vector<Point>{x, u64_pair(i, evidence_index(i, *s))};
        if (truth->certified_loops(i)) return std::vector<Point>{x};
        return std::nullopt;
    };

    b.exact_robust_loss = [truth, fam, mode](const Predictor& h, Point x, Label y) -> Label {
        std::uint64_t code = param_of(h, fam);
        Thm4Param p = thm4_param(code);
        auto [i, k] = u64_unpair(x);
        if (thm4_row_constant(p) || i != p.a || p.a_inf) {
            // perturbations stay in the row and the member is constant there
            Label row = p.a_inf ? 1 : (i < p.a ? 1 : (i == p.a && p.b_inf ? 1 : (i == p.a ? -1 : 0)));
            if (row != -1) return row != y;
        }
        // i == p.a with finite b
        if (k == 0) {
            if (y == 0) return 1;  // h(a, 0) = 1
            // loss iff some proof index of formula a exceeds b
            if (mode != BundleMode::OracleBacked)
                throw NoExactEvaluator("thm4: loss of a general member at ((a,0)),1) needs ground truth");
            if (auto s = truth->step_on_zero(p.a)) return evidence_index(p.a, *s) > p.b;
            return 0;
        }
        if (y == 0) return 1;  // (a, 0) is in U(x) and h labels it 1
        return k > p.b;
    };
    b.exact_margin = [truth, mode](std::uint64_t code, Point x) -> Label {
        Thm4Param p = thm4_param(code);
        if (p.a_inf || p.b_inf) return 0;
        auto [i, k] = u64_unpair(x);
        if (i != p.a) return 0;
        if (k >= 1) return k > p.b;
        if (mode != BundleMode::OracleBacked)
            throw NoExactEvaluator("thm4: margin at (a,0) needs ground truth");
        if (auto s = truth->step_on_zero(p.a)) return evidence_index(p.a, *s) > p.b;
        return 0;
    };

    b.exact_attack = [finite = b.pert.finite_set, fam](
                         const Predictor& h, Point x, Label y) -> std::optional<AttackResult> {
        if (auto set = finite(x)) {
            for (Point z : *set)
                if (h(z) != y) return AttackResult{{{z, y}}};
            return AttackResult{std::nullopt};
        }
        // unresolved (i,0): row-constant members answer without halting truth
        if (h.prov.kind == Provenance::Kind::FamilyMember && h.prov.family == fam) {
            Thm4Param p = thm4_param(h.prov.param);
            if (thm4_row_constant(p)) {
                if (h(x) != y) return AttackResult{{{x, y}}};
                return AttackResult{std::nullopt};
            }
        }
        return std::nullopt;
    };

    b.erm_candidates = [](const LabeledSample& s) {
        std::vector<std::uint64_t> arows{0};
        std::vector<std::uint64_t> bvals{0};
        for (const auto& ex : s) {
            auto [i, k] = u64_unpair(ex.point);
            arows.push_back(i);
            arows.push_back(i + 1);
            bvals.push_back(k);
            if (k > 0) bvals.push_back(k - 1);
        }
        dedupe_keep_order(arows);
        dedupe_keep_order(bvals);
        std::vector<std::uint64_t> codes{thm4_code(std::nullopt, std::nullopt)};
        for (auto a : arows) {
            codes.push_back(thm4_code(a, std::nullopt));
            for (auto bv : bvals) codes.push_back(thm4_code(a, bv));
        }
        dedupe_keep_order(codes);
        return codes;
    };
    // RERM over H' = {h_{a,inf}}: domination makes the b = inf slice optimal
    b.rerm_candidates = [](const LabeledSample& s) {
        std::vector<std::uint64_t> arows{0};
        for (const auto& ex : s) {
            auto [i, k] = u64_unpair(ex.point);
            arows.push_back(i);
            if (i > 0) arows.push_back(i - 1);
        }
        dedupe_keep_order(arows);
        std::vector<std::uint64_t> codes{thm4_code(std::nullopt, std::nullopt)};
        for (auto a : arows) codes.push_back(thm4_code(a, std::nullopt));
        dedupe_keep_order(codes);
        return codes;
    };

    b.distribution = [](std::uint64_t i, std::uint64_t) { return thm45_distribution(i); };

    auto zoo_idx = zoo_index_list(zoo);
    auto halting = zoo.halting_indices();
    std::map<std::uint64_t, std::uint64_t> steps;
    for (const auto& e : zoo.entries())
        if (e.halts) steps[e.index] = e.halts->steps;

    b.point_window = [zoo_idx, steps](std::size_t n) {
        std::vector<Point> pts;
        for (auto z : zoo_idx) {
            pts.push_back(u64_pair(z, 0));
            pts.push_back(u64_pair(z, 1));
            pts.push_back(u64_pair(z, 2));
            auto it = steps.find(z);
            if (it != steps.end()) pts.push_back(u64_pair(z, evidence_index(z, it->second)));
        }
        dedupe_keep_order(pts);
        if (pts.size() > n) pts.resize(n);
        return pts;
    };
    b.param_window = [zoo_idx, steps](std::size_t n) {
        std::vector<std::optional<std::uint64_t>> avals{std::nullopt};
        for (auto z : zoo_idx) avals.emplace_back(z);
        if (avals.size() > n) avals.resize(n);
        std::vector<std::optional<std::uint64_t>> bvals{std::nullopt, 0, 1, 2};
        for (auto [z, s] : steps) {
            std::uint64_t jstar = evidence_index(z, s);
            bvals.emplace_back(jstar);
            bvals.emplace_back(jstar - 1);
        }
        if (bvals.size() > n) bvals.resize(n);
        std::vector<std::uint64_t> codes;
        for (auto a : avals)
            for (auto bv : bvals) codes.push_back(thm4_code(a, bv));
        dedupe_keep_order(codes);
        return codes;
    };

    b.declared.vc = 1;
    b.declared.margin_vc = 1;
    b.declared.decidable_pert = true;
    b.declared.honest_exact_loss = false;  // general members: deliberately absent
    b.declared.strong_rerm = true;
    b.declared.robust_agnostic_rerm = true;
    return b;
}

// ---------------------------------------------------------------------------
// thm5: per-row initial segments, loss evaluable, no strong RERM
// ---------------------------------------------------------------------------

namespace {

Label thm5_eval(const Thm5Param& p, Point x) {
    auto [i, k] = u64_unpair(x);
    return (i == p.i && k <= p.j) ? 1 : 0;
}

// largest per-row threshold of a structured thm5 predictor; the majority of
// initial segments on row i is an initial segment with threshold <= max code j
std::optional<std::uint64_t> thm5_row_threshold_bound(const Predictor& h, std::uint64_t row) {
    if (h.prov.kind == Provenance::Kind::FamilyMember) {
        Thm5Param p = thm5_param(h.prov.param);
        return p.i == row ? std::optional(p.j) : std::optional<std::uint64_t>(0);
    }
    std::uint64_t bound = 0;
    for (auto code : h.prov.member_codes) {
        Thm5Param p = thm5_param(code);
        if (p.i == row) bound = std::max(bound, p.j);
    }
    return bound;
}

}  // namespace

ConstructionBundle thm5_construction(const Zoo& zoo, BundleMode mode) {
    auto truth = make_truth(zoo, mode);
    const std::string fam = "thm5";

    ConstructionBundle b;
    b.name = fam;
    b.mode = mode;

    b.family.name = fam;
    b.family.repr = Representation::DR;
    b.family.parameter_space = "(i, j): the initial segment {(i,k): k <= j} of row i";
    b.family.member = [fam](std::uint64_t code) {
        Thm5Param p = thm5_param(code);
        return Predictor{[p](Point x) { return thm5_eval(p, x); }, Provenance::member(fam, code)};
    };

    b.pert.name = fam + "-pert";
    b.pert.member = [](Point x, Point z) {
        auto [i, j] = u64_unpair(x);
        auto [zi, zk] = u64_unpair(z);
        if (zi != i) return false;
        if (j == 0) return zk == 0 || !halts_within_memo(i, 0, zk);
        if (zk == j) return true;
        return zk == 0 && !halts_within_memo(i, 0, j);
    };
    b.pert.enumerate = [](Point x, std::uint64_t budget) {
        auto [i, j] = u64_unpair(x);
        std::vector<Point> out{x};
        if (j != 0) {
            if (!halts_within_memo(i, 0, j)) out.push_back(u64_pair(i, 0));
            return out;
        }
        for (std::uint64_t k = 1; k <= budget; ++k)
            if (!halts_within_memo(i, 0, k))
                out.push_back(u64_pair(i, k));
            else
                break;  // halting is stable: no later k re-enters
        return out;
    };
    b.pert.finite_set = [truth](Point x) -> std::optional<std::vector<Point>> {
        auto [i, j] = u64_unpair(x);
        if (j != 0) {
            std::vector<Point> out{x};
            if (!halts_within_memo(i, 0, j)) out.push_back(u64_pair(i, 0));
            return out;
        }
        if (auto s = truth->step_on_zero(i)) {
            std::vector<Point> out;
            for (std::uint64_t k = 0; k < *s; ++k) out.push_back(u64_pair(i, k));
            return out;
        }
        return std::nullopt;  // loops: U((i,0)) is all of row i
    };

    // the five-case exact procedure; total, no ground truth needed
    b.exact_robust_loss = [fam](const Predictor& h, Point x, Label y) -> Label {
        std::uint64_t code = param_of(h, fam);
        Thm5Param p = thm5_param(code);
        auto [i, k] = u64_unpair(x);
        if (i != p.i) return y;                       // h is 0 on the whole row
        if (k == 0 && y == 1) return !halts_within_memo(i, 0, p.j + 1);
        if (k == 0 && y == 0) return 1;               // h(i, 0) = 1
        if (y == 1) return k > p.j;
        if (k <= p.j) return 1;
        return !halts_within_memo(i, 0, k);      // (i,0) in U(x) iff still running
    };
    b.exact_margin = [](std::uint64_t code, Point x) -> Label {
        Thm5Param p = thm5_param(code);
        auto [i, k] = u64_unpair(x);
        if (i != p.i) return 0;
        if (k == 0) return !halts_within_memo(i, 0, p.j + 1);
        return k > p.j && !halts_within_memo(i, 0, k);
    };

    b.exact_attack = [truth, finite = b.pert.finite_set, fam](
                         const Predictor& h, Point x, Label y) -> std::optional<AttackResult> {
        if (auto set = finite(x)) {
            for (Point z : *set)
                if (h(z) != y) return AttackResult{{{z, y}}};
            return AttackResult{std::nullopt};
        }
        // certified looping machine: U((i,0)) is the whole row, and structured
        // predictors vanish past their largest row threshold
        std::uint64_t i = u64_unpair(x).first;
        if (truth->certified_loops(i) && is_member_or_majority(h, fam)) {
            auto bound = thm5_row_threshold_bound(h, i);
            for (std::uint64_t kk = 0; kk <= *bound + 1; ++kk) {
                Point z = u64_pair(i, kk);
                if (h(z) != y) return AttackResult{{{z, y}}};
            }
            return AttackResult{std::nullopt};
        }
        return std::nullopt;
    };

    b.erm_candidates = [](const LabeledSample& s) {
        // the finite class H_S: rows of positively labelled points, plus an
        // all-zeros-on-S stand-in from the first untouched row
        std::vector<std::uint64_t> codes;
        std::set<std::uint64_t> rows_present;
        for (const auto& ex : s) rows_present.insert(u64_unpair(ex.point).first);
        for (const auto& ex : s)
            if (ex.label == 1) {
                auto [i, j] = u64_unpair(ex.point);
                codes.push_back(thm5_code(i, j));
            }
        std::uint64_t fresh = 0;
        while (rows_present.count(fresh)) ++fresh;
        codes.push_back(thm5_code(fresh, 0));
        dedupe_keep_order(codes);
        return codes;
    };
    // no robust agnostic candidates: absence is the theorem's content

    b.distribution = [](std::uint64_t i, std::uint64_t) { return thm45_distribution(i); };

    auto zoo_idx = zoo_index_list(zoo);
    b.point_window = [zoo_idx](std::size_t n) {
        std::vector<Point> pts;
        for (auto z : zoo_idx)
            for (std::uint64_t k = 0; k <= 4; ++k) pts.push_back(u64_pair(z, k));
        if (pts.size() > n) pts.resize(n);
        return pts;
    };
    b.param_window = [zoo_idx](std::size_t n) {
        std::vector<std::uint64_t> rows = zoo_idx;
        if (rows.size() > n) rows.resize(n);
        std::vector<std::uint64_t> codes;
        // thresholds cover the point window's column range (k <= 4)
        std::uint64_t jmax = std::min<std::uint64_t>(4, n ? n - 1 : 0);
        for (auto i : rows)
            for (std::uint64_t j = 0; j <= jmax; ++j) codes.push_back(thm5_code(i, j));
        return codes;
    };

    b.declared.vc = 1;
    b.declared.margin_vc = 1;
    b.declared.decidable_pert = true;
    b.declared.honest_exact_loss = true;
    b.declared.strong_rerm = false;
    b.declared.robust_agnostic_rerm = false;
    b.declared.agnostic_standard_loss = true;
    return b;
}

// ---------------------------------------------------------------------------
// ex1: the RER-only perturbation type
// ---------------------------------------------------------------------------

namespace {

Label ex1_eval(const Ex1Param& p, Point x) { return (x == p.a || x == p.b) ? 1 : 0; }

std::uint64_t ex1_partner(Point x) { return x % 2 == 0 ? x + 1 : x - 1; }

}  // namespace

ConstructionBundle ex1_construction(const Zoo& zoo, BundleMode mode) {
    auto truth = make_truth(zoo, mode);
    const std::string fam = "ex1";

    ConstructionBundle b;
    b.name = fam;
    b.mode = mode;

    b.family.name = fam;
    b.family.repr = Representation::RER;
    b.family.parameter_space = "{a, b}: the indicator of a two-point (or one-point) set";
    b.family.member = [fam](std::uint64_t code) {
        Ex1Param p = ex1_param(code);
        return Predictor{[p](Point x) { return ex1_eval(p, x); }, Provenance::member(fam, code)};
    };

    b.pert.name = fam + "-pert";
    // deliberately no membership decider: the perturbation type is RER only
    b.pert.enumerate = [](Point x, std::uint64_t budget) {
        std::vector<Point> out{x};
        std::uint64_t i = x / 2;
        if (halts_within_memo(i, 0, budget)) out.push_back(ex1_partner(x));
        return out;
    };
    b.pert.finite_set = [truth](Point x) -> std::optional<std::vector<Point>> {
        std::uint64_t i = x / 2;
        if (truth->step_on_zero(i)) return std::vector<Point>{x, ex1_partner(x)};
        if (truth->certified_loops(i)) return std::vector<Point>{x};
        return std::nullopt;
    };

    if (mode == BundleMode::OracleBacked) {
        b.exact_robust_loss = [truth](const Predictor& h, Point x, Label y) -> Label {
            if (h(x) != y) return 1;
            std::uint64_t i = x / 2;
            if (truth->step_on_zero(i).has_value()) return h(ex1_partner(x)) != y;
            return 0;
        };
        b.exact_margin = [truth, fam, member = b.family.member](std::uint64_t code,
                                                                Point x) -> Label {
            Predictor h = member(code);
            std::uint64_t i = x / 2;
            if (!truth->step_on_zero(i).has_value()) return 0;
            return h(x) != h(ex1_partner(x));
        };
    } else {
        b.exact_robust_loss = [](const Predictor&, Point, Label) -> Label {
            throw NoExactEvaluator("ex1: no exact robust loss without ground truth");
        };
        b.exact_margin = [](std::uint64_t, Point) -> Label {
            throw NoExactEvaluator("ex1: no exact margin without ground truth");
        };
    }

    b.exact_attack = [finite = b.pert.finite_set](const Predictor& h, Point x,
                                                  Label y) -> std::optional<AttackResult> {
        if (auto set = finite(x)) {
            for (Point z : *set)
                if (h(z) != y) return AttackResult{{{z, y}}};
            return AttackResult{std::nullopt};
        }
        return std::nullopt;
    };

    auto candidates = [](const LabeledSample& s) {
        std::vector<std::uint64_t> values;
        for (const auto& ex : s) {
            values.push_back(ex.point);
            values.push_back(ex1_partner(ex.point));
        }
        dedupe_keep_order(values);
        std::uint64_t fresh = 0;
        for (auto v : values) fresh = std::max(fresh, v + 1);
        values.push_back(fresh);
        values.push_back(fresh + 1);
        std::vector<std::uint64_t> codes;
        for (std::size_t i = 0; i < values.size(); ++i)
            for (std::size_t j = i; j < values.size(); ++j)
                codes.push_back(ex1_code(values[i], values[j]));
        dedupe_keep_order(codes);
        return codes;
    };
    b.erm_candidates = candidates;
    if (mode == BundleMode::OracleBacked) b.rerm_candidates = candidates;

    b.distribution = [](std::uint64_t i, std::uint64_t) { return ex1_distribution(i); };

    auto zoo_idx = zoo_index_list(zoo);
    b.point_window = [zoo_idx](std::size_t n) {
        std::vector<Point> pts;
        for (auto z : zoo_idx) {
            pts.push_back(2 * z);
            pts.push_back(2 * z + 1);
        }
        if (pts.size() > n) pts.resize(n);
        return pts;
    };
    b.param_window = [zoo_idx](std::size_t n) {
        std::vector<std::uint64_t> values;
        for (auto z : zoo_idx) {
            values.push_back(2 * z);
            values.push_back(2 * z + 1);
        }
        dedupe_keep_order(values);
        if (values.size() > n) values.resize(n);
        std::vector<std::uint64_t> codes;
        for (std::size_t i = 0; i < values.size(); ++i)
            for (std::size_t j = i; j < values.size(); ++j)
                codes.push_back(ex1_code(values[i], values[j]));
        dedupe_keep_order(codes);
        return codes;
    };

    b.declared.vc = 2;
    b.declared.decidable_pert = false;  // RER only, by construction
    b.declared.honest_exact_loss = false;
    b.declared.strong_rerm = false;
    b.declared.robust_agnostic_rerm = mode == BundleMode::OracleBacked;
    return b;
}

ConstructionBundle bundle_by_name(const std::string& name, const Zoo& zoo, BundleMode mode) {
    if (name == "thm2") return thm2_construction(zoo, mode);
    if (name == "thm3") return thm3_construction(zoo, mode);
    if (name == "thm4") return thm4_construction(zoo, mode);
    if (name == "thm5") return thm5_construction(zoo, mode);
    if (name == "ex1") return ex1_construction(zoo, mode);
    throw std::invalid_argument("unknown bundle: " + name);
}

std::vector<std::string> bundle_names() { return {"thm2", "thm3", "thm4", "thm5", "ex1"}; }

}  // namespace rcpac
