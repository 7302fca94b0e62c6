#include "rcpac/dimensions.hpp"

#include <algorithm>
#include <set>

#include "rcpac/parallel.hpp"

namespace rcpac {

namespace {

// member restrictions to a <=64-point window, one bit per window position
std::vector<std::uint64_t> window_patterns(const std::vector<Predictor>& members,
                                           const std::vector<Point>& window) {
    if (window.size() > 64)
        throw std::invalid_argument("dimension brute force: window larger than 64 points");
    std::set<std::uint64_t> distinct;
    for (const auto& h : members) {
        std::uint64_t bits = 0;
        for (std::size_t p = 0; p < window.size(); ++p)
            if (h(window[p]) == 1) bits |= std::uint64_t(1) << p;
        distinct.insert(bits);
    }
    return {distinct.begin(), distinct.end()};
}

// does `patterns` realize all 2^|mask| labelings on the positions of mask?
bool shattered(const std::vector<std::uint64_t>& patterns, std::uint64_t mask, int d) {
    std::set<std::uint64_t> seen;
    const std::uint64_t want = std::uint64_t(1) << d;
    for (auto p : patterns) {
        seen.insert(p & mask);
        if (seen.size() == want) return true;
    }
    return false;
}

int max_shattered_from(const std::vector<std::uint64_t>& patterns,
                       const std::vector<std::uint64_t>& pair_ok, int w, std::uint64_t mask,
                       std::uint64_t candidates, int depth) {
    int best = depth;
    for (int next = 0; next < w; ++next) {
        std::uint64_t bit = std::uint64_t(1) << next;
        if (!(candidates & bit)) continue;
        std::uint64_t extended = mask | bit;
        if (!shattered(patterns, extended, depth + 1)) continue;
        // future points must pair-shatter with everything chosen so far
        std::uint64_t next_candidates = candidates & pair_ok[next] &
                                        ~((bit << 1) - 1);  // strictly increasing positions
        best = std::max(best, max_shattered_from(patterns, pair_ok, w, extended, next_candidates,
                                                 depth + 1));
    }
    return best;
}

int vc_from_patterns(const std::vector<std::uint64_t>& patterns, int w) {
    if (w == 0) return 0;
    // pairwise shatter graph prunes the subset search
    std::vector<std::uint64_t> pair_ok(w, 0);
    std::vector<bool> singleton(w, false);
    for (int i = 0; i < w; ++i)
        singleton[i] = shattered(patterns, std::uint64_t(1) << i, 1);
    for (int i = 0; i < w; ++i) {
        if (!singleton[i]) continue;
        for (int j = i + 1; j < w; ++j) {
            if (!singleton[j]) continue;
            std::uint64_t mask = (std::uint64_t(1) << i) | (std::uint64_t(1) << j);
            if (shattered(patterns, mask, 2)) {
                pair_ok[i] |= std::uint64_t(1) << j;
                pair_ok[j] |= std::uint64_t(1) << i;
            }
        }
    }
    int best = 0;
    const bool par = parallel::enabled();
#pragma omp parallel for schedule(dynamic) reduction(max : best) if (par)
    for (int first = 0; first < w; ++first) {
        if (!singleton[first]) continue;
        std::uint64_t bit = std::uint64_t(1) << first;
        std::uint64_t candidates = pair_ok[first] & ~((bit << 1) - 1);
        int sub = max_shattered_from(patterns, pair_ok, w, bit, candidates, 1);
        best = std::max(best, sub);
    }
    return best;
}

}  // namespace

int vc_dimension_bruteforce(const std::vector<Predictor>& members,
                            const std::vector<Point>& window) {
    if (members.empty() || window.empty()) return 0;
    auto patterns = window_patterns(members, window);
    return vc_from_patterns(patterns, static_cast<int>(window.size()));
}

int margin_vc_bruteforce(const ConstructionBundle& b, const std::vector<Point>& window,
                         const std::vector<std::uint64_t>& params) {
    std::vector<Predictor> indicators;
    indicators.reserve(params.size());
    for (auto code : params) {
        indicators.push_back(Predictor{
            [&b, code](Point x) { return b.exact_margin(code, x); }, Provenance::opaque()});
    }
    return vc_dimension_bruteforce(indicators, window);
}

// ---------------------------------------------------------------------------
// shatterability
// ---------------------------------------------------------------------------

namespace {

std::optional<std::vector<Point>> finite_of(const PerturbationType& u, Point x) {
    if (!u.finite_set) return std::nullopt;
    return u.finite_set(x);
}

// exact intersection emptiness / witness when one side is finite and the
// other is finite or decidable
struct IntersectResult {
    bool exact = false;
    std::optional<Point> common;  // smallest common element when exact
};

IntersectResult intersect_exact(const PerturbationType& u, Point a,
                                const std::optional<std::vector<Point>>& fa, Point b,
                                const std::optional<std::vector<Point>>& fb) {
    auto scan = [&](const std::vector<Point>& fin, Point other,
                    const std::optional<std::vector<Point>>& fother) -> IntersectResult {
        std::optional<Point> common;
        for (Point p : fin) {
            bool inside;
            if (fother)
                inside = std::find(fother->begin(), fother->end(), p) != fother->end();
            else
                inside = u.member(other, p);
            if (inside && (!common || p < *common)) common = p;
        }
        return {true, common};
    };
    if (fa && fb) return scan(*fa, b, fb);
    if (fa && u.member) return scan(*fa, b, std::nullopt);
    if (fb && u.member) return scan(*fb, a, std::nullopt);
    return {false, std::nullopt};
}

// alternating bounded enumeration, first common element in dovetail order
std::optional<Point> intersect_bounded(const PerturbationType& u, Point a, Point b,
                                       std::uint64_t budget) {
    if (!u.enumerate) return std::nullopt;
    auto ea = u.enumerate(a, budget);
    auto eb = u.enumerate(b, budget);
    std::set<Point> sa(ea.begin(), ea.end());
    std::set<Point> sb(eb.begin(), eb.end());
    for (std::size_t k = 0; k < std::max(ea.size(), eb.size()); ++k) {
        if (k < ea.size() && sb.count(ea[k])) return ea[k];
        if (k < eb.size() && sa.count(eb[k])) return eb[k];
    }
    return std::nullopt;
}

}  // namespace

ShatterableOutcome shatterable_check(const PerturbationType& u, const PairList& z,
                                     std::uint64_t budget) {
    const std::size_t n = z.pairs.size();
    std::vector<Point> found(n);
    bool unresolved = false;

    std::vector<std::optional<std::vector<Point>>> f0(n), f1(n);
    for (std::size_t i = 0; i < n; ++i) {
        f0[i] = finite_of(u, z.pairs[i].first);
        f1[i] = finite_of(u, z.pairs[i].second);
    }

    // per-pair intersection witnesses
    for (std::size_t i = 0; i < n; ++i) {
        auto exact = intersect_exact(u, z.pairs[i].first, f0[i], z.pairs[i].second, f1[i]);
        if (exact.exact) {
            if (!exact.common) return {ShatterableOutcome::Kind::NotShatterable, {}};
            found[i] = *exact.common;
            continue;
        }
        auto common = intersect_bounded(u, z.pairs[i].first, z.pairs[i].second, budget);
        if (!common) {
            unresolved = true;
            continue;
        }
        found[i] = *common;
    }

    // cross-pair disjointness of U(z_i^1) and U(z_j^0)
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            auto exact = intersect_exact(u, z.pairs[i].second, f1[i], z.pairs[j].first, f0[j]);
            if (exact.exact) {
                if (exact.common) return {ShatterableOutcome::Kind::NotShatterable, {}};
                continue;
            }
            if (intersect_bounded(u, z.pairs[i].second, z.pairs[j].first, budget))
                return {ShatterableOutcome::Kind::NotShatterable, {}};
            unresolved = true;  // no violation found, none certified either
        }
    }
    if (unresolved) return {ShatterableOutcome::Kind::ExceededBudget, {}};
    return {ShatterableOutcome::Kind::ShatterableWith, found};
}

int robust_shattering_bruteforce(const ConstructionBundle& b, const std::vector<Point>& window,
                                 const std::vector<std::uint64_t>& params, int max_k,
                                 std::uint64_t budget) {
    if (params.empty() || window.empty()) return 0;
    // candidate pairs (z0, z1), z0 <= z1 order not required by the notion
    std::vector<std::pair<Point, Point>> candidates;
    for (Point a : window)
        for (Point c : window) candidates.push_back({a, c});

    std::vector<std::pair<Point, Point>> chosen;
    std::function<bool(std::size_t, int)> search = [&](std::size_t start, int need) -> bool {
        if (need == 0) {
            PairList z{chosen};
            auto sh = shatterable_check(b.pert, z, budget);
            if (sh.kind != ShatterableOutcome::Kind::ShatterableWith) return false;
            const std::size_t k = chosen.size();
            for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << k); ++bits) {
                Labeling y(k);
                for (std::size_t i = 0; i < k; ++i) y[i] = (bits >> (k - 1 - i)) & 1;
                if (!robustly_realized(b, params, z, y)) return false;
            }
            return true;
        }
        for (std::size_t c = start; c < candidates.size(); ++c) {
            chosen.push_back(candidates[c]);
            if (search(c + 1, need - 1)) {
                chosen.pop_back();
                return true;
            }
            chosen.pop_back();
        }
        return false;
    };

    for (int k = max_k; k >= 1; --k) {
        chosen.clear();
        if (search(0, k)) return k;
    }
    return 0;
}

bool robustly_realized(const ConstructionBundle& b, const std::vector<std::uint64_t>& params,
                       const PairList& z, const Labeling& y) {
    for (auto code : params) {
        Predictor h = b.member(code);
        bool ok = true;
        for (std::size_t i = 0; i < z.pairs.size() && ok; ++i) {
            Point target = y[i] == 0 ? z.pairs[i].first : z.pairs[i].second;
            if (b.exact_robust_loss(h, target, y[i]) != 0) ok = false;
        }
        if (ok) return true;
    }
    return false;
}

// ---------------------------------------------------------------------------
// witnesses
// ---------------------------------------------------------------------------

WitnessFunction vc_witness_bruteforce(std::vector<Predictor> members, std::vector<Point> window,
                                      std::size_t k) {
    if (members.empty()) throw std::invalid_argument("vc witness: no members");
    // precondition: no (k+1)-subset of the window is shattered
    if (vc_dimension_bruteforce(members, window) > static_cast<int>(k))
        throw ShatteredSetExists("vc witness: the window shatters a set of size k+1");

    auto shared_members = std::make_shared<std::vector<Predictor>>(std::move(members));
    WitnessFunction w;
    w.arity = k;
    w.on_points = [shared_members, k](const std::vector<Point>& points) -> Labeling {
        if (points.size() != k + 1)
            throw std::invalid_argument("vc witness: expected k+1 points");
        std::set<std::uint64_t> realized;
        for (const auto& h : *shared_members) {
            std::uint64_t bits = 0;
            for (std::size_t i = 0; i < points.size(); ++i)
                if (h(points[i]) == 1) bits |= std::uint64_t(1) << (points.size() - 1 - i);
            realized.insert(bits);
        }
        for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << points.size()); ++bits) {
            if (!realized.count(bits)) {
                Labeling y(points.size());
                for (std::size_t i = 0; i < points.size(); ++i)
                    y[i] = (bits >> (points.size() - 1 - i)) & 1;
                return y;
            }
        }
        throw ShatteredSetExists("vc witness: all labelings realized on these points");
    };
    return w;
}

WitnessFunction robust_witness_from_vc_witness(WitnessFunction w, PerturbationType u,
                                               std::uint64_t budget) {
    WitnessFunction out;
    out.arity = w.arity;
    out.on_pairs = [w, u, budget](const PairList& z) -> Labeling {
        auto sh = shatterable_check(u, z, budget);
        if (sh.kind != ShatterableOutcome::Kind::ShatterableWith)
            throw WitnessUnavailable(
                "robust witness: pair list does not certify a shatterable set (budget)");
        return w.on_points(sh.points);
    };
    return out;
}

// ---------------------------------------------------------------------------
// the NFL adversary
// ---------------------------------------------------------------------------

NflCertificate nfl_adversary(const Learner& learner, std::size_t m, const PairList& z,
                             const ConstructionBundle& b, std::uint64_t budget) {
    if (m == 0) throw std::invalid_argument("nfl: m must be positive");
    if (z.pairs.size() != 2 * m)
        throw std::invalid_argument("nfl: pair list must have exactly 2m pairs");
    auto sh = shatterable_check(b.pert, z, budget);
    if (sh.kind != ShatterableOutcome::Kind::ShatterableWith)
        throw std::invalid_argument("nfl: pair list does not admit a certified shatterable set");
    const auto& xs = sh.points;

    const std::size_t n = 2 * m;
    const std::uint64_t labelings = std::uint64_t(1) << n;
    std::uint64_t seqs = 1;
    for (std::size_t t = 0; t < m; ++t) seqs *= n;

    for (std::uint64_t jbits = 0; jbits < labelings; ++jbits) {
        Labeling y(n);
        for (std::size_t i = 0; i < n; ++i) y[i] = (jbits >> (n - 1 - i)) & 1;

        LabeledSample support(n);
        for (std::size_t i = 0; i < n; ++i) {
            Point zp = y[i] == 0 ? z.pairs[i].first : z.pairs[i].second;
            support[i] = {zp, y[i]};
        }
        {
            std::set<std::pair<Point, Label>> atoms;
            for (const auto& ex : support) atoms.insert({ex.point, ex.label});
            if (atoms.size() != n)
                throw std::invalid_argument("nfl: induced distribution support collides");
        }

        // run the learner over all sequences; everything reduced is integral
        std::int64_t witness_total = 0;   // sum over sequences of shatter-point errors
        std::int64_t tail_wit = 0;        // sequences with witnessed risk >= 1/8
        std::int64_t exact_total = 0;     // sum of exact robust-loss counts
        std::int64_t tail_exact = 0;
        std::int64_t exact_failures = 0;  // NoExactEvaluator encountered

        const Rational gate(1, 8);
        const bool par = parallel::enabled();
        parallel::ExceptionCollector errors;
#pragma omp parallel for schedule(dynamic, 4) reduction(+ : witness_total, tail_wit, exact_total, tail_exact, exact_failures) if (par)
        for (std::int64_t l = 0; l < static_cast<std::int64_t>(seqs); ++l) {
            errors.run([&, l] {
                LabeledSample seq(m);
                std::uint64_t idx = static_cast<std::uint64_t>(l);
                for (std::size_t t = 0; t < m; ++t) {
                    seq[t] = support[idx % n];
                    idx /= n;
                }
                Predictor h = learner(seq);
                int wit = 0;
                for (std::size_t i = 0; i < n; ++i)
                    if (h(xs[i]) != y[i]) ++wit;
                witness_total += wit;
                if (Rational(wit, static_cast<std::int64_t>(n)) >= gate) ++tail_wit;
                try {
                    int exact = 0;
                    for (std::size_t i = 0; i < n; ++i)
                        if (b.exact_robust_loss(h, support[i].point, support[i].label)) ++exact;
                    exact_total += exact;
                    if (Rational(exact, static_cast<std::int64_t>(n)) >= gate) ++tail_exact;
                } catch (const NoExactEvaluator&) {
                    ++exact_failures;
                }
            });
        }
        errors.rethrow_if_failed();

        Rational bound(witness_total, static_cast<std::int64_t>(seqs * n));
        if (bound >= gate) {
            NflCertificate cert;
            cert.chosen_labeling = y;
            cert.distribution = uniform_on(support);
            cert.witnessed_bound = bound;
            cert.exact_route = exact_failures == 0;
            cert.exact_expectation =
                cert.exact_route ? Rational(exact_total, static_cast<std::int64_t>(seqs * n))
                                 : bound;
            cert.tail_probability =
                Rational(cert.exact_route ? tail_exact : tail_wit,
                         static_cast<std::int64_t>(seqs));
            cert.labeling_index = static_cast<std::size_t>(jbits) + 1;
            cert.shatter_points = xs;
            return cert;
        }
    }
    throw NoQualifyingLabeling{};
}

WitnessFunction witness_from_learner(const Learner& learner, std::size_t m,
                                     const ConstructionBundle& b, std::uint64_t budget) {
    WitnessFunction w;
    w.arity = 2 * m - 1;
    auto bundle = std::make_shared<ConstructionBundle>(b);
    w.on_pairs = [learner, m, bundle, budget](const PairList& z) -> Labeling {
        return nfl_adversary(learner, m, z, *bundle, budget).chosen_labeling;
    };
    return w;
}

}  // namespace rcpac
