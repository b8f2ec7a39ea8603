// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails or overruns its time limit.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "charlier/charlier.hpp"
#include "charlier/configs.hpp"
#include "charlier/identities.hpp"
#include "support.hpp"

using namespace charlier;
using namespace charlier::testing;

namespace {

/// Collects the reasons a criterion failed.
class Check {
public:
    void expect(bool ok, const std::string& what)
    {
        if (!ok) {
            failures_.push_back(what);
        }
    }

    template <typename Fn>
    void timed(double limit_s, const std::string& what, Fn&& fn)
    {
        const auto start = std::chrono::steady_clock::now();
        fn();
        const double s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ostringstream os;
        os << what << " took " << s << " s (limit " << limit_s << " s)";
        expect(s < limit_s, os.str());
    }

    bool ok() const { return failures_.empty(); }
    const std::vector<std::string>& failures() const { return failures_; }

private:
    std::vector<std::string> failures_;
};

void verified(Check& c, const std::string& id, int order, const VerifyOptions& opts = {},
              int k = 2)
{
    const auto r = verify(id, order, opts, k);
    std::ostringstream os;
    os << id << " (" << r.mode << ", order " << order << ") not verified";
    c.expect(r.verified(), os.str());
}

VerifyOptions random_points(int points, std::uint64_t seed)
{
    VerifyOptions o;
    o.mode = VerifyMode::random;
    o.points = points;
    o.seed = seed;
    return o;
}

// --------------------------------------------------------------------------

void ac1(Check& c)
{
    c.timed(1.0, "egf order 10", [&] { verified(c, "egf", 10); });
}

void ac2(Check& c)
{
    c.timed(30.0, "bilinear symbolic", [&] { verified(c, "bilinear", 6); });
    c.timed(30.0, "bilinear random", [&] { verified(c, "bilinear", 8, random_points(20, 7)); });
}

void ac3(Check& c)
{
    verified(c, "multilinear", 6);

    const auto target = make_symbols({"a", "b", "r", "s"});
    const Renaming images{{"a1", Polynomial::variable(target, "a")},
                          {"a2", Polynomial::variable(target, "b")},
                          {"r1", Polynomial::variable(target, "r")},
                          {"r2", Polynomial::variable(target, "s")},
                          {"x12", Polynomial::constant(target, 1)}};
    const auto ml = multilinear_identity(2);
    const auto bil = find_identity("bilinear");
    for (Side side : {Side::lhs, Side::rhs}) {
        const auto m = ml.side(side, 6);
        const auto b = bil.side(side, 6);
        for (std::uint32_t n = 0; n <= 6; ++n) {
            c.expect(rename(coefficient(m, {n}), images, target) ==
                         rebase(coefficient(b, {n}), target),
                     "k=2 differs from bilinear at z^" + std::to_string(n));
        }
    }

    c.timed(300.0, "multilinear k=3 order 4", [&] { verified(c, "multilinear", 4, {}, 3); });
    c.expect(find_identity("multilinear", 3).roles.size() == 9, "k=3 should have nine parameters");
}

void ac4(Check& c)
{
    verified(c, "trilinear", 5, random_points(20, 4));
    verified(c, "trilinear", 4);
}

void ac5(Check& c)
{
    verified(c, "carlitz", 4);
    verified(c, "bilinear-general", 4);
    const auto tri = find_identity("trilinear");
    const auto car = find_identity("carlitz");
    for (Side side : {Side::lhs, Side::rhs}) {
        const auto t = tri.side(side, 4);
        const auto k = car.side(side, 4);
        for (std::uint32_t m = 0; m <= 4; ++m) {
            for (std::uint32_t n = 0; m + n <= 4; ++n) {
                c.expect(coefficient(k, {m, n}) == coefficient(t, {0, m, n}),
                         "carlitz differs from the x=0 slice at y^" + std::to_string(m) + " z^" +
                             std::to_string(n));
            }
        }
    }
}

void ac6(Check& c)
{
    verified(c, "derangement-bilinear", 6);
    verified(c, "derangement-trilinear", 5);
    verified(c, "derangement-bilinear-general", 4);

    const auto params = make_symbols({"alpha", "beta"});
    const auto alpha = Polynomial::variable(params, "alpha");
    const auto beta = Polynomial::variable(params, "beta");
    const Bindings b(params, {{"a", alpha}, {"b", beta}, {"r", -alpha}, {"s", -beta}});
    const auto der = find_identity("derangement-bilinear");
    for (Side side : {Side::lhs, Side::rhs}) {
        c.expect(build_bilinear_side(side, b, 6) == der.side(side, 6),
                 "bilinear under (r,s)->(-alpha,-beta) differs from the derangement formula");
    }
}

void ac7(Check& c)
{
    const std::vector<int> counts{1, 2, 5, 16, 65, 326, 1957, 13700};
    for (int n = 0; n <= 7; ++n) {
        BigInt expected = 0;
        for (int m = 0; m <= n; ++m) {
            expected += binomial(n, m) * factorial(m);
        }
        c.expect(config_count(n) == expected && expected == counts[static_cast<std::size_t>(n)],
                 "configuration count wrong at n=" + std::to_string(n));
    }
    c.timed(60.0, "configuration oracle", [&] {
        const auto r = oracle_compare(OracleKind::config, 2, 7);
        c.expect(r.verified(), "configuration sum differs from C_n");
        c.expect(r.degree_matches.size() == 8, "configuration oracle did not cover n=0..7");
    });
}

void ac8(Check& c)
{
    c.timed(600.0, "H oracle", [&] {
        const auto r2 = oracle_compare(OracleKind::h, 2, 6);
        c.expect(r2.verified() && r2.degree_matches.size() == 7, "H(k=2) oracle failed");
        const auto r3 = oracle_compare(OracleKind::h, 3, 4);
        c.expect(r3.verified() && r3.degree_matches.size() == 5, "H(k=3) oracle failed");
    });
}

void ac9(Check& c)
{
    for (auto [k, nmax] : {std::pair{2, 5}, {3, 3}}) {
        const auto params = multilinear_params(k);
        for (int n = 0; n <= nmax; ++n) {
            auto stream = enumerate_H(k, n);
            int bad_type = 0;
            int bad_weight = 0;
            while (const auto* t = stream.next()) {
                const auto g = superpose(*t);
                for (const auto& comp : components(g)) {
                    bad_type += to_string(classify(comp, *t)) == naive_type(comp) ? 0 : 1;
                }
                bad_weight += tuple_weight(*t, params) == product_of_components(g, params) ? 0 : 1;
            }
            const auto where = "k=" + std::to_string(k) + " n=" + std::to_string(n);
            c.expect(bad_type == 0, "misclassified components at " + where);
            c.expect(bad_weight == 0, "weight not multiplicative at " + where);
        }
    }
}

void ac10(Check& c)
{
    std::mt19937_64 rng(10);
    std::uniform_int_distribution<int> kdist(2, 4);
    std::uniform_int_distribution<int> vdist(1, 8);
    int bad = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const int vertices = vdist(rng);
        const auto d = random_reduced(rng, kdist(rng), vertices);
        const auto ins = random_insertions(rng, d, vertices + 1);
        const auto back = reduce_type3_with_record(expand_type3(d, ins));
        bad += back.reduced == d && back.removed == ins ? 0 : 1;
    }
    c.expect(bad == 0, std::to_string(bad) + " of 500 round trips failed");

    const auto t = figure2_tuple();
    int type3 = 0;
    for (const auto& comp : components(superpose(t))) {
        if (classify(comp, t).kind != ComponentType::Kind::type3) {
            continue;
        }
        ++type3;
        const auto red = reduce_type3_with_record(comp);
        c.expect(expand_type3(red.reduced, red.removed) == comp,
                 "figure 2 component not recovered");
    }
    c.expect(type3 == 1, "figure 2 should have one type-3 component");
}

void ac11(Check& c)
{
    const auto p = make_symbols({"a", "r"});
    const auto a = Polynomial::variable(p, "a");
    const auto r = Polynomial::variable(p, "r");
    for (int n = 0; n <= 10; ++n) {
        Polynomial sum(p);
        for (int k = 0; k <= n; ++k) {
            sum += pow(a, static_cast<unsigned>(k)) * ExactRational(stirling_cycle(n, k));
        }
        c.expect(sum == rising_factorial(a, n), "Stirling sum fails at n=" + std::to_string(n));
    }
    for (int n = 0; n <= 8; ++n) {
        const std::vector<Polynomial> images{a, a + r};
        c.expect(substitute(derangement_poly2(n), images, p) == charlier_C(n, a, r),
                 "C_n != D_n(a,a+r) at n=" + std::to_string(n));
        c.expect(charlier_classical(n, -a, r) == charlier_C(n, a, r),
                 "classical normalization fails at n=" + std::to_string(n));
    }
    const std::vector<int> numbers{1, 0, 1, 2, 9, 44, 265};
    const auto one = Polynomial::constant(p, 1);
    for (int n = 0; n <= 6; ++n) {
        const int want = numbers[static_cast<std::size_t>(n)];
        int brute = 0;
        for_each_permutation(n, [&](const std::vector<int>& perm) {
            brute += fixed_points(perm) == 0 ? 1 : 0;
        });
        c.expect(charlier_C(n, one, -one) == Polynomial::constant(p, want) && brute == want &&
                     poly_eval(derangement_poly(n), {{"alpha", 1}}) == want,
                 "derangement number wrong at n=" + std::to_string(n));
    }
}

void ac12(Check& c)
{
    VerifyOptions opts;
    opts.build.drop_exp_prefactor = true;
    for (const auto& id : identity_ids()) {
        const auto r = verify(id, 3, opts);
        c.expect(!r.verified() && r.first_failing_degree() == 1,
                 "mutated " + id + " not reported at degree 1");
    }
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
        {"AC1 egf identity", ac1},
        {"AC2 bilinear identity", ac2},
        {"AC3 multilinear identity", ac3},
        {"AC4 trilinear identity", ac4},
        {"AC5 carlitz and generalized bilinear", ac5},
        {"AC6 derangement identities", ac6},
        {"AC7 configuration oracle", ac7},
        {"AC8 H oracle", ac8},
        {"AC9 component taxonomy", ac9},
        {"AC10 reduce/expand round trip", ac10},
        {"AC11 structural identities", ac11},
        {"AC12 mutation sensitivity", ac12},
    };
    int failed = 0;
    for (const auto& [name, run] : criteria) {
        Check check;
        const auto start = std::chrono::steady_clock::now();
        try {
            run(check);
        } catch (const std::exception& e) {
            check.expect(false, std::string("exception: ") + e.what());
        }
        const double s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %s (%.2f s)\n", check.ok() ? "PASS" : "FAIL", name.c_str(), s);
        for (const auto& f : check.failures()) {
            std::printf("    %s\n", f.c_str());
        }
        failed += check.ok() ? 0 : 1;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
                criteria.size());
    return failed == 0 ? 0 : 1;
}
