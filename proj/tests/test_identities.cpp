#include <doctest.h>

#include <json.hpp>

#include "charlier/charlier.hpp"
#include "charlier/identities.hpp"
#include "support.hpp"

using namespace charlier;
using charlier::testing::rebase;
using charlier::testing::rename;
using charlier::testing::Renaming;

namespace {

/// sum_{|d| = n} f_d * X^d over `target`, where the series variables of f
/// map to the trailing indeterminates `tags` of target.
Polynomial graded_part(const TruncatedSeries& f, std::uint32_t n, const ParamSetPtr& target,
                       const std::vector<std::string>& tags)
{
    Polynomial out(target);
    for (const auto& [d, c] : f.terms()) {
        if (total_degree(d) != n) {
            continue;
        }
        auto term = rebase(c, target);
        for (std::size_t v = 0; v < d.size(); ++v) {
            term *= pow(Polynomial::variable(target, tags[v]), d[v]);
        }
        out += term;
    }
    return out;
}

Bindings bind(const std::vector<std::string>& names, const std::vector<std::string>& roles,
              const std::function<Polynomial(const ParamSetPtr&, const std::string&)>& value)
{
    auto params = make_symbols(names);
    std::map<std::string, Polynomial, std::less<>> values;
    for (const auto& role : roles) {
        values.emplace(role, value(params, role));
    }
    return Bindings(params, std::move(values));
}

} // namespace

TEST_CASE("registered identities verify symbolically")
{
    const std::vector<std::pair<std::string, int>> cases{
        {"egf", 10},          {"bilinear", 6},       {"trilinear", 4},
        {"carlitz", 4},       {"bilinear-general", 4}, {"derangement-bilinear", 6},
        {"derangement-trilinear", 5}, {"derangement-bilinear-general", 4}, {"multilinear", 6}};
    for (const auto& [id, order] : cases) {
        CAPTURE(id);
        const auto r = verify(id, order);
        CHECK(r.verified());
        CHECK(r.degree_matches.size() == static_cast<std::size_t>(order) + 1);
        CHECK_FALSE(r.first_failing_degree().has_value());
    }
    CHECK(verify("multilinear", 3, {}, 3).verified());
}

TEST_CASE("egf coefficients")
{
    const auto lhs = find_identity("egf").side(Side::lhs, 3);
    const auto p = lhs.params();
    const auto a = Polynomial::variable(p, "a");
    const auto r = Polynomial::variable(p, "r");
    CHECK(coefficient(lhs, {1}) == a + r);
    CHECK(coefficient(lhs, {2}) == (r * r + ExactRational(2) * a * r + a * a + a) * ExactRational(1, 2));
    for (int n = 0; n <= 3; ++n) {
        CHECK(coefficient(lhs, {static_cast<std::uint32_t>(n)}) * ExactRational(factorial(n)) ==
              charlier_C(n, a, r));
    }
}

TEST_CASE("registry")
{
    const auto ids = identity_ids();
    CHECK(ids.size() == 9);
    CHECK_THROWS_AS(find_identity("nosuch"), std::out_of_range);
    CHECK_THROWS_AS(verify("egf", 31), enumeration_budget_error);
    VerifyOptions forced;
    forced.force = true;
    CHECK(verify("egf", 31, forced).verified());
    CHECK_THROWS_AS(verify("egf", -1), algebra_error);
    CHECK(find_identity("multilinear", 3).roles.size() == 9);
}

TEST_CASE("multilinear k=2 matches bilinear under renaming")
{
    const auto bil = find_identity("bilinear");
    const auto ml = multilinear_identity(2);
    const auto target = make_symbols({"a", "b", "r", "s"});
    const auto one = Polynomial::constant(target, 1);
    const Renaming images{{"a1", Polynomial::variable(target, "a")},
                          {"a2", Polynomial::variable(target, "b")},
                          {"r1", Polynomial::variable(target, "r")},
                          {"r2", Polynomial::variable(target, "s")},
                          {"x12", one}};
    for (Side side : {Side::lhs, Side::rhs}) {
        const auto m = ml.side(side, 6);
        const auto b = bil.side(side, 6);
        for (std::uint32_t n = 0; n <= 6; ++n) {
            CHECK(rename(coefficient(m, {n}), images, target) == rebase(coefficient(b, {n}), target));
        }
    }
}

TEST_CASE("multilinear k=3 matches trilinear")
{
    const auto tri = find_identity("trilinear");
    const auto ml = multilinear_identity(3);
    const auto target = make_symbols({"a", "b", "c", "r", "s", "t", "X", "Y", "Z"});
    auto v = [&](const char* n) { return Polynomial::variable(target, n); };
    const Renaming images{{"a1", v("a")}, {"a2", v("b")}, {"a3", v("c")},
                          {"r1", v("r")}, {"r2", v("s")}, {"r3", v("t")},
                          {"x12", v("X")}, {"x13", v("Y")}, {"x23", v("Z")}};
    for (Side side : {Side::lhs, Side::rhs}) {
        const auto m = ml.side(side, 4);
        const auto t = tri.side(side, 4);
        for (std::uint32_t n = 0; n <= 4; ++n) {
            CHECK(rename(coefficient(m, {n}), images, target) ==
                  graded_part(t, n, target, {"X", "Y", "Z"}));
        }
    }
}

TEST_CASE("carlitz is the x = 0 slice of trilinear")
{
    const auto tri = find_identity("trilinear");
    const auto car = find_identity("carlitz");
    for (Side side : {Side::lhs, Side::rhs}) {
        const auto t = tri.side(side, 4);
        const auto c = car.side(side, 4);
        for (std::uint32_t m = 0; m <= 4; ++m) {
            for (std::uint32_t n = 0; m + n <= 4; ++n) {
                CHECK(coefficient(c, {m, n}) == coefficient(t, {0, m, n}));
            }
        }
    }
}

TEST_CASE("bilinear-general slices")
{
    const auto gen = find_identity("bilinear-general");
    const auto bil = find_identity("bilinear");
    const auto tri = find_identity("trilinear");
    // c = 0, t = 1 in the trilinear formula.
    const auto b = bind({"a", "b", "r", "s"}, tri.roles, [](const ParamSetPtr& p, const std::string& role) {
        if (role == "c") {
            return Polynomial(p);
        }
        if (role == "t") {
            return Polynomial::constant(p, 1);
        }
        return Polynomial::variable(p, role);
    });
    for (Side side : {Side::lhs, Side::rhs}) {
        const auto g = gen.side(side, 4);
        const auto bl = bil.side(side, 4);
        for (std::uint32_t l = 0; l <= 4; ++l) {
            CHECK(coefficient(g, {l, 0, 0}) == coefficient(bl, {l}));
        }
        CHECK(tri.build(side, b, 4, {}) == g);
    }
}

TEST_CASE("derangement identities are substitutions")
{
    // (a, b, r, s) -> (alpha, beta, -alpha, -beta)
    const auto two = bind({"alpha", "beta"}, {"a", "b", "r", "s"},
                          [](const ParamSetPtr& p, const std::string& role) {
                              if (role == "a") return Polynomial::variable(p, "alpha");
                              if (role == "b") return Polynomial::variable(p, "beta");
                              if (role == "r") return -Polynomial::variable(p, "alpha");
                              return -Polynomial::variable(p, "beta");
                          });
    const auto three = bind({"alpha", "beta", "gamma"}, {"a", "b", "c", "r", "s", "t"},
                            [](const ParamSetPtr& p, const std::string& role) {
                                const std::map<std::string, std::string> greek{
                                    {"a", "alpha"}, {"b", "beta"}, {"c", "gamma"},
                                    {"r", "alpha"}, {"s", "beta"}, {"t", "gamma"}};
                                const auto v = Polynomial::variable(p, greek.at(role));
                                return role < "d" ? v : -v;
                            });
    for (Side side : {Side::lhs, Side::rhs}) {
        CHECK(build_bilinear_side(side, two, 6) ==
              find_identity("derangement-bilinear").side(side, 6));
        CHECK(build_bilinear_general_side(side, two, 4) ==
              find_identity("derangement-bilinear-general").side(side, 4));
        CHECK(build_carlitz_side(side, three, 5) ==
              find_identity("derangement-trilinear").side(side, 5));
    }

    // The LHS coefficients are products of derangement polynomials.
    const auto lhs = find_identity("derangement-bilinear").side(Side::lhs, 5);
    const auto p = lhs.params();
    for (int n = 0; n <= 5; ++n) {
        const Renaming to_alpha{{"alpha", Polynomial::variable(p, "alpha")}};
        const Renaming to_beta{{"alpha", Polynomial::variable(p, "beta")}};
        const auto dn = derangement_poly(n);
        CHECK(coefficient(lhs, {static_cast<std::uint32_t>(n)}) * ExactRational(factorial(n)) ==
              rename(dn, to_alpha, p) * rename(dn, to_beta, p));
    }
}

TEST_CASE("random mode agrees with symbolic evaluation")
{
    for (const auto& id : {"bilinear", "trilinear", "derangement-trilinear"}) {
        CAPTURE(id);
        const auto spec = find_identity(id);
        VerifyOptions opts;
        opts.mode = VerifyMode::random;
        opts.points = 3;
        opts.seed = 99;
        const auto r = verify(spec, 3, opts);
        CHECK(r.verified());
        REQUIRE(r.point_values.size() == 3);
        const auto sym = spec.side(Side::lhs, 3);
        for (const auto& pt : r.point_values) {
            const auto at = spec.build(Side::lhs, Bindings::at_point(spec.roles, pt), 3, {});
            for (const auto& [d, c] : sym.terms()) {
                CHECK(at.coefficient(d).constant_term() == poly_eval(c, pt));
            }
        }
    }
    VerifyOptions zero;
    zero.mode = VerifyMode::random;
    zero.points = 0;
    CHECK_THROWS_AS(verify("egf", 2, zero), algebra_error);
}

TEST_CASE("dropping the exponential prefactor is detected at degree 1")
{
    VerifyOptions opts;
    opts.build.drop_exp_prefactor = true;
    for (const auto& id : identity_ids()) {
        CAPTURE(id);
        const auto r = verify(id, 3, opts);
        CHECK_FALSE(r.verified());
        CHECK(r.first_failing_degree() == 1);
        CHECK(r.degree_matches[0]);
        CHECK_FALSE(r.mismatches.empty());
    }
    opts.mode = VerifyMode::random;
    opts.points = 2;
    const auto r = verify("trilinear", 3, opts);
    CHECK(r.first_failing_degree() == 1);
    REQUIRE_FALSE(r.mismatches.empty());
    CHECK(r.mismatches.front().point.has_value());
}

TEST_CASE("json-like report")
{
    VerifyOptions opts;
    opts.mode = VerifyMode::random;
    opts.points = 2;
    opts.seed = 5;
    const auto a = verify("bilinear", 3, opts);
    const auto b = verify("bilinear", 3, opts);
    CHECK(to_json(a) == to_json(b));
    CHECK(to_text(a) == to_text(b));

    const auto doc = nlohmann::json::parse(to_json(a));
    CHECK(doc["identity"] == "bilinear");
    CHECK(doc["mode"] == "random");
    CHECK(doc["order"] == 3);
    CHECK(doc["verified"] == true);
    CHECK(doc["seed"] == 5);
    CHECK(doc["points"] == 2);
    CHECK_FALSE(doc.contains("elapsed_ms"));
    CHECK(nlohmann::json::parse(to_json(a, true)).contains("elapsed_ms"));

    VerifyOptions broken;
    broken.build.drop_exp_prefactor = true;
    const auto bad = nlohmann::json::parse(to_json(verify("egf", 2, broken)));
    CHECK(bad["verified"] == false);
    REQUIRE(bad["mismatches"].size() > 0);
    CHECK(bad["mismatches"][0]["monomial"] == "x");
}

TEST_CASE("oracles")
{
    const auto c = oracle_compare(OracleKind::config, 2, 5);
    CHECK(c.verified());
    CHECK(c.degree_matches.size() == 6);
    const auto h2 = oracle_compare(OracleKind::h, 2, 3);
    CHECK(h2.verified());
    const auto h3 = oracle_compare(OracleKind::h, 3, 2);
    CHECK(h3.verified());
    CHECK_THROWS_AS(oracle_compare(OracleKind::h, 3, 9), enumeration_budget_error);
}
