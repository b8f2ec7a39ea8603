#include "charlier/identities.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include <json.hpp>

#include "charlier/charlier.hpp"

namespace charlier {

// ---------------------------------------------------------------------------
// Bindings

Bindings::Bindings(ParamSetPtr params, std::map<std::string, Polynomial, std::less<>> values)
    : params_(std::move(params)), values_(std::move(values))
{
    for (const auto& [role, p] : values_) {
        if (!same_symbols(p.params(), params_)) {
            throw algebra_error("binding for " + role + " lives over another parameter set");
        }
    }
}

Bindings Bindings::symbolic(const std::vector<std::string>& roles)
{
    auto params = make_symbols(roles);
    std::map<std::string, Polynomial, std::less<>> values;
    for (const auto& role : roles) {
        values.emplace(role, Polynomial::variable(params, role));
    }
    return Bindings(std::move(params), std::move(values));
}

Bindings Bindings::at_point(const std::vector<std::string>& roles, const Point& point)
{
    auto params = make_symbols({});
    std::map<std::string, Polynomial, std::less<>> values;
    for (const auto& role : roles) {
        const auto it = point.find(role);
        if (it == point.end()) {
            throw algebra_error("point lacks a value for " + role);
        }
        values.emplace(role, Polynomial::constant(params, it->second));
    }
    return Bindings(std::move(params), std::move(values));
}

const Polynomial& Bindings::operator[](std::string_view role) const
{
    const auto it = values_.find(role);
    if (it == values_.end()) {
        throw algebra_error("no binding for role " + std::string(role));
    }
    return it->second;
}

Polynomial Bindings::constant(const ExactRational& c) const
{
    return Polynomial::constant(params_, c);
}

// ---------------------------------------------------------------------------
// Series construction helpers

namespace {

const SeriesVarsPtr& vars_x()
{
    static const SeriesVarsPtr v = make_symbols({"x"});
    return v;
}

const SeriesVarsPtr& vars_z()
{
    static const SeriesVarsPtr v = make_symbols({"z"});
    return v;
}

const SeriesVarsPtr& vars_yz()
{
    static const SeriesVarsPtr v = make_symbols({"y", "z"});
    return v;
}

const SeriesVarsPtr& vars_xyz()
{
    static const SeriesVarsPtr v = make_symbols({"x", "y", "z"});
    return v;
}

/// Calls fn(d) for every d in N^slots with |d| <= order, by increasing |d|.
template <typename Fn>
void for_each_index(std::size_t slots, int order, Fn&& fn)
{
    Exponents d(slots, 0);
    auto fill = [&](auto&& self, std::size_t pos, int left) -> void {
        if (pos + 1 == slots) {
            d[pos] = static_cast<std::uint32_t>(left);
            fn(static_cast<const Exponents&>(d));
            return;
        }
        for (int v = left; v >= 0; --v) {
            d[pos] = static_cast<std::uint32_t>(v);
            self(self, pos + 1, left - v);
        }
    };
    for (int total = 0; total <= order; ++total) {
        if (slots == 0) {
            if (total == 0) {
                fn(static_cast<const Exponents&>(d));
            }
            continue;
        }
        fill(fill, 0, total);
    }
}

ExactRational inverse_factorials(const Exponents& d)
{
    BigInt denom = 1;
    for (auto v : d) {
        denom *= factorial(static_cast<int>(v));
    }
    return ExactRational(BigInt(1), denom);
}

/// sum_v coeffs[v] * var_v, a series with zero constant term.
TruncatedSeries linear(const SeriesVarsPtr& vars, const Bindings& b, int order,
                       const std::vector<Polynomial>& coeffs)
{
    TruncatedSeries f(vars, b.params(), order);
    for (std::size_t v = 0; v < coeffs.size(); ++v) {
        Exponents e(vars->size(), 0);
        e[v] = 1;
        f.add_term(e, coeffs[v]);
    }
    return f;
}

TruncatedSeries exp_prefactor(const TruncatedSeries& exponent, const BuildOptions& opts)
{
    if (opts.drop_exp_prefactor) {
        return TruncatedSeries::one(exponent.vars(), exponent.params(), exponent.order());
    }
    return series_exp(exponent);
}

/// (1 - u)^-(base + <mask, d>) as a function of the summation index d.
struct NegBinomialFactor {
    Polynomial base;
    std::vector<int> mask;
    std::shared_ptr<const SeriesPowers> u;
};

NegBinomialFactor nb_factor(Polynomial base, std::vector<int> mask, const TruncatedSeries& u)
{
    return {std::move(base), std::move(mask), std::make_shared<const SeriesPowers>(u)};
}

/// sum over d (|d| <= order) of weight(d) * prod_f factor_f(d) * vars^degree_of(d).
/// degree_of(d) must have total degree |d|.
template <typename DegreeFn, typename WeightFn>
TruncatedSeries indexed_sum(const SeriesVarsPtr& vars, const Bindings& b, int order,
                            std::size_t slots, const std::vector<NegBinomialFactor>& factors,
                            DegreeFn&& degree_of, WeightFn&& weight)
{
    TruncatedSeries result(vars, b.params(), order);
    for_each_index(slots, order, [&](const Exponents& d) {
        const Polynomial w = weight(d);
        if (w.is_zero()) {
            return;
        }
        const int rest = order - static_cast<int>(total_degree(d));
        TruncatedSeries term = TruncatedSeries::constant(vars, w, rest);
        for (const auto& f : factors) {
            Polynomial exponent = f.base;
            long extra = 0;
            for (std::size_t s = 0; s < slots; ++s) {
                extra += static_cast<long>(f.mask[s]) * d[s];
            }
            exponent += b.constant(extra);
            term = term * neg_binomial(exponent, *f.u, rest);
        }
        result += shift(term, degree_of(d), order);
    });
    return result;
}

/// Plain sum over d of coefficient(d) * vars^degree_of(d).
template <typename DegreeFn, typename CoeffFn>
TruncatedSeries plain_sum(const SeriesVarsPtr& vars, const Bindings& b, int order,
                          std::size_t slots, DegreeFn&& degree_of, CoeffFn&& coefficient)
{
    TruncatedSeries result(vars, b.params(), order);
    for_each_index(slots, order, [&](const Exponents& d) {
        result.add_term(degree_of(d), coefficient(d));
    });
    return result;
}

const auto identity_degree = [](const Exponents& d) { return d; };

/// Memoized C_m(a, r) for one binding of (a, r).
class CharlierCache {
public:
    CharlierCache(Polynomial a, Polynomial r) : a_(std::move(a)), r_(std::move(r)) {}

    const Polynomial& at(std::size_t m)
    {
        while (values_.size() <= m) {
            values_.push_back(charlier_C(static_cast<int>(values_.size()), a_, r_));
        }
        return values_[m];
    }

private:
    Polynomial a_;
    Polynomial r_;
    std::vector<Polynomial> values_;
};

/// Memoized D_m(alpha) from the brute-force permutation count, pushed
/// through one binding of alpha.
class DerangementCache {
public:
    explicit DerangementCache(Polynomial alpha) : alpha_(std::move(alpha)) {}

    const Polynomial& at(std::size_t m)
    {
        while (values_.size() <= m) {
            const Polynomial d = base(static_cast<int>(values_.size()));
            const std::vector<Polynomial> images{alpha_};
            values_.push_back(substitute(d, images, alpha_.params()));
        }
        return values_[m];
    }

private:
    static Polynomial base(int n)
    {
        static std::mutex mutex;
        static std::vector<Polynomial> table;
        std::lock_guard lock(mutex);
        while (static_cast<int>(table.size()) <= n) {
            table.push_back(derangement_poly(static_cast<int>(table.size())));
        }
        return table[static_cast<std::size_t>(n)];
    }

    Polynomial alpha_;
    std::vector<Polynomial> values_;
};

const std::vector<std::string> kBilinearRoles{"a", "b", "r", "s"};
const std::vector<std::string> kTrilinearRoles{"a", "b", "c", "r", "s", "t"};
const std::vector<std::string> kEgfRoles{"a", "r"};
const std::vector<std::string> kDerangementRoles{"alpha", "beta"};
const std::vector<std::string> kDerangementTrilinearRoles{"alpha", "beta", "gamma"};

} // namespace

// ---------------------------------------------------------------------------
// Multilinear

TruncatedSeries build_multilinear_side(Side side, int k, const Bindings& b, int order,
                                       const BuildOptions& opts)
{
    if (k < 2) {
        throw algebra_error("multilinear identity needs k >= 2");
    }
    if (order < 0) {
        throw algebra_error("order must be non-negative");
    }
    const auto pairs = owner_pairs(k);
    const std::size_t slots = pairs.size();
    const auto& vars = vars_z();
    auto z_degree = [](const Exponents& d) { return Exponents{total_degree(d)}; };
    auto sizes = [&](const Exponents& d) {
        std::vector<std::size_t> n(static_cast<std::size_t>(k) + 1, 0);
        for (std::size_t p = 0; p < slots; ++p) {
            n[static_cast<std::size_t>(pairs[p].i)] += d[p];
            n[static_cast<std::size_t>(pairs[p].j)] += d[p];
        }
        return n;
    };
    auto x_monomial = [&](const Exponents& d) {
        Polynomial m = b.constant(inverse_factorials(d));
        for (std::size_t p = 0; p < slots; ++p) {
            m *= pow(b[x_name(pairs[p])], d[p]);
        }
        return m;
    };

    if (side == Side::lhs) {
        std::vector<CharlierCache> c;
        for (int i = 1; i <= k; ++i) {
            c.emplace_back(b[a_name(i)], b[r_name(i)]);
        }
        return plain_sum(vars, b, order, slots, z_degree, [&](const Exponents& d) {
            const auto n = sizes(d);
            Polynomial w = x_monomial(d);
            for (int i = 1; i <= k; ++i) {
                w *= c[static_cast<std::size_t>(i - 1)].at(n[static_cast<std::size_t>(i)]);
            }
            return w;
        });
    }

    TruncatedSeries pre = TruncatedSeries::one(vars, b.params(), order);
    if (!opts.drop_exp_prefactor) {
        for (const auto& p : pairs) {
            pre = pre * series_exp(linear(vars, b, order,
                                          {b[r_name(p.i)] * b[r_name(p.j)] * b[x_name(p)]}));
        }
    }
    std::vector<NegBinomialFactor> factors;
    std::deque<RisingFactorialTable> rising;
    for (int i = 1; i <= k; ++i) {
        Polynomial u = b.constant(0);
        std::vector<int> mask(slots, 0);
        for (std::size_t p = 0; p < slots; ++p) {
            if (pairs[p].i == i || pairs[p].j == i) {
                const int j = pairs[p].i == i ? pairs[p].j : pairs[p].i;
                u += b[r_name(j)] * b[x_name(pairs[p])];
                mask[p] = 1;
            }
        }
        factors.push_back(nb_factor(b[a_name(i)], std::move(mask), linear(vars, b, order, {u})));
        rising.emplace_back(b[a_name(i)]);
    }
    const TruncatedSeries sum =
        indexed_sum(vars, b, order, slots, factors, z_degree, [&](const Exponents& d) {
            const auto n = sizes(d);
            Polynomial w = x_monomial(d);
            for (int i = 1; i <= k; ++i) {
                w *= rising[static_cast<std::size_t>(i - 1)].at(
                    static_cast<int>(n[static_cast<std::size_t>(i)]));
            }
            return w;
        });
    return pre * sum;
}

TruncatedSeries build_multilinear_side(Side side, int k, int order, const BuildOptions& opts)
{
    return multilinear_identity(k).side(side, order, opts);
}

// ---------------------------------------------------------------------------
// Specializations

TruncatedSeries build_egf_side(Side side, const Bindings& b, int order, const BuildOptions& opts)
{
    const auto& vars = vars_x();
    if (side == Side::lhs) {
        CharlierCache c(b["a"], b["r"]);
        return plain_sum(vars, b, order, 1, identity_degree, [&](const Exponents& d) {
            return c.at(d[0]) * inverse_factorials(d);
        });
    }
    const auto pre = exp_prefactor(linear(vars, b, order, {b["r"]}), opts);
    return pre * neg_binomial(b["a"], linear(vars, b, order, {b.constant(1)}));
}

TruncatedSeries build_bilinear_side(Side side, const Bindings& b, int order,
                                    const BuildOptions& opts)
{
    const auto& vars = vars_x();
    if (side == Side::lhs) {
        CharlierCache ca(b["a"], b["r"]);
        CharlierCache cb(b["b"], b["s"]);
        return plain_sum(vars, b, order, 1, identity_degree, [&](const Exponents& d) {
            return ca.at(d[0]) * cb.at(d[0]) * inverse_factorials(d);
        });
    }
    const auto pre = exp_prefactor(linear(vars, b, order, {b["r"] * b["s"]}), opts);
    const RisingFactorialTable ra(b["a"]);
    const RisingFactorialTable rb(b["b"]);
    const std::vector<NegBinomialFactor> factors{
        nb_factor(b["a"], {1}, linear(vars, b, order, {b["s"]})),
        nb_factor(b["b"], {1}, linear(vars, b, order, {b["r"]})),
    };
    return pre * indexed_sum(vars, b, order, 1, factors, identity_degree, [&](const Exponents& d) {
               const int n = static_cast<int>(d[0]);
               return ra.at(n) * rb.at(n) * inverse_factorials(d);
           });
}

TruncatedSeries build_trilinear_side(Side side, const Bindings& b, int order,
                                     const BuildOptions& opts)
{
    const auto& vars = vars_xyz();
    if (side == Side::lhs) {
        CharlierCache ca(b["a"], b["r"]);
        CharlierCache cb(b["b"], b["s"]);
        CharlierCache cc(b["c"], b["t"]);
        return plain_sum(vars, b, order, 3, identity_degree, [&](const Exponents& d) {
            const auto [l, m, n] = std::tuple{d[0], d[1], d[2]};
            return ca.at(l + m) * cb.at(l + n) * cc.at(m + n) * inverse_factorials(d);
        });
    }
    const auto pre = exp_prefactor(
        linear(vars, b, order, {b["r"] * b["s"], b["r"] * b["t"], b["s"] * b["t"]}), opts);
    const RisingFactorialTable ra(b["a"]);
    const RisingFactorialTable rb(b["b"]);
    const RisingFactorialTable rc(b["c"]);
    const auto zero = b.constant(0);
    const std::vector<NegBinomialFactor> factors{
        nb_factor(b["a"], {1, 1, 0}, linear(vars, b, order, {b["s"], b["t"], zero})),
        nb_factor(b["b"], {1, 0, 1}, linear(vars, b, order, {b["r"], zero, b["t"]})),
        nb_factor(b["c"], {0, 1, 1}, linear(vars, b, order, {zero, b["r"], b["s"]})),
    };
    return pre * indexed_sum(vars, b, order, 3, factors, identity_degree, [&](const Exponents& d) {
               const auto [l, m, n] = std::tuple{static_cast<int>(d[0]), static_cast<int>(d[1]),
                                                 static_cast<int>(d[2])};
               return ra.at(l + m) * rb.at(l + n) * rc.at(m + n) * inverse_factorials(d);
           });
}

TruncatedSeries build_carlitz_side(Side side, const Bindings& b, int order,
                                   const BuildOptions& opts)
{
    const auto& vars = vars_yz();
    if (side == Side::lhs) {
        CharlierCache ca(b["a"], b["r"]);
        CharlierCache cb(b["b"], b["s"]);
        CharlierCache cc(b["c"], b["t"]);
        return plain_sum(vars, b, order, 2, identity_degree, [&](const Exponents& d) {
            return ca.at(d[0]) * cb.at(d[1]) * cc.at(d[0] + d[1]) * inverse_factorials(d);
        });
    }
    const auto pre =
        exp_prefactor(linear(vars, b, order, {b["r"] * b["t"], b["s"] * b["t"]}), opts);
    const RisingFactorialTable ra(b["a"]);
    const RisingFactorialTable rb(b["b"]);
    const RisingFactorialTable rc(b["c"]);
    const auto zero = b.constant(0);
    const std::vector<NegBinomialFactor> factors{
        nb_factor(b["a"], {1, 0}, linear(vars, b, order, {b["t"], zero})),
        nb_factor(b["b"], {0, 1}, linear(vars, b, order, {zero, b["t"]})),
        nb_factor(b["c"], {1, 1}, linear(vars, b, order, {b["r"], b["s"]})),
    };
    return pre * indexed_sum(vars, b, order, 2, factors, identity_degree, [&](const Exponents& d) {
               const int m = static_cast<int>(d[0]);
               const int n = static_cast<int>(d[1]);
               return ra.at(m) * rb.at(n) * rc.at(m + n) * inverse_factorials(d);
           });
}

TruncatedSeries build_bilinear_general_side(Side side, const Bindings& b, int order,
                                            const BuildOptions& opts)
{
    const auto& vars = vars_xyz();
    if (side == Side::lhs) {
        CharlierCache ca(b["a"], b["r"]);
        CharlierCache cb(b["b"], b["s"]);
        return plain_sum(vars, b, order, 3, identity_degree, [&](const Exponents& d) {
            return ca.at(d[0] + d[1]) * cb.at(d[0] + d[2]) * inverse_factorials(d);
        });
    }
    const auto one = b.constant(1);
    const auto pre = exp_prefactor(linear(vars, b, order, {b["r"] * b["s"], b["r"], b["s"]}), opts);
    const RisingFactorialTable ra(b["a"]);
    const RisingFactorialTable rb(b["b"]);
    const auto zero = b.constant(0);
    const std::vector<NegBinomialFactor> factors{
        nb_factor(b["a"], {1}, linear(vars, b, order, {b["s"], one, zero})),
        nb_factor(b["b"], {1}, linear(vars, b, order, {b["r"], zero, one})),
    };
    auto x_only = [](const Exponents& d) { return Exponents{d[0], 0, 0}; };
    return pre * indexed_sum(vars, b, order, 1, factors, x_only, [&](const Exponents& d) {
               const int l = static_cast<int>(d[0]);
               return ra.at(l) * rb.at(l) * inverse_factorials(d);
           });
}

TruncatedSeries build_derangement_side(Side side, const Bindings& b, int order,
                                       const BuildOptions& opts)
{
    const auto& vars = vars_x();
    const auto& alpha = b["alpha"];
    const auto& beta = b["beta"];
    if (side == Side::lhs) {
        DerangementCache da(alpha);
        DerangementCache db(beta);
        return plain_sum(vars, b, order, 1, identity_degree, [&](const Exponents& d) {
            return da.at(d[0]) * db.at(d[0]) * inverse_factorials(d);
        });
    }
    const auto pre = exp_prefactor(linear(vars, b, order, {alpha * beta}), opts);
    const RisingFactorialTable ra(alpha);
    const RisingFactorialTable rb(beta);
    const std::vector<NegBinomialFactor> factors{
        nb_factor(alpha, {1}, linear(vars, b, order, {-beta})),
        nb_factor(beta, {1}, linear(vars, b, order, {-alpha})),
    };
    return pre * indexed_sum(vars, b, order, 1, factors, identity_degree, [&](const Exponents& d) {
               const int n = static_cast<int>(d[0]);
               return ra.at(n) * rb.at(n) * inverse_factorials(d);
           });
}

TruncatedSeries build_derangement_trilinear_side(Side side, const Bindings& b, int order,
                                                 const BuildOptions& opts)
{
    const auto& vars = vars_yz();
    const auto& alpha = b["alpha"];
    const auto& beta = b["beta"];
    const auto& gamma = b["gamma"];
    if (side == Side::lhs) {
        DerangementCache da(alpha);
        DerangementCache db(beta);
        DerangementCache dc(gamma);
        return plain_sum(vars, b, order, 2, identity_degree, [&](const Exponents& d) {
            return da.at(d[0]) * db.at(d[1]) * dc.at(d[0] + d[1]) * inverse_factorials(d);
        });
    }
    const auto pre = exp_prefactor(linear(vars, b, order, {alpha * gamma, beta * gamma}), opts);
    const RisingFactorialTable ra(alpha);
    const RisingFactorialTable rb(beta);
    const RisingFactorialTable rc(gamma);
    const auto zero = b.constant(0);
    const std::vector<NegBinomialFactor> factors{
        nb_factor(alpha, {1, 0}, linear(vars, b, order, {-gamma, zero})),
        nb_factor(beta, {0, 1}, linear(vars, b, order, {zero, -gamma})),
        nb_factor(gamma, {1, 1}, linear(vars, b, order, {-alpha, -beta})),
    };
    return pre * indexed_sum(vars, b, order, 2, factors, identity_degree, [&](const Exponents& d) {
               const int m = static_cast<int>(d[0]);
               const int n = static_cast<int>(d[1]);
               return ra.at(m) * rb.at(n) * rc.at(m + n) * inverse_factorials(d);
           });
}

TruncatedSeries build_derangement_bilinear_general_side(Side side, const Bindings& b, int order,
                                                        const BuildOptions& opts)
{
    const auto& vars = vars_xyz();
    const auto& alpha = b["alpha"];
    const auto& beta = b["beta"];
    if (side == Side::lhs) {
        DerangementCache da(alpha);
        DerangementCache db(beta);
        return plain_sum(vars, b, order, 3, identity_degree, [&](const Exponents& d) {
            return da.at(d[0] + d[1]) * db.at(d[0] + d[2]) * inverse_factorials(d);
        });
    }
    const auto one = b.constant(1);
    const auto zero = b.constant(0);
    const auto pre = exp_prefactor(linear(vars, b, order, {alpha * beta, -alpha, -beta}), opts);
    const RisingFactorialTable ra(alpha);
    const RisingFactorialTable rb(beta);
    const std::vector<NegBinomialFactor> factors{
        nb_factor(alpha, {1}, linear(vars, b, order, {-beta, one, zero})),
        nb_factor(beta, {1}, linear(vars, b, order, {-alpha, zero, one})),
    };
    auto x_only = [](const Exponents& d) { return Exponents{d[0], 0, 0}; };
    return pre * indexed_sum(vars, b, order, 1, factors, x_only, [&](const Exponents& d) {
               const int l = static_cast<int>(d[0]);
               return ra.at(l) * rb.at(l) * inverse_factorials(d);
           });
}

// ---------------------------------------------------------------------------
// Registry

TruncatedSeries IdentitySpec::side(Side s, int order, const BuildOptions& opts) const
{
    return build(s, Bindings::symbolic(roles), order, opts);
}

IdentitySpec multilinear_identity(int k)
{
    if (k < 2) {
        throw algebra_error("multilinear identity needs k >= 2");
    }
    const auto params = multilinear_params(k);
    const int max_order = k == 2 ? 8 : (k == 3 ? 5 : 3);
    return {"multilinear",
            "multilinear generating function, single-variable form (k = " + std::to_string(k) + ")",
            params->names(),
            {"z"},
            max_order,
            [k](Side s, const Bindings& b, int order, const BuildOptions& opts) {
                return build_multilinear_side(s, k, b, order, opts);
            }};
}

std::vector<std::string> identity_ids()
{
    return {"multilinear",      "bilinear",
            "trilinear",        "carlitz",
            "egf",              "bilinear-general",
            "derangement-bilinear", "derangement-trilinear",
            "derangement-bilinear-general"};
}

IdentitySpec find_identity(std::string_view id, int k)
{
    if (id == "multilinear") {
        return multilinear_identity(k);
    }
    if (id == "egf") {
        return {"egf", "exponential generating function of C_n(a,r)", kEgfRoles, {"x"}, 30,
                build_egf_side};
    }
    if (id == "bilinear") {
        return {"bilinear", "bilinear generating function", kBilinearRoles, {"x"}, 10,
                build_bilinear_side};
    }
    if (id == "trilinear") {
        return {"trilinear", "trilinear (k = 3) generating function", kTrilinearRoles,
                {"x", "y", "z"}, 6, build_trilinear_side};
    }
    if (id == "carlitz") {
        return {"carlitz", "Carlitz-type analogue (x = 0 slice of the trilinear formula)",
                kTrilinearRoles, {"y", "z"}, 6, build_carlitz_side};
    }
    if (id == "bilinear-general") {
        return {"bilinear-general", "generalized bilinear formula (c = 0, t = 1)", kBilinearRoles,
                {"x", "y", "z"}, 6, build_bilinear_general_side};
    }
    if (id == "derangement-bilinear") {
        return {"derangement-bilinear", "bilinear derangement formula", kDerangementRoles, {"x"},
                kDefaultPermutationCap, build_derangement_side};
    }
    if (id == "derangement-trilinear") {
        return {"derangement-trilinear", "derangement form of the Carlitz-type analogue",
                kDerangementTrilinearRoles, {"y", "z"}, 8, build_derangement_trilinear_side};
    }
    if (id == "derangement-bilinear-general") {
        return {"derangement-bilinear-general", "derangement form of the generalized bilinear formula",
                kDerangementRoles, {"x", "y", "z"}, 6, build_derangement_bilinear_general_side};
    }
    throw std::out_of_range("unknown identity: " + std::string(id));
}

// ---------------------------------------------------------------------------
// Verification

std::string to_string(VerifyMode m)
{
    return m == VerifyMode::symbolic ? "symbolic" : "random";
}

bool VerificationReport::verified() const
{
    return !degree_matches.empty() &&
           std::all_of(degree_matches.begin(), degree_matches.end(), [](bool b) { return b; });
}

std::optional<int> VerificationReport::first_failing_degree() const
{
    for (std::size_t d = 0; d < degree_matches.size(); ++d) {
        if (!degree_matches[d]) {
            return static_cast<int>(d);
        }
    }
    return std::nullopt;
}

void compare_sides(const TruncatedSeries& lhs, const TruncatedSeries& rhs,
                   VerificationReport& report, std::optional<int> point)
{
    if (!same_symbols(lhs.vars(), rhs.vars())) {
        throw algebra_error("sides use different series variables");
    }
    const int order = std::min({lhs.order(), rhs.order(), report.order});
    if (report.degree_matches.size() < static_cast<std::size_t>(report.order) + 1) {
        report.degree_matches.resize(static_cast<std::size_t>(report.order) + 1, true);
    }
    std::set<Exponents, GradedLess> keys;
    for (const auto& [e, c] : lhs.terms()) {
        keys.insert(e);
    }
    for (const auto& [e, c] : rhs.terms()) {
        keys.insert(e);
    }
    for (const auto& e : keys) {
        if (static_cast<int>(total_degree(e)) > order) {
            break;
        }
        const auto l = lhs.coefficient(e);
        const auto r = rhs.coefficient(e);
        if (l != r) {
            report.degree_matches[total_degree(e)] = false;
            report.mismatches.push_back({e, l.to_string(), r.to_string(), point});
        }
    }
}

namespace {

constexpr std::size_t kMaxReportedMismatches = 20;

void finish_report(VerificationReport& report, std::chrono::steady_clock::time_point start)
{
    std::stable_sort(report.mismatches.begin(), report.mismatches.end(),
                     [](const Mismatch& x, const Mismatch& y) {
                         if (x.degree != y.degree) {
                             return GradedLess{}(x.degree, y.degree);
                         }
                         return x.point < y.point;
                     });
    if (report.mismatches.size() > kMaxReportedMismatches) {
        report.mismatches.resize(kMaxReportedMismatches);
    }
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

VerificationReport verify(const IdentitySpec& spec, int order, const VerifyOptions& opts)
{
    if (order < 0) {
        throw algebra_error("order must be non-negative");
    }
    if (order > spec.max_order && !opts.force) {
        throw enumeration_budget_error("order " + std::to_string(order) + " exceeds the budget " +
                                       std::to_string(spec.max_order) + " for " + spec.id);
    }
    const auto start = std::chrono::steady_clock::now();
    VerificationReport report;
    report.identity = spec.id;
    report.mode = to_string(opts.mode);
    report.order = order;
    report.series_vars = spec.series_vars;
    report.degree_matches.assign(static_cast<std::size_t>(order) + 1, true);

    if (opts.mode == VerifyMode::symbolic) {
        const auto b = Bindings::symbolic(spec.roles);
        compare_sides(spec.build(Side::lhs, b, order, opts.build),
                      spec.build(Side::rhs, b, order, opts.build), report);
    } else {
        if (opts.points < 1) {
            throw algebra_error("random mode needs at least one point");
        }
        report.seed = opts.seed;
        report.points = opts.points;
        RandomRationalSource source(opts.seed);
        const SymbolSet roles(spec.roles);
        for (int p = 0; p < opts.points; ++p) {
            const Point point = source.point(roles);
            report.point_values.push_back(point);
            const auto b = Bindings::at_point(spec.roles, point);
            compare_sides(spec.build(Side::lhs, b, order, opts.build),
                          spec.build(Side::rhs, b, order, opts.build), report, p);
        }
    }
    finish_report(report, start);
    return report;
}

VerificationReport verify(std::string_view id, int order, const VerifyOptions& opts, int k)
{
    return verify(find_identity(id, k), order, opts);
}

VerificationReport oracle_compare(OracleKind kind, int k, int n, const HBudget& budget)
{
    if (n < 0) {
        throw algebra_error("oracle size must be non-negative");
    }
    const auto start = std::chrono::steady_clock::now();
    VerificationReport report;
    report.mode = "oracle";
    report.order = n;
    report.degree_matches.assign(static_cast<std::size_t>(n) + 1, true);

    if (kind == OracleKind::config) {
        report.identity = "oracle-config";
        report.series_vars = {"n"};
        const int cap = budget.force ? std::max(n, kDefaultConfigCap) : kDefaultConfigCap;
        if (n > cap) {
            throw enumeration_budget_error("configuration oracle size " + std::to_string(n) +
                                           " exceeds enumeration cap " + std::to_string(cap));
        }
        const auto params = make_symbols({"a", "r"});
        const auto a = Polynomial::variable(params, "a");
        const auto r = Polynomial::variable(params, "r");
        for (int m = 0; m <= n; ++m) {
            LabelSet labels(static_cast<std::size_t>(m));
            std::iota(labels.begin(), labels.end(), 1);
            Polynomial brute(params);
            auto stream = enumerate_configs(labels, cap);
            while (auto c = stream.next()) {
                brute += config_weight(*c, a, r);
            }
            const auto formula = charlier_C(m, a, r);
            if (brute != formula) {
                report.degree_matches[static_cast<std::size_t>(m)] = false;
                report.mismatches.push_back({{static_cast<std::uint32_t>(m)}, brute.to_string(),
                                             formula.to_string(), std::nullopt});
            }
        }
    } else {
        report.identity = "oracle-H";
        report.series_vars = {"z"};
        check_h_budget(k, n, budget);
        const auto spec = multilinear_identity(k);
        const auto params = multilinear_params(k);
        const auto lhs = build_multilinear_side(Side::lhs, k, Bindings::symbolic(spec.roles), n);
        for (int m = 0; m <= n; ++m) {
            Polynomial brute(params);
            auto stream = enumerate_H(k, m, budget);
            while (const auto* t = stream.next()) {
                brute += tuple_weight(*t, params);
            }
            const Exponents deg{static_cast<std::uint32_t>(m)};
            // Rebase the coefficient onto `params`; the names agree.
            Polynomial formula(params);
            const Polynomial coeff = lhs.coefficient(deg);
            for (const auto& [e, c] : coeff.terms()) {
                formula.add_term(e, c * ExactRational(factorial(m)));
            }
            if (brute != formula) {
                report.degree_matches[static_cast<std::size_t>(m)] = false;
                report.mismatches.push_back(
                    {deg, brute.to_string(), formula.to_string(), std::nullopt});
            }
        }
    }
    finish_report(report, start);
    return report;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

std::string degree_string(const Exponents& e, const std::vector<std::string>& vars)
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) {
            continue;
        }
        os << (first ? "" : "*") << (i < vars.size() ? vars[i] : "v" + std::to_string(i));
        if (e[i] > 1) {
            os << '^' << e[i];
        }
        first = false;
    }
    return first ? "1" : os.str();
}

} // namespace

std::string to_text(const VerificationReport& r)
{
    std::ostringstream os;
    os << "identity: " << r.identity << '\n'
       << "mode: " << r.mode << '\n'
       << "order: " << r.order << '\n'
       << "verified: " << (r.verified() ? "true" : "false") << '\n';
    if (r.mode == "random") {
        os << "seed: " << r.seed << '\n' << "points: " << r.points << '\n';
    }
    for (std::size_t d = 0; d < r.degree_matches.size(); ++d) {
        os << "  degree " << d << ": " << (r.degree_matches[d] ? "ok" : "MISMATCH") << '\n';
    }
    for (const auto& m : r.mismatches) {
        os << "  mismatch at [" << degree_string(m.degree, r.series_vars) << ']';
        if (m.point) {
            os << " (point " << *m.point << ')';
        }
        os << ":\n    lhs = " << m.lhs << "\n    rhs = " << m.rhs << '\n';
    }
    return os.str();
}

std::string to_json(const VerificationReport& r, bool timing)
{
    nlohmann::ordered_json doc;
    doc["identity"] = r.identity;
    doc["mode"] = r.mode;
    doc["order"] = r.order;
    doc["verified"] = r.verified();
    auto mismatches = nlohmann::ordered_json::array();
    for (const auto& m : r.mismatches) {
        nlohmann::ordered_json item;
        item["degree"] = m.degree;
        item["monomial"] = degree_string(m.degree, r.series_vars);
        item["lhs"] = m.lhs;
        item["rhs"] = m.rhs;
        if (m.point) {
            item["point"] = *m.point;
        }
        mismatches.push_back(std::move(item));
    }
    doc["mismatches"] = std::move(mismatches);
    doc["seed"] = r.seed;
    doc["points"] = r.points;
    if (timing) {
        doc["elapsed_ms"] = r.elapsed_ms;
    }
    doc["degree_matches"] = r.degree_matches;
    auto values = nlohmann::ordered_json::array();
    for (const auto& p : r.point_values) {
        nlohmann::ordered_json item = nlohmann::ordered_json::object();
        for (const auto& [name, q] : p) {
            item[name] = q.get_str();
        }
        values.push_back(std::move(item));
    }
    doc["point_values"] = std::move(values);
    return doc.dump(2) + "\n";
}

} // namespace charlier
