#pragma once

#include <map>
#include <string_view>
#include <vector>

#include "charlier/polyring.hpp"

namespace charlier {

using SeriesVarsPtr = SymbolSetPtr;

std::uint32_t total_degree(const Exponents& e);

/// Orders exponent vectors by total degree, then lexicographically.
struct GradedLess {
    bool operator()(const Exponents& a, const Exponents& b) const;
};

/// Formal power series in a set of series variables with Polynomial
/// coefficients, truncated at total degree `order` (inclusive).
class TruncatedSeries {
public:
    using Terms = std::map<Exponents, Polynomial, GradedLess>;

    TruncatedSeries(SeriesVarsPtr vars, ParamSetPtr params, int order);

    static TruncatedSeries constant(SeriesVarsPtr vars, const Polynomial& c, int order);
    static TruncatedSeries one(SeriesVarsPtr vars, ParamSetPtr params, int order);
    static TruncatedSeries variable(SeriesVarsPtr vars, ParamSetPtr params,
                                    std::string_view name, int order);
    /// c * vars^degree, or zero when the degree exceeds the order.
    static TruncatedSeries monomial(SeriesVarsPtr vars, Exponents degree,
                                    const Polynomial& c, int order);

    const SeriesVarsPtr& vars() const noexcept { return vars_; }
    const ParamSetPtr& params() const noexcept { return params_; }
    int order() const noexcept { return order_; }
    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    /// Stored coefficient or zero; throws if the degree exceeds the order.
    Polynomial coefficient(const Exponents& degree) const;
    Polynomial constant_term() const;

    void add_term(const Exponents& degree, const Polynomial& c);

    /// Copy with every term of total degree above `new_order` dropped.
    TruncatedSeries truncated(int new_order) const;

    TruncatedSeries& operator+=(const TruncatedSeries& g);
    TruncatedSeries& operator-=(const TruncatedSeries& g);
    TruncatedSeries& operator*=(const Polynomial& c);
    TruncatedSeries& operator*=(const ExactRational& c);

    friend TruncatedSeries operator+(TruncatedSeries f, const TruncatedSeries& g) { return f += g; }
    friend TruncatedSeries operator-(TruncatedSeries f, const TruncatedSeries& g) { return f -= g; }
    friend TruncatedSeries operator*(const TruncatedSeries& f, const TruncatedSeries& g);
    friend TruncatedSeries operator*(TruncatedSeries f, const Polynomial& c) { return f *= c; }
    friend TruncatedSeries operator*(TruncatedSeries f, const ExactRational& c) { return f *= c; }

    /// Equal variables, order and coefficients.
    friend bool operator==(const TruncatedSeries& f, const TruncatedSeries& g);

    std::string to_string() const;

private:
    void check_compatible(const TruncatedSeries& g) const;

    SeriesVarsPtr vars_;
    ParamSetPtr params_;
    int order_;
    Terms terms_;
};

TruncatedSeries series_add(const TruncatedSeries& f, const TruncatedSeries& g);
TruncatedSeries series_mul(const TruncatedSeries& f, const TruncatedSeries& g);

/// f * vars^by; the result is known to order f.order() + |by|, capped at
/// `max_order`.
TruncatedSeries shift(const TruncatedSeries& f, const Exponents& by, int max_order);

/// Powers u^0..u^order of a series with zero constant term.
class SeriesPowers {
public:
    explicit SeriesPowers(const TruncatedSeries& u);

    int order() const noexcept { return order_; }
    const TruncatedSeries& operator[](int m) const { return powers_.at(static_cast<std::size_t>(m)); }
    const TruncatedSeries& base() const { return powers_.at(1); }

private:
    std::vector<TruncatedSeries> powers_;
    int order_;
};

TruncatedSeries series_exp(const TruncatedSeries& f);

/// (1 - u)^(-exponent) = sum_m (exponent)_m u^m / m!.
TruncatedSeries neg_binomial(const Polynomial& exponent, const TruncatedSeries& u);

/// Same, with u's powers precomputed; the result is truncated at `order`
/// (at most the powers' order).
TruncatedSeries neg_binomial(const Polynomial& exponent, const SeriesPowers& u, int order);

Polynomial coefficient(const TruncatedSeries& f, const Exponents& degree);

} // namespace charlier
