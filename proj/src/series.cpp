#include "charlier/series.hpp"

#include <numeric>
#include <sstream>

namespace charlier {

std::uint32_t total_degree(const Exponents& e)
{
    return std::accumulate(e.begin(), e.end(), std::uint32_t{0});
}

bool GradedLess::operator()(const Exponents& a, const Exponents& b) const
{
    const auto da = total_degree(a);
    const auto db = total_degree(b);
    if (da != db) {
        return da < db;
    }
    return a < b;
}

TruncatedSeries::TruncatedSeries(SeriesVarsPtr vars, ParamSetPtr params, int order)
    : vars_(std::move(vars)), params_(std::move(params)), order_(order)
{
    if (!vars_ || !params_) {
        throw algebra_error("series requires variable and parameter sets");
    }
    if (order_ < 0) {
        throw algebra_error("series order must be non-negative");
    }
}

TruncatedSeries TruncatedSeries::constant(SeriesVarsPtr vars, const Polynomial& c, int order)
{
    TruncatedSeries f(std::move(vars), c.params(), order);
    f.add_term(Exponents(f.vars_->size(), 0), c);
    return f;
}

TruncatedSeries TruncatedSeries::one(SeriesVarsPtr vars, ParamSetPtr params, int order)
{
    return constant(std::move(vars), Polynomial::constant(std::move(params), 1), order);
}

TruncatedSeries TruncatedSeries::variable(SeriesVarsPtr vars, ParamSetPtr params,
                                          std::string_view name, int order)
{
    const auto idx = vars->index_of(name);
    if (!idx) {
        throw algebra_error("unknown series variable: " + std::string(name));
    }
    Exponents e(vars->size(), 0);
    e[*idx] = 1;
    Polynomial one = Polynomial::constant(params, 1);
    return monomial(std::move(vars), std::move(e), one, order);
}

TruncatedSeries TruncatedSeries::monomial(SeriesVarsPtr vars, Exponents degree,
                                          const Polynomial& c, int order)
{
    TruncatedSeries f(std::move(vars), c.params(), order);
    if (degree.size() != f.vars_->size()) {
        throw algebra_error("series degree arity does not match variables");
    }
    if (static_cast<int>(total_degree(degree)) <= order) {
        f.add_term(degree, c);
    }
    return f;
}

Polynomial TruncatedSeries::coefficient(const Exponents& degree) const
{
    if (degree.size() != vars_->size()) {
        throw algebra_error("series degree arity does not match variables");
    }
    if (static_cast<int>(total_degree(degree)) > order_) {
        throw algebra_error("coefficient degree exceeds truncation order");
    }
    const auto it = terms_.find(degree);
    return it == terms_.end() ? Polynomial(params_) : it->second;
}

Polynomial TruncatedSeries::constant_term() const
{
    return coefficient(Exponents(vars_->size(), 0));
}

void TruncatedSeries::add_term(const Exponents& degree, const Polynomial& c)
{
    if (!same_symbols(c.params(), params_)) {
        throw algebra_error("series coefficient over wrong parameter set");
    }
    if (c.is_zero() || static_cast<int>(total_degree(degree)) > order_) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(degree, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) {
            terms_.erase(it);
        }
    }
}

TruncatedSeries TruncatedSeries::truncated(int new_order) const
{
    TruncatedSeries f(vars_, params_, std::min(new_order, order_));
    for (const auto& [e, c] : terms_) {
        if (static_cast<int>(total_degree(e)) > f.order_) {
            break;
        }
        f.terms_.emplace_hint(f.terms_.end(), e, c);
    }
    return f;
}

void TruncatedSeries::check_compatible(const TruncatedSeries& g) const
{
    if (!same_symbols(vars_, g.vars_)) {
        throw algebra_error("series over different variable sets");
    }
    if (!same_symbols(params_, g.params_)) {
        throw algebra_error("series over different parameter sets");
    }
}

TruncatedSeries& TruncatedSeries::operator+=(const TruncatedSeries& g)
{
    check_compatible(g);
    if (g.order_ < order_) {
        *this = truncated(g.order_);
    }
    for (const auto& [e, c] : g.terms_) {
        add_term(e, c);
    }
    return *this;
}

TruncatedSeries& TruncatedSeries::operator-=(const TruncatedSeries& g)
{
    check_compatible(g);
    if (g.order_ < order_) {
        *this = truncated(g.order_);
    }
    for (const auto& [e, c] : g.terms_) {
        add_term(e, -c);
    }
    return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const Polynomial& c)
{
    if (!same_symbols(c.params(), params_)) {
        throw algebra_error("series coefficient over wrong parameter set");
    }
    for (auto& [e, v] : terms_) {
        v *= c;
    }
    std::erase_if(terms_, [](const auto& kv) { return kv.second.is_zero(); });
    return *this;
}

TruncatedSeries& TruncatedSeries::operator*=(const ExactRational& c)
{
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) {
        v *= c;
    }
    return *this;
}

TruncatedSeries operator*(const TruncatedSeries& f, const TruncatedSeries& g)
{
    f.check_compatible(g);
    TruncatedSeries r(f.vars_, f.params_, std::min(f.order_, g.order_));
    const std::size_t n = f.vars_->size();
    Exponents e(n);
    for (const auto& [ef, cf] : f.terms_) {
        const int df = static_cast<int>(total_degree(ef));
        if (df > r.order_) {
            break;
        }
        for (const auto& [eg, cg] : g.terms_) {
            // Terms are graded, so everything after this is too large.
            if (df + static_cast<int>(total_degree(eg)) > r.order_) {
                break;
            }
            for (std::size_t i = 0; i < n; ++i) {
                e[i] = ef[i] + eg[i];
            }
            r.add_term(e, cf * cg);
        }
    }
    return r;
}

bool operator==(const TruncatedSeries& f, const TruncatedSeries& g)
{
    return same_symbols(f.vars_, g.vars_) && same_symbols(f.params_, g.params_) &&
           f.order_ == g.order_ && f.terms_ == g.terms_;
}

std::string TruncatedSeries::to_string() const
{
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) {
            os << " + ";
        }
        first = false;
        os << '(' << c.to_string() << ')';
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] != 0) {
                os << '*' << vars_->name(i);
                if (e[i] > 1) {
                    os << '^' << e[i];
                }
            }
        }
    }
    if (first) {
        os << '0';
    }
    os << " + O(" << order_ + 1 << ')';
    return os.str();
}

TruncatedSeries series_add(const TruncatedSeries& f, const TruncatedSeries& g)
{
    return f + g;
}

TruncatedSeries series_mul(const TruncatedSeries& f, const TruncatedSeries& g)
{
    return f * g;
}

TruncatedSeries shift(const TruncatedSeries& f, const Exponents& by, int max_order)
{
    if (by.size() != f.vars()->size()) {
        throw algebra_error("shift arity does not match variables");
    }
    TruncatedSeries r(f.vars(), f.params(),
                      std::min(max_order, f.order() + static_cast<int>(total_degree(by))));
    Exponents e(by.size());
    for (const auto& [ef, c] : f.terms()) {
        for (std::size_t i = 0; i < by.size(); ++i) {
            e[i] = ef[i] + by[i];
        }
        r.add_term(e, c);
    }
    return r;
}

SeriesPowers::SeriesPowers(const TruncatedSeries& u) : order_(u.order())
{
    if (!u.constant_term().is_zero()) {
        throw algebra_error("series power expansion needs a zero constant term");
    }
    powers_.push_back(TruncatedSeries::one(u.vars(), u.params(), u.order()));
    for (int m = 1; m <= u.order(); ++m) {
        powers_.push_back(powers_.back() * u);
    }
    if (powers_.size() == 1) {
        powers_.push_back(u);
    }
}

TruncatedSeries series_exp(const TruncatedSeries& f)
{
    const SeriesPowers powers(f);
    TruncatedSeries result(f.vars(), f.params(), f.order());
    ExactRational inv_fact = 1;
    for (int m = 0; m <= f.order(); ++m) {
        if (m > 0) {
            inv_fact /= m;
        }
        result += powers[m] * inv_fact;
    }
    return result;
}

TruncatedSeries neg_binomial(const Polynomial& exponent, const SeriesPowers& u, int order)
{
    if (order > u.order()) {
        throw algebra_error("neg_binomial order exceeds available powers");
    }
    const auto& params = exponent.params();
    TruncatedSeries result(u.base().vars(), params, order);
    // coeff_m = (exponent)_m / m!, built incrementally.
    Polynomial coeff = Polynomial::constant(params, 1);
    for (int m = 0; m <= order; ++m) {
        if (m > 0) {
            coeff *= exponent + Polynomial::constant(params, m - 1);
            coeff *= ExactRational(1, m);
            if (coeff.is_zero()) {
                break;
            }
        }
        result += u[m].truncated(order) * coeff;
    }
    return result;
}

TruncatedSeries neg_binomial(const Polynomial& exponent, const TruncatedSeries& u)
{
    return neg_binomial(exponent, SeriesPowers(u), u.order());
}

Polynomial coefficient(const TruncatedSeries& f, const Exponents& degree)
{
    return f.coefficient(degree);
}

} // namespace charlier
