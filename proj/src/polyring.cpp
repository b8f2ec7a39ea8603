#include "charlier/polyring.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

namespace charlier {

SymbolSet::SymbolSet(std::vector<std::string> names) : names_(std::move(names))
{
    std::set<std::string_view> seen;
    for (const auto& n : names_) {
        if (n.empty()) {
            throw algebra_error("symbol names must be non-empty");
        }
        if (!seen.insert(n).second) {
            throw algebra_error("duplicate symbol name: " + n);
        }
    }
}

std::optional<std::size_t> SymbolSet::index_of(std::string_view name) const
{
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - names_.begin());
}

SymbolSetPtr make_symbols(std::vector<std::string> names)
{
    return std::make_shared<const SymbolSet>(std::move(names));
}

bool same_symbols(const SymbolSetPtr& a, const SymbolSetPtr& b)
{
    return a == b || (a && b && *a == *b);
}

Polynomial::Polynomial(ParamSetPtr params) : params_(std::move(params))
{
    if (!params_) {
        throw algebra_error("polynomial requires a parameter set");
    }
}

Polynomial Polynomial::constant(ParamSetPtr params, const ExactRational& c)
{
    Polynomial p(std::move(params));
    if (c != 0) {
        p.terms_.emplace(Exponents(p.params_->size(), 0), c);
    }
    return p;
}

Polynomial Polynomial::variable(ParamSetPtr params, std::string_view name)
{
    const auto idx = params->index_of(name);
    if (!idx) {
        throw algebra_error("unknown indeterminate: " + std::string(name));
    }
    Exponents e(params->size(), 0);
    e[*idx] = 1;
    return monomial(std::move(params), std::move(e));
}

Polynomial Polynomial::monomial(ParamSetPtr params, Exponents exps, const ExactRational& c)
{
    Polynomial p(std::move(params));
    if (exps.size() != p.params_->size()) {
        throw algebra_error("exponent vector arity does not match parameter set");
    }
    if (c != 0) {
        p.terms_.emplace(std::move(exps), c);
    }
    return p;
}

bool Polynomial::is_constant() const
{
    if (terms_.empty()) {
        return true;
    }
    if (terms_.size() > 1) {
        return false;
    }
    const auto& e = terms_.begin()->first;
    return std::all_of(e.begin(), e.end(), [](auto v) { return v == 0; });
}

ExactRational Polynomial::constant_term() const
{
    return coefficient(Exponents(params_->size(), 0));
}

std::uint32_t Polynomial::total_degree() const
{
    std::uint32_t d = 0;
    for (const auto& [e, c] : terms_) {
        d = std::max(d, std::accumulate(e.begin(), e.end(), std::uint32_t{0}));
    }
    return d;
}

ExactRational Polynomial::coefficient(const Exponents& exps) const
{
    const auto it = terms_.find(exps);
    return it == terms_.end() ? ExactRational(0) : it->second;
}

void Polynomial::check_compatible(const Polynomial& other) const
{
    if (!same_symbols(params_, other.params_)) {
        throw algebra_error("polynomials over different parameter sets");
    }
}

void Polynomial::add_term(const Exponents& exps, const ExactRational& c)
{
    if (c == 0) {
        return;
    }
    if (exps.size() != params_->size()) {
        throw algebra_error("exponent vector arity does not match parameter set");
    }
    auto [it, inserted] = terms_.try_emplace(exps, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& other)
{
    check_compatible(other);
    for (const auto& [e, c] : other.terms_) {
        add_term(e, c);
    }
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other)
{
    check_compatible(other);
    for (const auto& [e, c] : other.terms_) {
        add_term(e, -c);
    }
    return *this;
}

Polynomial& Polynomial::operator*=(const ExactRational& c)
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

Polynomial& Polynomial::operator*=(const Polynomial& other)
{
    *this = *this * other;
    return *this;
}

Polynomial Polynomial::operator-() const
{
    Polynomial r = *this;
    for (auto& [e, v] : r.terms_) {
        v = -v;
    }
    return r;
}

Polynomial operator*(const Polynomial& p, const Polynomial& q)
{
    p.check_compatible(q);
    Polynomial r(p.params_);
    if (p.is_zero() || q.is_zero()) {
        return r;
    }
    const std::size_t n = p.params_->size();
    Exponents e(n);
    ExactRational prod;
    for (const auto& [ep, cp] : p.terms_) {
        for (const auto& [eq, cq] : q.terms_) {
            for (std::size_t i = 0; i < n; ++i) {
                e[i] = ep[i] + eq[i];
            }
            mpq_mul(prod.get_mpq_t(), cp.get_mpq_t(), cq.get_mpq_t());
            auto [it, inserted] = r.terms_.try_emplace(e, prod);
            if (!inserted) {
                it->second += prod;
            }
        }
    }
    std::erase_if(r.terms_, [](const auto& kv) { return kv.second == 0; });
    return r;
}

bool operator==(const Polynomial& p, const Polynomial& q)
{
    return same_symbols(p.params_, q.params_) && p.terms_ == q.terms_;
}

std::string to_string(const ExactRational& q)
{
    return q.get_str();
}

std::string Polynomial::to_string() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::ostringstream os;
    bool first = true;
    // Highest monomials first reads more naturally.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        ExactRational mag = abs(c);
        if (first) {
            if (c < 0) {
                os << '-';
            }
        } else {
            os << (c < 0 ? " - " : " + ");
        }
        first = false;
        bool wrote = false;
        if (mag != 1) {
            os << mag.get_str();
            wrote = true;
        }
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) {
                continue;
            }
            if (wrote) {
                os << '*';
            }
            os << params_->name(i);
            if (e[i] > 1) {
                os << '^' << e[i];
            }
            wrote = true;
        }
        if (!wrote) {
            os << '1';
        }
    }
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Polynomial& p)
{
    return os << p.to_string();
}

Polynomial poly_add(const Polynomial& p, const Polynomial& q)
{
    return p + q;
}

Polynomial poly_mul(const Polynomial& p, const Polynomial& q)
{
    return p * q;
}

Polynomial pow(const Polynomial& p, unsigned e)
{
    Polynomial result = Polynomial::constant(p.params(), 1);
    Polynomial base = p;
    while (e != 0) {
        if (e & 1U) {
            result *= base;
        }
        e >>= 1U;
        if (e != 0) {
            base *= base;
        }
    }
    return result;
}

ExactRational poly_eval(const Polynomial& p, const Point& point)
{
    const auto& params = *p.params();
    std::vector<std::optional<ExactRational>> values(params.size());
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (auto it = point.find(params.name(i)); it != point.end()) {
            values[i] = it->second;
        }
    }
    ExactRational sum = 0;
    for (const auto& [e, c] : p.terms()) {
        ExactRational term = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) {
                continue;
            }
            if (!values[i]) {
                throw algebra_error("no value assigned to indeterminate " + params.name(i));
            }
            ExactRational f;
            mpz_pow_ui(mpq_numref(f.get_mpq_t()), mpq_numref(values[i]->get_mpq_t()), e[i]);
            mpz_pow_ui(mpq_denref(f.get_mpq_t()), mpq_denref(values[i]->get_mpq_t()), e[i]);
            term *= f;
        }
        sum += term;
    }
    return sum;
}

Polynomial substitute(const Polynomial& p, std::span<const Polynomial> images,
                      const ParamSetPtr& target)
{
    if (images.size() != p.params()->size()) {
        throw algebra_error("substitute: need one image per indeterminate");
    }
    for (const auto& img : images) {
        if (!same_symbols(img.params(), target)) {
            throw algebra_error("substitute: image over wrong parameter set");
        }
    }
    // Powers are cached per indeterminate since terms share them heavily.
    std::vector<std::vector<Polynomial>> powers(images.size());
    auto power = [&](std::size_t i, std::uint32_t k) -> const Polynomial& {
        auto& cache = powers[i];
        if (cache.empty()) {
            cache.push_back(Polynomial::constant(target, 1));
        }
        while (cache.size() <= k) {
            cache.push_back(cache.back() * images[i]);
        }
        return cache[k];
    };
    Polynomial result(target);
    for (const auto& [e, c] : p.terms()) {
        Polynomial term = Polynomial::constant(target, c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] != 0) {
                term *= power(i, e[i]);
            }
        }
        result += term;
    }
    return result;
}

ExactRational RandomRationalSource::next()
{
    std::uniform_int_distribution<int> num(-20, 19);
    std::uniform_int_distribution<int> den(1, 20);
    int n = num(engine_);
    if (n >= 0) {
        ++n; // skip zero
    }
    ExactRational q(n, den(engine_));
    q.canonicalize();
    return q;
}

Point RandomRationalSource::point(const SymbolSet& symbols)
{
    Point p;
    for (const auto& name : symbols.names()) {
        p.emplace(name, next());
    }
    return p;
}

} // namespace charlier
