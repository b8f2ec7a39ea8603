#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace charlier {

using ExactRational = mpq_class;
using BigInt = mpz_class;

/// Exponent vector of a monomial; arity matches the owning symbol set.
using Exponents = std::vector<std::uint32_t>;

class algebra_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Ordered list of unique symbol names. Used both for polynomial
/// indeterminates (parameters) and for series variables.
class SymbolSet {
public:
    SymbolSet() = default;
    explicit SymbolSet(std::vector<std::string> names);

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    std::optional<std::size_t> index_of(std::string_view name) const;

    friend bool operator==(const SymbolSet&, const SymbolSet&) = default;

private:
    std::vector<std::string> names_;
};

using ParamSet = SymbolSet;
using SymbolSetPtr = std::shared_ptr<const SymbolSet>;
using ParamSetPtr = SymbolSetPtr;

SymbolSetPtr make_symbols(std::vector<std::string> names);

/// True when both pointers denote the same symbol list (by content).
bool same_symbols(const SymbolSetPtr& a, const SymbolSetPtr& b);

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Terms are kept in lexicographic order of exponent vectors (over the
/// declared indeterminate order) and never hold a zero coefficient, so the
/// empty term map is the unique zero and equality is structural.
class Polynomial {
public:
    using Terms = std::map<Exponents, ExactRational>;

    explicit Polynomial(ParamSetPtr params);

    static Polynomial constant(ParamSetPtr params, const ExactRational& c);
    static Polynomial variable(ParamSetPtr params, std::string_view name);
    static Polynomial monomial(ParamSetPtr params, Exponents exps,
                               const ExactRational& c = 1);

    const ParamSetPtr& params() const noexcept { return params_; }
    const Terms& terms() const noexcept { return terms_; }
    std::size_t size() const noexcept { return terms_.size(); }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const;
    ExactRational constant_term() const;
    std::uint32_t total_degree() const;

    /// Coefficient of one monomial (zero when absent).
    ExactRational coefficient(const Exponents& exps) const;

    Polynomial& operator+=(const Polynomial& other);
    Polynomial& operator-=(const Polynomial& other);
    Polynomial& operator*=(const Polynomial& other);
    Polynomial& operator*=(const ExactRational& c);

    /// Adds c * x^exps in place.
    void add_term(const Exponents& exps, const ExactRational& c);

    Polynomial operator-() const;

    friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
    friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
    friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
    friend Polynomial operator*(Polynomial p, const ExactRational& c) { return p *= c; }
    friend Polynomial operator*(const ExactRational& c, Polynomial p) { return p *= c; }

    friend bool operator==(const Polynomial& p, const Polynomial& q);

    std::string to_string() const;

private:
    void check_compatible(const Polynomial& other) const;

    ParamSetPtr params_;
    Terms terms_;
};

std::ostream& operator<<(std::ostream& os, const Polynomial& p);

Polynomial poly_add(const Polynomial& p, const Polynomial& q);
Polynomial poly_mul(const Polynomial& p, const Polynomial& q);
Polynomial pow(const Polynomial& p, unsigned e);

using Point = std::map<std::string, ExactRational, std::less<>>;

/// Exact evaluation. Throws if an indeterminate occurring in `p` has no value.
ExactRational poly_eval(const Polynomial& p, const Point& point);

/// Ring homomorphism sending the i-th indeterminate of p to images[i];
/// every image must live over `target`.
Polynomial substitute(const Polynomial& p, std::span<const Polynomial> images,
                      const ParamSetPtr& target);

std::string to_string(const ExactRational& q);

/// Seedable source of nonzero rationals with numerator in [-20,20]\{0}
/// and denominator in [1,20].
class RandomRationalSource {
public:
    explicit RandomRationalSource(std::uint64_t seed) : engine_(seed) {}

    ExactRational next();
    Point point(const SymbolSet& symbols);

private:
    std::mt19937_64 engine_;
};

} // namespace charlier
