#include "charlier/charlier.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace charlier {

RisingFactorialTable::RisingFactorialTable(Polynomial base) : base_(std::move(base))
{
    values_.push_back(Polynomial::constant(base_.params(), 1));
}

Polynomial RisingFactorialTable::at(int m) const
{
    if (m < 0) {
        throw algebra_error("rising factorial needs m >= 0");
    }
    std::lock_guard lock(mutex_);
    while (static_cast<int>(values_.size()) <= m) {
        const int j = static_cast<int>(values_.size()) - 1;
        values_.push_back(values_.back() *
                          (base_ + Polynomial::constant(base_.params(), j)));
    }
    return values_[static_cast<std::size_t>(m)];
}

Polynomial rising_factorial(const Polynomial& p, int m)
{
    if (m < 0) {
        throw algebra_error("rising factorial needs m >= 0");
    }
    Polynomial result = Polynomial::constant(p.params(), 1);
    for (int j = 0; j < m; ++j) {
        result *= p + Polynomial::constant(p.params(), j);
    }
    return result;
}

BigInt stirling_cycle(int n, int k)
{
    if (n < 0 || k < 0 || k > n) {
        return 0;
    }
    // row[j] = c(i, j)
    std::vector<BigInt> row{1};
    for (int i = 1; i <= n; ++i) {
        std::vector<BigInt> next(static_cast<std::size_t>(i) + 1, 0);
        for (int j = 1; j <= i; ++j) {
            next[j] = row[j - 1];
            if (j < i) {
                next[j] += BigInt(i - 1) * row[j];
            }
        }
        row = std::move(next);
    }
    return row[static_cast<std::size_t>(k)];
}

BigInt binomial(int n, int k)
{
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

BigInt factorial(int n)
{
    if (n < 0) {
        throw algebra_error("factorial of negative integer");
    }
    BigInt r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

Polynomial charlier_C(int n, const Polynomial& a, const Polynomial& r)
{
    if (n < 0) {
        throw algebra_error("charlier_C needs n >= 0");
    }
    const auto& params = a.params();
    const RisingFactorialTable rf(a);
    std::vector<Polynomial> r_powers{Polynomial::constant(params, 1)};
    for (int j = 1; j <= n; ++j) {
        r_powers.push_back(r_powers.back() * r);
    }
    Polynomial sum(params);
    for (int k = 0; k <= n; ++k) {
        sum += rf.at(k) * r_powers[static_cast<std::size_t>(n - k)] *
               ExactRational(binomial(n, k));
    }
    return sum;
}

Polynomial charlier_classical(int n, const Polynomial& a, const Polynomial& r)
{
    if (n < 0) {
        throw algebra_error("charlier_classical needs n >= 0");
    }
    const auto& params = a.params();
    // Hypergeometric terms (-n)_k (-a)_k (-1/r)^k / k!, cleared by r^n.
    const RisingFactorialTable minus_a(-a);
    std::vector<Polynomial> r_powers{Polynomial::constant(params, 1)};
    for (int j = 1; j <= n; ++j) {
        r_powers.push_back(r_powers.back() * r);
    }
    Polynomial sum(params);
    ExactRational minus_n_rising = 1;
    ExactRational inv_fact = 1;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) {
            minus_n_rising *= -n + k - 1;
            inv_fact /= k;
        }
        const ExactRational sign = (k % 2 == 0) ? 1 : -1;
        sum += minus_a.at(k) * r_powers[static_cast<std::size_t>(n - k)] *
               (minus_n_rising * inv_fact * sign);
    }
    return sum;
}

const ParamSetPtr& derangement_params()
{
    static const ParamSetPtr params = make_symbols({"alpha", "u"});
    return params;
}

const ParamSetPtr& derangement_alpha_params()
{
    static const ParamSetPtr params = make_symbols({"alpha"});
    return params;
}

Polynomial derangement_poly2(int n, int cap)
{
    if (n < 0) {
        throw algebra_error("derangement_poly2 needs n >= 0");
    }
    if (n > cap) {
        throw algebra_error("derangement_poly2: n = " + std::to_string(n) +
                            " exceeds enumeration cap " + std::to_string(cap));
    }
    const std::size_t size = static_cast<std::size_t>(n);
    // counts[long_cycles][fixed_points]
    std::vector<std::vector<unsigned long long>> counts(size + 1,
                                                        std::vector<unsigned long long>(size + 1, 0));
    std::vector<int> perm(size);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<char> seen(size);
    do {
        std::fill(seen.begin(), seen.end(), 0);
        std::size_t fixed = 0;
        std::size_t long_cycles = 0;
        for (std::size_t i = 0; i < size; ++i) {
            if (seen[i]) {
                continue;
            }
            std::size_t len = 0;
            for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(perm[j])) {
                seen[j] = 1;
                ++len;
            }
            if (len == 1) {
                ++fixed;
            } else {
                ++long_cycles;
            }
        }
        ++counts[long_cycles][fixed];
    } while (std::next_permutation(perm.begin(), perm.end()));

    Polynomial result(derangement_params());
    for (std::size_t c = 0; c <= size; ++c) {
        for (std::size_t f = 0; f <= size; ++f) {
            if (counts[c][f] != 0) {
                result.add_term({static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(f)},
                                ExactRational(BigInt(std::to_string(counts[c][f]))));
            }
        }
    }
    return result;
}

Polynomial derangement_poly(int n, int cap)
{
    const Polynomial full = derangement_poly2(n, cap);
    const auto& target = derangement_alpha_params();
    const std::vector<Polynomial> images{Polynomial::variable(target, "alpha"),
                                         Polynomial(target)};
    return substitute(full, images, target);
}

} // namespace charlier
