#pragma once

#include <mutex>
#include <vector>

#include "charlier/polyring.hpp"

namespace charlier {

/// Permutation loops larger than this need an explicit override.
inline constexpr int kDefaultPermutationCap = 10;

/// Memoized rising factorials (p)_0, (p)_1, ... of one base polynomial.
/// Safe to share between threads.
class RisingFactorialTable {
public:
    explicit RisingFactorialTable(Polynomial base);

    const Polynomial& base() const noexcept { return base_; }
    Polynomial at(int m) const;

private:
    Polynomial base_;
    mutable std::mutex mutex_;
    mutable std::vector<Polynomial> values_;
};

/// p (p+1) ... (p+m-1); throws for negative m.
Polynomial rising_factorial(const Polynomial& p, int m);

/// Unsigned Stirling number of the first kind; zero outside 0 <= k <= n.
BigInt stirling_cycle(int n, int k);

BigInt binomial(int n, int k);
BigInt factorial(int n);

/// Renormalized Charlier polynomial sum_k binom(n,k) (a)_k r^(n-k).
Polynomial charlier_C(int n, const Polynomial& a, const Polynomial& r);

/// r^n c_n(a,r), with c_n(a,r) = 2F0(-n,-a;-;-1/r).
Polynomial charlier_classical(int n, const Polynomial& a, const Polynomial& r);

/// Parameter set {alpha, u} of the derangement polynomials.
const ParamSetPtr& derangement_params();
/// Parameter set {alpha}.
const ParamSetPtr& derangement_alpha_params();

/// D_n(alpha,u) = sum over permutations of alpha^(#cycles longer than 1)
/// u^(#fixed points), by brute force over S_n in lexicographic order.
Polynomial derangement_poly2(int n, int cap = kDefaultPermutationCap);

/// D_n(alpha) = D_n(alpha, 0), over derangement_alpha_params().
Polynomial derangement_poly(int n, int cap = kDefaultPermutationCap);

} // namespace charlier
