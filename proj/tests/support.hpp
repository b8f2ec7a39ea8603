#pragma once

// Shared fixtures and generators for the test binaries.

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "charlier/configs.hpp"
#include "charlier/polyring.hpp"
#include "charlier/series.hpp"

namespace charlier::testing {

inline Polynomial var(const ParamSetPtr& params, std::string_view name)
{
    return Polynomial::variable(params, name);
}

inline Polynomial cst(const ParamSetPtr& params, const ExactRational& c)
{
    return Polynomial::constant(params, c);
}

/// Re-expresses p over `target`, which must contain every name of p's set.
inline Polynomial rebase(const Polynomial& p, const ParamSetPtr& target)
{
    std::vector<Polynomial> images;
    for (const auto& name : p.params()->names()) {
        images.push_back(Polynomial::variable(target, name));
    }
    return substitute(p, images, target);
}

/// Random polynomial with up to `terms` terms, degree <= `max_deg` per
/// indeterminate, small rational coefficients.
inline Polynomial random_poly(std::mt19937_64& rng, const ParamSetPtr& params, int terms = 4,
                              int max_deg = 2)
{
    std::uniform_int_distribution<int> count(0, terms);
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_int_distribution<int> num(-9, 9);
    std::uniform_int_distribution<int> den(1, 5);
    Polynomial p(params);
    const int n = count(rng);
    for (int t = 0; t < n; ++t) {
        Exponents e(params->size());
        for (auto& v : e) {
            v = static_cast<std::uint32_t>(deg(rng));
        }
        ExactRational c(num(rng), den(rng));
        c.canonicalize();
        p.add_term(e, c);
    }
    return p;
}

/// Random series with polynomial coefficients; zero constant term when
/// `zero_constant` is set.
inline TruncatedSeries random_series(std::mt19937_64& rng, const SeriesVarsPtr& vars,
                                     const ParamSetPtr& params, int order, bool zero_constant)
{
    TruncatedSeries f(vars, params, order);
    std::uniform_int_distribution<int> keep(0, 2);
    std::uniform_int_distribution<int> deg(0, order);
    for (int t = 0; t < 4; ++t) {
        Exponents e(vars->size(), 0);
        int left = deg(rng);
        for (std::size_t v = 0; v + 1 < e.size() && left > 0; ++v) {
            std::uniform_int_distribution<int> part(0, left);
            e[v] = static_cast<std::uint32_t>(part(rng));
            left -= static_cast<int>(e[v]);
        }
        e.back() += static_cast<std::uint32_t>(left);
        if (zero_constant && total_degree(e) == 0) {
            continue;
        }
        if (keep(rng) != 0) {
            f.add_term(e, random_poly(rng, params, 2, 1));
        }
    }
    return f;
}

using Renaming = std::map<std::string, Polynomial, std::less<>>;

/// Applies a renaming of indeterminates to p.
inline Polynomial rename(const Polynomial& p, const Renaming& images, const ParamSetPtr& target)
{
    std::vector<Polynomial> list;
    for (const auto& name : p.params()->names()) {
        list.push_back(images.at(name));
    }
    return substitute(p, list, target);
}

// Classification from the definitions, without the library's classifier.
inline std::string naive_type(const ColoredDigraph& c)
{
    const auto& ms = c.memberships();
    if (ms.size() == 1 && c.edges().empty()) {
        const auto& m = ms.begin()->second;
        if (!m[0].in_perm && !m[1].in_perm) {
            return "Type1(" + std::to_string(m[0].owner) + "," + std::to_string(m[1].owner) + ")";
        }
    }
    std::set<int> colors;
    bool single = true;
    for (const auto& e : c.edges()) {
        colors.insert(e.color);
    }
    for (const auto& [v, m] : ms) {
        single = single && c.perm_degree(v) == 1;
    }
    if (single && colors.size() == 1 && c.cycles(*colors.begin()).size() == 1) {
        return "Type2(" + std::to_string(*colors.begin()) + ")";
    }
    return "Type3";
}

inline Polynomial product_of_components(const ColoredDigraph& g, const ParamSetPtr& params)
{
    auto w = Polynomial::constant(params, 1);
    for (const auto& c : components(g)) {
        w *= digraph_weight(c, params);
    }
    return w;
}

/// The Charlier configuration on [10] drawn in the first figure.
inline CharlierConfig figure1_config()
{
    return CharlierConfig({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}, {1, 3, 4, 5, 6, 7, 9, 10}, {2, 8},
                          {{7}, {4, 9, 6}, {1, 5, 10, 3}});
}

/// The k = 3 tuple on [18] drawn in the second figure.
inline DigraphTuple figure2_tuple()
{
    DigraphTuple t;
    t.n = 18;
    t.k = 3;
    t.block.assign(18, OwnerPair{0, 0});
    for (Label v : {5, 8, 9, 11, 14, 16, 17}) {
        t.block[static_cast<std::size_t>(v - 1)] = {1, 2};
    }
    for (Label v : {1, 2, 6, 12, 15}) {
        t.block[static_cast<std::size_t>(v - 1)] = {1, 3};
    }
    for (Label v : {3, 4, 7, 10, 13, 18}) {
        t.block[static_cast<std::size_t>(v - 1)] = {2, 3};
    }
    t.configs.emplace_back(LabelSet{1, 2, 5, 6, 8, 9, 11, 12, 14, 15, 16, 17},
                           LabelSet{1, 8, 9, 11, 12, 15, 16}, LabelSet{2, 5, 6, 14, 17},
                           std::vector<Cycle>{{9, 16, 15}, {1, 12, 11, 8}});
    t.configs.emplace_back(LabelSet{3, 4, 5, 7, 8, 9, 10, 11, 13, 14, 16, 17, 18},
                           LabelSet{3, 4, 5, 7, 8, 10, 11, 17, 18}, LabelSet{9, 13, 14, 16},
                           std::vector<Cycle>{{5, 17, 8, 11}, {3, 10, 7, 4, 18}});
    t.configs.emplace_back(LabelSet{1, 2, 3, 4, 6, 7, 10, 12, 13, 15, 18},
                           LabelSet{1, 4, 6, 7, 10, 13, 18}, LabelSet{2, 3, 12, 15},
                           std::vector<Cycle>{{6, 13}, {1, 10, 7, 18, 4}});
    return t;
}

/// Random reduced digraph: every vertex in two permutations, each sigma_i a
/// uniformly random permutation of its vertices.
inline ColoredDigraph random_reduced(std::mt19937_64& rng, int k, int vertices)
{
    const auto pairs = owner_pairs(k);
    std::uniform_int_distribution<std::size_t> pick(0, pairs.size() - 1);
    std::map<Label, std::vector<Membership>> ms;
    std::vector<LabelSet> owned(static_cast<std::size_t>(k) + 1);
    for (Label v = 1; v <= vertices; ++v) {
        const auto p = pairs[pick(rng)];
        ms[v] = {{p.i, true}, {p.j, true}};
        owned[static_cast<std::size_t>(p.i)].push_back(v);
        owned[static_cast<std::size_t>(p.j)].push_back(v);
    }
    std::vector<Edge> edges;
    for (int i = 1; i <= k; ++i) {
        auto targets = owned[static_cast<std::size_t>(i)];
        std::shuffle(targets.begin(), targets.end(), rng);
        const auto& sources = owned[static_cast<std::size_t>(i)];
        for (std::size_t s = 0; s < sources.size(); ++s) {
            edges.push_back({sources[s], targets[s], i});
        }
    }
    return ColoredDigraph(k, std::move(ms), std::move(edges));
}

/// Random insertion sequences with fresh labels starting at `first_label`.
inline InsertionMap random_insertions(std::mt19937_64& rng, const ColoredDigraph& d,
                                      Label first_label)
{
    InsertionMap ins;
    std::uniform_int_distribution<int> len(0, 3);
    std::uniform_int_distribution<int> partner(1, d.colors());
    Label next = first_label;
    for (const auto& e : d.edges()) {
        const int m = len(rng);
        std::vector<Insertion> seq;
        for (int t = 0; t < m; ++t) {
            int j = partner(rng);
            while (j == e.color) {
                j = partner(rng);
            }
            seq.push_back({next++, j});
        }
        if (!seq.empty()) {
            ins.emplace(std::pair{e.src, e.color}, std::move(seq));
        }
    }
    return ins;
}

/// Independent brute force: permutations of [n] as vectors, by Heap's
/// algorithm (a different generation order from the library's).
template <typename Fn>
void for_each_permutation(int n, Fn&& fn)
{
    std::vector<int> p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    std::vector<int> c(static_cast<std::size_t>(n), 0);
    fn(static_cast<const std::vector<int>&>(p));
    int i = 0;
    while (i < n) {
        if (c[static_cast<std::size_t>(i)] < i) {
            const std::size_t j = (i % 2 == 0) ? 0 : static_cast<std::size_t>(c[static_cast<std::size_t>(i)]);
            std::swap(p[j], p[static_cast<std::size_t>(i)]);
            fn(static_cast<const std::vector<int>&>(p));
            ++c[static_cast<std::size_t>(i)];
            i = 0;
        } else {
            c[static_cast<std::size_t>(i)] = 0;
            ++i;
        }
    }
}

inline int cycle_count(const std::vector<int>& p)
{
    std::vector<char> seen(p.size(), 0);
    int cycles = 0;
    for (std::size_t s = 0; s < p.size(); ++s) {
        if (!seen[s]) {
            ++cycles;
            for (std::size_t t = s; !seen[t]; t = static_cast<std::size_t>(p[t])) {
                seen[t] = 1;
            }
        }
    }
    return cycles;
}

inline int fixed_points(const std::vector<int>& p)
{
    int f = 0;
    for (std::size_t s = 0; s < p.size(); ++s) {
        f += p[s] == static_cast<int>(s) ? 1 : 0;
    }
    return f;
}

} // namespace charlier::testing
