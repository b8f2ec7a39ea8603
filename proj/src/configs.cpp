#include "charlier/configs.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <tuple>

#include "charlier/charlier.hpp"

namespace charlier {

namespace {

bool sorted_unique(const LabelSet& s)
{
    return std::adjacent_find(s.begin(), s.end(), std::greater_equal<>()) == s.end();
}

bool contains(const LabelSet& s, Label v)
{
    return std::binary_search(s.begin(), s.end(), v);
}

void write_set(std::ostream& os, const LabelSet& s)
{
    os << '{';
    for (std::size_t i = 0; i < s.size(); ++i) {
        os << (i ? "," : "") << s[i];
    }
    os << '}';
}

} // namespace

// ---------------------------------------------------------------------------
// CharlierConfig

CharlierConfig::CharlierConfig(LabelSet labels, LabelSet in_perm, LabelSet in_b,
                               std::vector<Cycle> cycles)
    : labels_(std::move(labels)), a_(std::move(in_perm)), b_(std::move(in_b))
{
    if (!sorted_unique(labels_) || !sorted_unique(a_) || !sorted_unique(b_)) {
        throw algebra_error("configuration label sets must be sorted and unique");
    }
    LabelSet merged;
    std::set_union(a_.begin(), a_.end(), b_.begin(), b_.end(), std::back_inserter(merged));
    if (merged.size() != a_.size() + b_.size() || merged != labels_) {
        throw algebra_error("(A, B) must be an ordered partition of the label set");
    }
    std::vector<Label> images(a_.size());
    std::vector<char> hit(a_.size(), 0);
    std::size_t covered = 0;
    auto index = [&](Label v) {
        const auto it = std::lower_bound(a_.begin(), a_.end(), v);
        if (it == a_.end() || *it != v) {
            throw algebra_error("cycle element " + std::to_string(v) + " is not in A");
        }
        return static_cast<std::size_t>(it - a_.begin());
    };
    for (const auto& cyc : cycles) {
        if (cyc.empty()) {
            throw algebra_error("empty cycle");
        }
        for (std::size_t t = 0; t < cyc.size(); ++t) {
            const auto idx = index(cyc[t]);
            if (hit[idx]) {
                throw algebra_error("label " + std::to_string(cyc[t]) + " repeated in sigma");
            }
            hit[idx] = 1;
            ++covered;
            images[idx] = cyc[(t + 1) % cyc.size()];
        }
    }
    if (covered != a_.size()) {
        throw algebra_error("cycles of sigma must cover A exactly");
    }
    *this = from_images(labels_, a_, images);
}

CharlierConfig CharlierConfig::from_images(const LabelSet& labels, const LabelSet& in_perm,
                                           const std::vector<Label>& images)
{
    CharlierConfig c;
    c.labels_ = labels;
    c.a_ = in_perm;
    std::set_difference(labels.begin(), labels.end(), in_perm.begin(), in_perm.end(),
                        std::back_inserter(c.b_));
    std::vector<char> seen(in_perm.size(), 0);
    auto index = [&](Label v) {
        return static_cast<std::size_t>(std::lower_bound(in_perm.begin(), in_perm.end(), v) -
                                        in_perm.begin());
    };
    // Scanning A in increasing order makes each cycle start at its minimum
    // and keeps cycles sorted by minimum.
    for (std::size_t s = 0; s < in_perm.size(); ++s) {
        if (seen[s]) {
            continue;
        }
        Cycle cyc;
        for (std::size_t t = s; !seen[t]; t = index(images[t])) {
            seen[t] = 1;
            cyc.push_back(in_perm[t]);
        }
        c.cycles_.push_back(std::move(cyc));
    }
    return c;
}

bool CharlierConfig::in_perm(Label v) const
{
    return contains(a_, v);
}

bool CharlierConfig::in_b(Label v) const
{
    return contains(b_, v);
}

Label CharlierConfig::image(Label v) const
{
    for (const auto& cyc : cycles_) {
        const auto it = std::find(cyc.begin(), cyc.end(), v);
        if (it != cyc.end()) {
            return (it + 1 == cyc.end()) ? cyc.front() : *(it + 1);
        }
    }
    throw algebra_error("label " + std::to_string(v) + " is not in A");
}

std::ostream& operator<<(std::ostream& os, const CharlierConfig& c)
{
    os << "A=";
    write_set(os, c.perm_part());
    os << " B=";
    write_set(os, c.b_part());
    os << " sigma=";
    if (c.cycles().empty()) {
        os << "()";
    }
    for (const auto& cyc : c.cycles()) {
        os << '(';
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            os << (i ? " " : "") << cyc[i];
        }
        os << ')';
    }
    return os;
}

// ---------------------------------------------------------------------------
// Configuration stream

ConfigStream::ConfigStream(LabelSet labels, int cap) : labels_(std::move(labels))
{
    std::sort(labels_.begin(), labels_.end());
    if (!sorted_unique(labels_)) {
        throw algebra_error("configuration labels must be distinct");
    }
    if (static_cast<int>(labels_.size()) > cap) {
        throw enumeration_budget_error("label set of size " + std::to_string(labels_.size()) +
                                       " exceeds enumeration cap " + std::to_string(cap));
    }
}

bool ConfigStream::advance_subset()
{
    const std::size_t m = labels_.size();
    if (subset_.empty()) {
        if (m == 0) {
            return false;
        }
        subset_.push_back(0);
    } else if (subset_.back() + 1 < m) {
        subset_.push_back(subset_.back() + 1);
    } else {
        subset_.pop_back();
        if (subset_.empty()) {
            return false;
        }
        ++subset_.back();
    }
    images_.clear();
    for (auto idx : subset_) {
        images_.push_back(labels_[idx]);
    }
    return true;
}

std::optional<CharlierConfig> ConfigStream::next()
{
    if (done_) {
        return std::nullopt;
    }
    if (!started_) {
        started_ = true;
    } else if (!std::next_permutation(images_.begin(), images_.end())) {
        if (!advance_subset()) {
            done_ = true;
            return std::nullopt;
        }
    }
    LabelSet a;
    for (auto idx : subset_) {
        a.push_back(labels_[idx]);
    }
    return CharlierConfig::from_images(labels_, a, images_);
}

ConfigStream enumerate_configs(LabelSet labels, int cap)
{
    return ConfigStream(std::move(labels), cap);
}

BigInt config_count(int m)
{
    BigInt total = 0;
    for (int j = 0; j <= m; ++j) {
        total += binomial(m, j) * factorial(j);
    }
    return total;
}

Polynomial config_weight(const CharlierConfig& c, const Polynomial& a, const Polynomial& r)
{
    return pow(a, static_cast<unsigned>(c.cycle_count())) *
           pow(r, static_cast<unsigned>(c.b_part().size()));
}

// ---------------------------------------------------------------------------
// H

std::vector<OwnerPair> owner_pairs(int k)
{
    std::vector<OwnerPair> pairs;
    for (int i = 1; i <= k; ++i) {
        for (int j = i + 1; j <= k; ++j) {
            pairs.push_back({i, j});
        }
    }
    return pairs;
}

LabelSet DigraphTuple::block_labels(OwnerPair p) const
{
    LabelSet s;
    for (int v = 1; v <= n; ++v) {
        if (block.at(static_cast<std::size_t>(v - 1)) == p) {
            s.push_back(v);
        }
    }
    return s;
}

LabelSet DigraphTuple::owner_labels(int i) const
{
    LabelSet s;
    for (int v = 1; v <= n; ++v) {
        const auto& p = block.at(static_cast<std::size_t>(v - 1));
        if (p.i == i || p.j == i) {
            s.push_back(v);
        }
    }
    return s;
}

std::ostream& operator<<(std::ostream& os, const DigraphTuple& t)
{
    bool first = true;
    for (const auto& p : owner_pairs(t.k)) {
        os << (first ? "" : " ") << 'N' << p.i << p.j << '=';
        write_set(os, t.block_labels(p));
        first = false;
    }
    for (std::size_t i = 0; i < t.configs.size(); ++i) {
        os << " | Phi" << i + 1 << ": " << t.configs[i];
    }
    return os;
}

void validate_tuple(const DigraphTuple& t)
{
    if (t.k < 2) {
        throw algebra_error("H needs k >= 2");
    }
    if (t.n < 0 || t.block.size() != static_cast<std::size_t>(t.n)) {
        throw algebra_error("block assignment must cover [n]");
    }
    for (const auto& p : t.block) {
        if (p.i < 1 || p.i >= p.j || p.j > t.k) {
            throw algebra_error("invalid block pair");
        }
    }
    if (t.configs.size() != static_cast<std::size_t>(t.k)) {
        throw algebra_error("tuple needs one configuration per index");
    }
    for (int i = 1; i <= t.k; ++i) {
        if (t.configs[static_cast<std::size_t>(i - 1)].labels() != t.owner_labels(i)) {
            throw algebra_error("Phi_" + std::to_string(i) + " is not a configuration on N_" +
                                std::to_string(i));
        }
    }
}

BigInt h_count(int k, int n)
{
    if (k < 2 || n < 0) {
        throw algebra_error("h_count needs k >= 2 and n >= 0");
    }
    const auto pairs = owner_pairs(k);
    const std::size_t p = pairs.size();
    std::vector<BigInt> cc;
    for (int m = 0; m <= n; ++m) {
        cc.push_back(config_count(m));
    }
    const BigInt n_fact = factorial(n);
    BigInt total = 0;
    std::vector<int> parts(p, 0);
    // Walk every composition of n into p ordered parts.
    auto recurse = [&](auto&& self, std::size_t idx, int left) -> void {
        if (idx + 1 == p) {
            parts[idx] = left;
            BigInt term = n_fact;
            std::vector<int> sizes(static_cast<std::size_t>(k) + 1, 0);
            for (std::size_t q = 0; q < p; ++q) {
                term /= factorial(parts[q]);
                sizes[static_cast<std::size_t>(pairs[q].i)] += parts[q];
                sizes[static_cast<std::size_t>(pairs[q].j)] += parts[q];
            }
            for (int i = 1; i <= k; ++i) {
                term *= cc[static_cast<std::size_t>(sizes[static_cast<std::size_t>(i)])];
            }
            total += term;
            return;
        }
        for (int v = 0; v <= left; ++v) {
            parts[idx] = v;
            self(self, idx + 1, left - v);
        }
    };
    recurse(recurse, 0, n);
    return total;
}

void check_h_budget(int k, int n, const HBudget& budget)
{
    if (k < 2) {
        throw algebra_error("H needs k >= 2");
    }
    if (n < 0) {
        throw algebra_error("H needs n >= 0");
    }
    if (!budget.force) {
        const bool over = k > budget.max_k || (k == 2 && n > budget.max_n_k2) ||
                          (k == 3 && n > budget.max_n_k3);
        if (over) {
            throw enumeration_budget_error("H(k=" + std::to_string(k) + ", n=" +
                                           std::to_string(n) +
                                           ") is outside the enumeration budget");
        }
    }
    // Every label lies in two configurations, so no N_i exceeds n.
    if (n > 2 * kDefaultConfigCap ||
        h_count(k, n) > BigInt(static_cast<unsigned long>(budget.hard_limit))) {
        throw enumeration_budget_error("H(k=" + std::to_string(k) + ", n=" + std::to_string(n) +
                                       ") exceeds the hard enumeration limit");
    }
}

TupleStream::TupleStream(int k, int n, const HBudget& budget)
    : k_(k), n_(n), pairs_(owner_pairs(k))
{
    check_h_budget(k, n, budget);
}

void TupleStream::load_assignment()
{
    current_.n = n_;
    current_.k = k_;
    current_.block.clear();
    for (auto idx : assignment_) {
        current_.block.push_back(pairs_[idx]);
    }
    choices_.clear();
    current_.configs.clear();
    for (int i = 1; i <= k_; ++i) {
        std::vector<CharlierConfig> all;
        ConfigStream stream(current_.owner_labels(i), n_);
        while (auto c = stream.next()) {
            all.push_back(std::move(*c));
        }
        current_.configs.push_back(all.front());
        choices_.push_back(std::move(all));
    }
    pick_.assign(static_cast<std::size_t>(k_), 0);
}

bool TupleStream::advance_assignment()
{
    for (std::size_t pos = assignment_.size(); pos-- > 0;) {
        if (++assignment_[pos] < pairs_.size()) {
            return true;
        }
        assignment_[pos] = 0;
    }
    return false;
}

const DigraphTuple* TupleStream::next()
{
    if (done_) {
        return nullptr;
    }
    if (!started_) {
        started_ = true;
        assignment_.assign(static_cast<std::size_t>(n_), 0);
        load_assignment();
        return &current_;
    }
    for (std::size_t i = pick_.size(); i-- > 0;) {
        if (++pick_[i] < choices_[i].size()) {
            current_.configs[i] = choices_[i][pick_[i]];
            return &current_;
        }
        pick_[i] = 0;
        current_.configs[i] = choices_[i][0];
    }
    if (!advance_assignment()) {
        done_ = true;
        return nullptr;
    }
    load_assignment();
    return &current_;
}

TupleStream enumerate_H(int k, int n, const HBudget& budget)
{
    return TupleStream(k, n, budget);
}

std::string a_name(int i)
{
    return "a" + std::to_string(i);
}

std::string r_name(int i)
{
    return "r" + std::to_string(i);
}

std::string x_name(OwnerPair p)
{
    if (p.j < 10) {
        return "x" + std::to_string(p.i) + std::to_string(p.j);
    }
    return "x" + std::to_string(p.i) + "_" + std::to_string(p.j);
}

ParamSetPtr multilinear_params(int k)
{
    std::vector<std::string> names;
    for (int i = 1; i <= k; ++i) {
        names.push_back(a_name(i));
    }
    for (int i = 1; i <= k; ++i) {
        names.push_back(r_name(i));
    }
    for (const auto& p : owner_pairs(k)) {
        names.push_back(x_name(p));
    }
    return make_symbols(std::move(names));
}

namespace {

std::size_t require_index(const ParamSetPtr& params, const std::string& name)
{
    const auto idx = params->index_of(name);
    if (!idx) {
        throw algebra_error("parameter set lacks " + name);
    }
    return *idx;
}

} // namespace

Polynomial tuple_weight(const DigraphTuple& t, const ParamSetPtr& params)
{
    Exponents e(params->size(), 0);
    for (int i = 1; i <= t.k; ++i) {
        const auto& c = t.configs.at(static_cast<std::size_t>(i - 1));
        e[require_index(params, a_name(i))] += static_cast<std::uint32_t>(c.cycle_count());
        e[require_index(params, r_name(i))] += static_cast<std::uint32_t>(c.b_part().size());
    }
    for (const auto& p : t.block) {
        ++e[require_index(params, x_name(p))];
    }
    return Polynomial::monomial(params, std::move(e));
}

// ---------------------------------------------------------------------------
// ColoredDigraph

namespace {

bool by_color_then_src(const Edge& x, const Edge& y)
{
    return std::tie(x.color, x.src, x.dst) < std::tie(y.color, y.src, y.dst);
}

} // namespace

ColoredDigraph::ColoredDigraph(int colors, std::map<Label, std::vector<Membership>> memberships,
                               std::vector<Edge> edges)
    : colors_(colors), memberships_(std::move(memberships)), edges_(std::move(edges))
{
    std::sort(edges_.begin(), edges_.end(), by_color_then_src);
    std::map<std::pair<Label, int>, int> out_deg;
    std::map<std::pair<Label, int>, int> in_deg;
    for (const auto& e : edges_) {
        if (e.color < 1 || e.color > colors_) {
            throw algebra_error("edge color out of range");
        }
        if (!memberships_.contains(e.src) || !memberships_.contains(e.dst)) {
            throw algebra_error("edge endpoint is not a vertex");
        }
        ++out_deg[{e.src, e.color}];
        ++in_deg[{e.dst, e.color}];
    }
    for (auto& [v, ms] : memberships_) {
        std::sort(ms.begin(), ms.end());
        for (const auto& m : ms) {
            if (m.owner < 1 || m.owner > colors_) {
                throw algebra_error("membership owner out of range");
            }
            const int want = m.in_perm ? 1 : 0;
            const auto out_it = out_deg.find({v, m.owner});
            const auto in_it = in_deg.find({v, m.owner});
            const int out = out_it == out_deg.end() ? 0 : out_it->second;
            const int in = in_it == in_deg.end() ? 0 : in_it->second;
            if (out != want || in != want) {
                throw algebra_error("vertex " + std::to_string(v) +
                                    " has wrong degree in color " + std::to_string(m.owner));
            }
        }
    }
    for (const auto& [key, deg] : out_deg) {
        const auto& ms = memberships_.at(key.first);
        const bool member = std::any_of(ms.begin(), ms.end(), [&](const Membership& m) {
            return m.owner == key.second && m.in_perm;
        });
        if (!member) {
            throw algebra_error("edge color without matching permutation membership");
        }
    }
}

LabelSet ColoredDigraph::vertices() const
{
    LabelSet vs;
    for (const auto& [v, ms] : memberships_) {
        vs.push_back(v);
    }
    return vs;
}

std::optional<Label> ColoredDigraph::successor(Label v, int color) const
{
    const auto it = std::lower_bound(edges_.begin(), edges_.end(), Edge{v, 0, color},
                                     by_color_then_src);
    if (it != edges_.end() && it->src == v && it->color == color) {
        return it->dst;
    }
    return std::nullopt;
}

int ColoredDigraph::perm_degree(Label v) const
{
    const auto& ms = memberships_.at(v);
    return static_cast<int>(std::count_if(ms.begin(), ms.end(),
                                          [](const Membership& m) { return m.in_perm; }));
}

std::vector<Cycle> ColoredDigraph::cycles(int color) const
{
    std::map<Label, Label> succ;
    for (const auto& e : edges_) {
        if (e.color == color) {
            succ.emplace(e.src, e.dst);
        }
    }
    std::set<Label> seen;
    std::vector<Cycle> out;
    for (const auto& [start, ignored] : succ) {
        if (seen.contains(start)) {
            continue;
        }
        Cycle cyc;
        for (Label v = start; !seen.contains(v); v = succ.at(v)) {
            seen.insert(v);
            cyc.push_back(v);
        }
        out.push_back(std::move(cyc));
    }
    return out;
}

std::string dump(const ColoredDigraph& g)
{
    std::ostringstream os;
    for (const auto& e : g.edges()) {
        os << e.src << ' ' << e.dst << ' ' << e.color << '\n';
    }
    for (const auto& [v, ms] : g.memberships()) {
        os << v;
        for (const auto& m : ms) {
            os << ' ' << m.owner << ':' << (m.in_perm ? 'A' : 'B');
        }
        os << '\n';
    }
    return os.str();
}

ColoredDigraph superpose(const DigraphTuple& t)
{
    validate_tuple(t);
    std::map<Label, std::vector<Membership>> ms;
    for (int v = 1; v <= t.n; ++v) {
        const auto& p = t.block[static_cast<std::size_t>(v - 1)];
        for (int owner : {p.i, p.j}) {
            const auto& c = t.configs[static_cast<std::size_t>(owner - 1)];
            ms[v].push_back({owner, c.in_perm(v)});
        }
    }
    std::vector<Edge> edges;
    for (int i = 1; i <= t.k; ++i) {
        for (const auto& cyc : t.configs[static_cast<std::size_t>(i - 1)].cycles()) {
            for (std::size_t s = 0; s < cyc.size(); ++s) {
                edges.push_back({cyc[s], cyc[(s + 1) % cyc.size()], i});
            }
        }
    }
    return ColoredDigraph(t.k, std::move(ms), std::move(edges));
}

std::vector<ColoredDigraph> components(const ColoredDigraph& g)
{
    const LabelSet vs = g.vertices();
    std::vector<std::size_t> parent(vs.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto index = [&](Label v) {
        return static_cast<std::size_t>(std::lower_bound(vs.begin(), vs.end(), v) - vs.begin());
    };
    for (const auto& e : g.edges()) {
        const auto a = find(index(e.src));
        const auto b = find(index(e.dst));
        if (a != b) {
            parent[std::max(a, b)] = std::min(a, b);
        }
    }
    // Roots are the minimum index of each class, so iterating vertices in
    // order meets components by minimum label.
    std::map<std::size_t, std::size_t> slot;
    std::vector<std::map<Label, std::vector<Membership>>> ms;
    std::vector<std::vector<Edge>> edges;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        const auto root = find(i);
        auto [it, inserted] = slot.try_emplace(root, ms.size());
        if (inserted) {
            ms.emplace_back();
            edges.emplace_back();
        }
        ms[it->second].emplace(vs[i], g.memberships().at(vs[i]));
    }
    for (const auto& e : g.edges()) {
        edges[slot.at(find(index(e.src)))].push_back(e);
    }
    std::vector<ColoredDigraph> out;
    for (std::size_t c = 0; c < ms.size(); ++c) {
        out.emplace_back(g.colors(), std::move(ms[c]), std::move(edges[c]));
    }
    return out;
}

std::string to_string(const ComponentType& c)
{
    switch (c.kind) {
    case ComponentType::Kind::type1:
        return "Type1(" + std::to_string(c.i) + "," + std::to_string(c.j) + ")";
    case ComponentType::Kind::type2:
        return "Type2(" + std::to_string(c.i) + ")";
    case ComponentType::Kind::type3:
        break;
    }
    return "Type3";
}

ComponentType classify(const ColoredDigraph& component)
{
    const auto& ms = component.memberships();
    if (ms.size() == 1 && component.edges().empty()) {
        const auto& m = ms.begin()->second;
        if (m.size() == 2 && !m[0].in_perm && !m[1].in_perm) {
            return ComponentType::type1(std::min(m[0].owner, m[1].owner),
                                        std::max(m[0].owner, m[1].owner));
        }
    }
    std::optional<int> only;
    for (const auto& [v, m] : ms) {
        int perms = 0;
        int owner = 0;
        for (const auto& x : m) {
            if (x.in_perm) {
                ++perms;
                owner = x.owner;
            }
        }
        if (perms != 1 || (only && *only != owner)) {
            return ComponentType::type3();
        }
        only = owner;
    }
    if (only) {
        return ComponentType::type2(*only);
    }
    return ComponentType::type3();
}

ComponentType classify(const ColoredDigraph& component, const DigraphTuple& t)
{
    const auto all = components(superpose(t));
    if (std::find(all.begin(), all.end(), component) == all.end()) {
        throw algebra_error("not a connected component of the tuple's digraph");
    }
    return classify(component);
}

Polynomial digraph_weight(const ColoredDigraph& g, const ParamSetPtr& params)
{
    Exponents e(params->size(), 0);
    for (const auto& [v, ms] : g.memberships()) {
        if (ms.size() != 2) {
            throw algebra_error("vertex " + std::to_string(v) +
                                " must lie in exactly two configurations");
        }
        ++e[require_index(params, x_name({ms[0].owner, ms[1].owner}))];
        for (const auto& m : ms) {
            if (!m.in_perm) {
                ++e[require_index(params, r_name(m.owner))];
            }
        }
    }
    for (int c = 1; c <= g.colors(); ++c) {
        const auto n = g.cycles(c).size();
        if (n != 0) {
            e[require_index(params, a_name(c))] += static_cast<std::uint32_t>(n);
        }
    }
    return Polynomial::monomial(params, std::move(e));
}

bool is_reduced(const ColoredDigraph& g)
{
    for (const auto& [v, ms] : g.memberships()) {
        if (g.perm_degree(v) != 2) {
            return false;
        }
    }
    return true;
}

Reduction reduce_type3_with_record(const ColoredDigraph& g)
{
    for (const auto& c : components(g)) {
        if (classify(c).kind != ComponentType::Kind::type3) {
            throw algebra_error("reduce_type3: input has a component of " +
                                to_string(classify(c)));
        }
    }
    auto kept = [&](Label v) { return g.perm_degree(v) == 2; };
    auto b_owner = [&](Label v) {
        for (const auto& m : g.memberships().at(v)) {
            if (!m.in_perm) {
                return m.owner;
            }
        }
        throw algebra_error("removed vertex has no B membership");
    };

    Reduction out;
    std::map<Label, std::vector<Membership>> ms;
    std::vector<Edge> edges;
    for (const auto& [v, m] : g.memberships()) {
        if (!kept(v)) {
            continue;
        }
        ms.emplace(v, m);
        for (const auto& x : m) {
            std::vector<Insertion> path;
            Label w = *g.successor(v, x.owner);
            while (!kept(w)) {
                path.push_back({w, b_owner(w)});
                w = *g.successor(w, x.owner);
            }
            edges.push_back({v, w, x.owner});
            if (!path.empty()) {
                out.removed.emplace(std::pair{v, x.owner}, std::move(path));
            }
        }
    }
    out.reduced = ColoredDigraph(g.colors(), std::move(ms), std::move(edges));
    return out;
}

ColoredDigraph reduce_type3(const ColoredDigraph& g)
{
    return reduce_type3_with_record(g).reduced;
}

ColoredDigraph expand_type3(const ColoredDigraph& d, const InsertionMap& insertions)
{
    if (!is_reduced(d)) {
        throw algebra_error("expand_type3 needs a reduced digraph");
    }
    auto ms = d.memberships();
    for (const auto& [key, seq] : insertions) {
        const auto& [src, color] = key;
        if (!d.successor(src, color)) {
            throw algebra_error("insertion refers to a missing edge (" + std::to_string(src) +
                                ", color " + std::to_string(color) + ")");
        }
        for (const auto& w : seq) {
            if (w.partner == color || w.partner < 1 || w.partner > d.colors()) {
                throw algebra_error("inserted vertex needs a partner j != i");
            }
            std::vector<Membership> m{{color, true}, {w.partner, false}};
            std::sort(m.begin(), m.end());
            if (!ms.emplace(w.label, std::move(m)).second) {
                throw algebra_error("label collision on insertion of " +
                                    std::to_string(w.label));
            }
        }
    }
    std::vector<Edge> edges;
    for (const auto& e : d.edges()) {
        const auto it = insertions.find({e.src, e.color});
        Label from = e.src;
        if (it != insertions.end()) {
            for (const auto& w : it->second) {
                edges.push_back({from, w.label, e.color});
                from = w.label;
            }
        }
        edges.push_back({from, e.dst, e.color});
    }
    return ColoredDigraph(d.colors(), std::move(ms), std::move(edges));
}

} // namespace charlier
