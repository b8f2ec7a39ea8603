#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "charlier/polyring.hpp"

namespace charlier {

using Label = int;
using LabelSet = std::vector<Label>; // sorted, unique
using Cycle = std::vector<Label>;

inline constexpr int kDefaultConfigCap = 10;

class enumeration_budget_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Charlier configuration ((A, sigma), B) on a label set S.
///
/// sigma is held in canonical cycle form: every cycle starts at its
/// minimum and cycles are sorted by minimum.
class CharlierConfig {
public:
    CharlierConfig() = default;
    /// Validates that A, B partition `labels` and that the cycles cover A.
    CharlierConfig(LabelSet labels, LabelSet in_perm, LabelSet in_b, std::vector<Cycle> cycles);

    /// Builds from the one-line images of sorted A (images[t] = sigma(A[t])).
    static CharlierConfig from_images(const LabelSet& labels, const LabelSet& in_perm,
                                      const std::vector<Label>& images);

    const LabelSet& labels() const noexcept { return labels_; }
    const LabelSet& perm_part() const noexcept { return a_; }
    const LabelSet& b_part() const noexcept { return b_; }
    const std::vector<Cycle>& cycles() const noexcept { return cycles_; }
    std::size_t cycle_count() const noexcept { return cycles_.size(); }

    bool in_perm(Label v) const;
    bool in_b(Label v) const;
    /// sigma(v) for v in A.
    Label image(Label v) const;

    friend bool operator==(const CharlierConfig&, const CharlierConfig&) = default;

private:
    LabelSet labels_;
    LabelSet a_;
    LabelSet b_;
    std::vector<Cycle> cycles_;
};

std::ostream& operator<<(std::ostream& os, const CharlierConfig& c);

/// Stream of every Charlier configuration on S: by A in lexicographic order
/// of its sorted elements (starting from the empty set), then by sigma in
/// lexicographic one-line order.
class ConfigStream {
public:
    explicit ConfigStream(LabelSet labels, int cap = kDefaultConfigCap);

    std::optional<CharlierConfig> next();

private:
    bool advance_subset();

    LabelSet labels_;
    std::vector<std::size_t> subset_; // indices into labels_, increasing
    std::vector<Label> images_;
    bool started_ = false;
    bool done_ = false;
};

ConfigStream enumerate_configs(LabelSet labels, int cap = kDefaultConfigCap);

/// Number of configurations on an m-set: sum_j binom(m,j) j!.
BigInt config_count(int m);

/// a^cyc(sigma) r^|B|.
Polynomial config_weight(const CharlierConfig& c, const Polynomial& a, const Polynomial& r);

/// Unordered pair {i, j} of configuration indices, stored with i < j (1-based).
struct OwnerPair {
    int i;
    int j;
    friend auto operator<=>(const OwnerPair&, const OwnerPair&) = default;
};

/// All pairs {i,j} with 1 <= i < j <= k, lexicographic.
std::vector<OwnerPair> owner_pairs(int k);

/// Element of H: blocks N_ij of [n] plus a configuration on each N_i.
struct DigraphTuple {
    int n = 0;
    int k = 0;
    /// block[v-1] is the pair owning label v.
    std::vector<OwnerPair> block;
    /// configs[i-1] is Phi_i, on N_i.
    std::vector<CharlierConfig> configs;

    LabelSet block_labels(OwnerPair p) const;
    LabelSet owner_labels(int i) const;

    friend bool operator==(const DigraphTuple&, const DigraphTuple&) = default;
};

std::ostream& operator<<(std::ostream& os, const DigraphTuple& t);

/// Throws algebra_error unless t satisfies every invariant of H(k, n).
void validate_tuple(const DigraphTuple& t);

struct HBudget {
    int max_k = 3;
    int max_n_k2 = 6;
    int max_n_k3 = 4;
    /// Ignore the per-k limits; the hard tuple-count guard still applies.
    bool force = false;
    /// |H| above this is refused even when forced.
    double hard_limit = 5e9;
};

/// |H(k, n)| computed by counting, without enumeration.
BigInt h_count(int k, int n);

/// Throws enumeration_budget_error if H(k, n) is outside the budget.
void check_h_budget(int k, int n, const HBudget& budget = {});

/// Stream of H(k, n). Order: block assignment as an odometer over labels
/// 1..n (label 1 most significant, pairs in owner_pairs order), then the
/// configurations Phi_1..Phi_k as an odometer (Phi_k fastest), each in
/// ConfigStream order.
class TupleStream {
public:
    TupleStream(int k, int n, const HBudget& budget = {});

    /// Next tuple, or nullptr when exhausted. The reference stays valid
    /// until the following call.
    const DigraphTuple* next();

private:
    bool advance_assignment();
    void load_assignment();

    int k_;
    int n_;
    std::vector<OwnerPair> pairs_;
    std::vector<std::size_t> assignment_;
    std::vector<std::vector<CharlierConfig>> choices_;
    std::vector<std::size_t> pick_;
    DigraphTuple current_;
    bool started_ = false;
    bool done_ = false;
};

TupleStream enumerate_H(int k, int n, const HBudget& budget = {});

/// Parameters a1..ak, r1..rk, then x_ij for i<j (named "x12", ...).
ParamSetPtr multilinear_params(int k);
std::string a_name(int i);
std::string r_name(int i);
std::string x_name(OwnerPair p);

/// prod_i a_i^cyc(sigma_i) r_i^|B_i| * prod_{i<j} x_ij^|N_ij|.
Polynomial tuple_weight(const DigraphTuple& t, const ParamSetPtr& params);

// ---------------------------------------------------------------------------
// Superimposed digraphs

struct Edge {
    Label src;
    Label dst;
    int color;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Membership of a vertex in configuration `owner`: in A (on a cycle of
/// sigma_owner) or in B.
struct Membership {
    int owner;
    bool in_perm;
    friend auto operator<=>(const Membership&, const Membership&) = default;
};

/// Edge-colored digraph of superimposed configurations. Edges are sorted by
/// (color, src), and each vertex carries its memberships sorted by owner.
class ColoredDigraph {
public:
    ColoredDigraph() = default;
    ColoredDigraph(int colors, std::map<Label, std::vector<Membership>> memberships,
                   std::vector<Edge> edges);

    int colors() const noexcept { return colors_; }
    const std::map<Label, std::vector<Membership>>& memberships() const noexcept
    {
        return memberships_;
    }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    std::size_t vertex_count() const noexcept { return memberships_.size(); }
    LabelSet vertices() const;
    bool empty() const noexcept { return memberships_.empty(); }

    /// Target of the color-c edge leaving v, if any.
    std::optional<Label> successor(Label v, int color) const;
    /// Number of permutations (A memberships) containing v.
    int perm_degree(Label v) const;

    /// Cycles of color c, each rotated to start at its minimum.
    std::vector<Cycle> cycles(int color) const;

    friend bool operator==(const ColoredDigraph&, const ColoredDigraph&) = default;

private:
    int colors_ = 0;
    std::map<Label, std::vector<Membership>> memberships_;
    std::vector<Edge> edges_;
};

/// Text dump: one "src dst color" line per edge, then one
/// "v owner:A|B ..." line per vertex.
std::string dump(const ColoredDigraph& g);

ColoredDigraph superpose(const DigraphTuple& t);

/// Weakly connected components, ordered by minimum vertex.
std::vector<ColoredDigraph> components(const ColoredDigraph& g);

struct ComponentType {
    enum class Kind { type1, type2, type3 };
    Kind kind = Kind::type3;
    int i = 0; // type1: lower owner; type2: the permutation
    int j = 0; // type1: upper owner

    static ComponentType type1(int i, int j) { return {Kind::type1, i, j}; }
    static ComponentType type2(int i) { return {Kind::type2, i, 0}; }
    static ComponentType type3() { return {Kind::type3, 0, 0}; }

    friend bool operator==(const ComponentType&, const ComponentType&) = default;
};

std::string to_string(const ComponentType& c);

/// Type1(i,j): isolated vertex in B_i and B_j. Type2(i): a cycle of sigma_i
/// none of whose vertices lies in another permutation. Type3 otherwise.
ComponentType classify(const ColoredDigraph& component);

/// Same, checking that `component` is a connected component of superpose(t).
ComponentType classify(const ColoredDigraph& component, const DigraphTuple& t);

/// Weight of any superimposed digraph: x_ij per vertex of N_ij, r_j per B_j
/// membership, a_i per cycle of sigma_i.
Polynomial digraph_weight(const ColoredDigraph& g, const ParamSetPtr& params);

/// A vertex inserted into an edge: it joins the edge's permutation and lies
/// in B_partner.
struct Insertion {
    Label label;
    int partner;
    friend auto operator<=>(const Insertion&, const Insertion&) = default;
};

/// Insertion sequences keyed by the edge they subdivide, (source, color).
using InsertionMap = std::map<std::pair<Label, int>, std::vector<Insertion>>;

/// Every vertex of a reduced type-3 digraph lies in two permutations.
bool is_reduced(const ColoredDigraph& g);

struct Reduction {
    ColoredDigraph reduced;
    /// The removed vertices, in path order along each spliced edge.
    InsertionMap removed;
};

/// Splices out every vertex that lies in exactly one permutation. Every
/// component of g must be of type 3.
Reduction reduce_type3_with_record(const ColoredDigraph& g);
ColoredDigraph reduce_type3(const ColoredDigraph& g);

/// Replaces each edge (u,v) of color i by the path u -> w_1 -> ... -> v in
/// color i, with each w in sigma_i and in B_partner.
ColoredDigraph expand_type3(const ColoredDigraph& d, const InsertionMap& insertions);

} // namespace charlier
