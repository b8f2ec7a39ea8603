#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "charlier/configs.hpp"
#include "charlier/polyring.hpp"
#include "charlier/series.hpp"

namespace charlier {

enum class Side { lhs, rhs };

struct BuildOptions {
    /// Mutation fixture: leave out the exponential prefactor of the RHS.
    bool drop_exp_prefactor = false;
};

/// Values of an identity's named parameters ("roles") as polynomials over a
/// common parameter set. Symbolic bindings send each role to its own
/// indeterminate; point bindings send each role to a rational constant;
/// anything else expresses a substitution between identities.
class Bindings {
public:
    Bindings(ParamSetPtr params, std::map<std::string, Polynomial, std::less<>> values);

    static Bindings symbolic(const std::vector<std::string>& roles);
    static Bindings at_point(const std::vector<std::string>& roles, const Point& point);

    const ParamSetPtr& params() const noexcept { return params_; }
    const Polynomial& operator[](std::string_view role) const;
    Polynomial constant(const ExactRational& c) const;

private:
    ParamSetPtr params_;
    std::map<std::string, Polynomial, std::less<>> values_;
};

using SideBuilder =
    std::function<TruncatedSeries(Side, const Bindings&, int order, const BuildOptions&)>;

struct IdentitySpec {
    std::string id;
    std::string reference;
    std::vector<std::string> roles;
    std::vector<std::string> series_vars;
    /// Largest order accepted without forcing.
    int max_order;
    SideBuilder build;

    /// Side with every role symbolic.
    TruncatedSeries side(Side s, int order, const BuildOptions& opts = {}) const;
};

/// Registered identity keys, excluding the oracle comparisons.
std::vector<std::string> identity_ids();

/// Looks up a registered identity; `k` selects the multilinear instance.
/// Throws std::out_of_range for unknown ids.
IdentitySpec find_identity(std::string_view id, int k = 2);

IdentitySpec multilinear_identity(int k);

// Side builders over arbitrary bindings of each identity's roles.
TruncatedSeries build_multilinear_side(Side side, int k, const Bindings& b, int order,
                                       const BuildOptions& opts = {});
TruncatedSeries build_multilinear_side(Side side, int k, int order, const BuildOptions& opts = {});

TruncatedSeries build_egf_side(Side side, const Bindings& b, int order, const BuildOptions& opts = {});
TruncatedSeries build_bilinear_side(Side side, const Bindings& b, int order,
                                    const BuildOptions& opts = {});
TruncatedSeries build_trilinear_side(Side side, const Bindings& b, int order,
                                     const BuildOptions& opts = {});
TruncatedSeries build_carlitz_side(Side side, const Bindings& b, int order,
                                   const BuildOptions& opts = {});
TruncatedSeries build_bilinear_general_side(Side side, const Bindings& b, int order,
                                            const BuildOptions& opts = {});
TruncatedSeries build_derangement_side(Side side, const Bindings& b, int order,
                                       const BuildOptions& opts = {});
TruncatedSeries build_derangement_trilinear_side(Side side, const Bindings& b, int order,
                                                 const BuildOptions& opts = {});
TruncatedSeries build_derangement_bilinear_general_side(Side side, const Bindings& b, int order,
                                                        const BuildOptions& opts = {});

// ---------------------------------------------------------------------------
// Verification

enum class VerifyMode { symbolic, random };

std::string to_string(VerifyMode m);

struct VerifyOptions {
    VerifyMode mode = VerifyMode::symbolic;
    int points = 20;
    std::uint64_t seed = 0;
    /// Allow orders above the identity's max_order.
    bool force = false;
    BuildOptions build;
};

struct Mismatch {
    Exponents degree;
    std::string lhs;
    std::string rhs;
    /// Index of the random point, in random mode.
    std::optional<int> point;
};

struct VerificationReport {
    std::string identity;
    std::string mode;
    int order = 0;
    std::vector<std::string> series_vars;
    /// degree_matches[d]: every coefficient of total degree d agrees.
    std::vector<bool> degree_matches;
    /// Sorted by total degree, then degree vector, then point.
    std::vector<Mismatch> mismatches;
    std::uint64_t seed = 0;
    int points = 0;
    std::vector<Point> point_values;
    double elapsed_ms = 0;

    bool verified() const;
    std::optional<int> first_failing_degree() const;
};

/// Coefficient-wise comparison of two sides, folded into `report`.
void compare_sides(const TruncatedSeries& lhs, const TruncatedSeries& rhs,
                   VerificationReport& report, std::optional<int> point = std::nullopt);

/// Throws std::out_of_range for unknown ids and algebra_error for bad orders.
VerificationReport verify(const IdentitySpec& spec, int order, const VerifyOptions& opts = {});
VerificationReport verify(std::string_view id, int order, const VerifyOptions& opts = {},
                          int k = 2);

enum class OracleKind { config, h };

/// Brute-force weighted counts against the closed forms, for every size
/// 0..n: configurations against charlier_C, or H(k, .) against
/// m! [z^m] of the multilinear LHS.
VerificationReport oracle_compare(OracleKind kind, int k, int n, const HBudget& budget = {});

std::string to_text(const VerificationReport& r);
/// Single JSON document; elapsed_ms only when `timing` is set.
std::string to_json(const VerificationReport& r, bool timing = false);

} // namespace charlier
