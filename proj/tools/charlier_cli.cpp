// Command-line front end: verify identities, run brute-force oracles, and
// list configurations or H-tuples.
//
// Exit status: 0 pass, 1 verification failure, 2 usage or budget error.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <numeric>
#include <string>

#include <CLI11.hpp>

#include "charlier/configs.hpp"
#include "charlier/identities.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
    std::string target;
    int order = -1;
    std::string mode = "symbolic";
    int points = 20;
    std::uint64_t seed = 0;
    int k = 2;
    int n = -1;
    bool count_only = false;
    bool force = false;
    bool timing = false;
    bool dump = false;
    std::string format = "text";
};

int emit(const charlier::VerificationReport& report, const RunConfig& cfg)
{
    if (cfg.format == "json-like") {
        std::cout << charlier::to_json(report, cfg.timing);
    } else {
        std::cout << charlier::to_text(report);
        if (cfg.timing) {
            std::cout << "elapsed_ms: " << report.elapsed_ms << '\n';
        }
    }
    std::cerr << report.identity << ": " << (report.verified() ? "verified" : "FAILED") << " in "
              << report.elapsed_ms << " ms\n";
    return report.verified() ? kExitPass : kExitFail;
}

charlier::HBudget budget_for(const RunConfig& cfg)
{
    charlier::HBudget budget;
    budget.force = cfg.force;
    return budget;
}

int run_oracle(const std::string& kind, int k, int n, const RunConfig& cfg)
{
    if (n < 0) {
        std::cerr << "error: --n is required\n";
        return kExitUsage;
    }
    if (kind == "config" || kind == "oracle-config") {
        return emit(charlier::oracle_compare(charlier::OracleKind::config, k, n, budget_for(cfg)),
                    cfg);
    }
    if (kind == "h" || kind == "H" || kind == "oracle-H" || kind == "oracle-h") {
        return emit(charlier::oracle_compare(charlier::OracleKind::h, k, n, budget_for(cfg)), cfg);
    }
    std::cerr << "error: unknown oracle kind '" << kind << "' (expected config or h)\n";
    return kExitUsage;
}

int cmd_verify(const RunConfig& cfg)
{
    if (cfg.target.rfind("oracle-", 0) == 0) {
        return run_oracle(cfg.target, cfg.k, cfg.n >= 0 ? cfg.n : cfg.order, cfg);
    }
    if (cfg.order < 0) {
        std::cerr << "error: --order is required\n";
        return kExitUsage;
    }
    charlier::IdentitySpec spec;
    try {
        spec = charlier::find_identity(cfg.target, cfg.k);
    } catch (const std::out_of_range& e) {
        std::cerr << "error: " << e.what() << "\nknown identities:";
        for (const auto& id : charlier::identity_ids()) {
            std::cerr << ' ' << id;
        }
        std::cerr << " oracle-config oracle-H\n";
        return kExitUsage;
    }
    charlier::VerifyOptions opts;
    opts.mode = cfg.mode == "random" ? charlier::VerifyMode::random : charlier::VerifyMode::symbolic;
    opts.points = cfg.points;
    opts.seed = cfg.seed;
    opts.force = cfg.force;
    return emit(charlier::verify(spec, cfg.order, opts), cfg);
}

int cmd_enumerate(const RunConfig& cfg)
{
    if (cfg.n < 0) {
        std::cerr << "error: --n is required\n";
        return kExitUsage;
    }
    std::uint64_t count = 0;
    if (cfg.target == "configs") {
        const int cap = cfg.force ? std::max(cfg.n, charlier::kDefaultConfigCap)
                                  : charlier::kDefaultConfigCap;
        charlier::LabelSet labels(static_cast<std::size_t>(cfg.n));
        std::iota(labels.begin(), labels.end(), 1);
        auto stream = charlier::enumerate_configs(labels, cap);
        while (auto c = stream.next()) {
            ++count;
            if (!cfg.count_only) {
                std::cout << *c << '\n';
            }
        }
    } else if (cfg.target == "h" || cfg.target == "H") {
        auto stream = charlier::enumerate_H(cfg.k, cfg.n, budget_for(cfg));
        while (const auto* t = stream.next()) {
            ++count;
            if (!cfg.count_only) {
                std::cout << *t << '\n';
                if (cfg.dump) {
                    std::cout << charlier::dump(charlier::superpose(*t));
                }
            }
        }
    } else {
        std::cerr << "error: unknown structure '" << cfg.target << "' (expected configs or h)\n";
        return kExitUsage;
    }
    if (cfg.count_only) {
        std::cout << count << '\n';
    }
    return kExitPass;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Charlier polynomial identities: verification and enumeration"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "Output format")
            ->check(CLI::IsMember({"text", "json-like"}));
        sub->add_flag("--force", cfg.force, "Ignore the default enumeration and order budgets");
        sub->add_flag("--timing", cfg.timing, "Include elapsed time in the report");
    };

    auto* verify = app.add_subcommand("verify", "Verify a registered generating-function identity");
    verify->add_option("identity", cfg.target, "Identity key")->required();
    verify->add_option("--order", cfg.order, "Truncation order")->check(CLI::NonNegativeNumber);
    verify->add_option("--mode", cfg.mode, "Comparison mode")
        ->check(CLI::IsMember({"symbolic", "random"}));
    verify->add_option("--points", cfg.points, "Random points")->check(CLI::PositiveNumber);
    verify->add_option("--seed", cfg.seed, "Random seed");
    verify->add_option("--k", cfg.k, "Number of configurations (multilinear, oracle-H)")
        ->check(CLI::Range(2, 9));
    verify->add_option("--n", cfg.n, "Size for oracle identities")->check(CLI::NonNegativeNumber);
    add_format(verify);

    auto* oracle = app.add_subcommand("oracle", "Compare brute-force enumeration to closed forms");
    oracle->add_option("kind", cfg.target, "config or h")->required();
    oracle->add_option("--k", cfg.k, "Number of configurations")->check(CLI::Range(2, 9));
    oracle->add_option("--n", cfg.n, "Largest size compared")
        ->required()
        ->check(CLI::NonNegativeNumber);
    add_format(oracle);

    auto* enumerate = app.add_subcommand("enumerate", "List configurations or H-tuples");
    enumerate->add_option("structure", cfg.target, "configs or h")->required();
    enumerate->add_option("--k", cfg.k, "Number of configurations")->check(CLI::Range(2, 9));
    enumerate->add_option("--n", cfg.n, "Label count")->required()->check(CLI::NonNegativeNumber);
    enumerate->add_flag("--count-only", cfg.count_only, "Print only the count");
    enumerate->add_flag("--dump", cfg.dump, "Also dump each tuple's digraph");
    enumerate->add_flag("--force", cfg.force, "Ignore the default enumeration budget");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*verify) {
            return cmd_verify(cfg);
        }
        if (*oracle) {
            return run_oracle(cfg.target, cfg.k, cfg.n, cfg);
        }
        return cmd_enumerate(cfg);
    } catch (const charlier::enumeration_budget_error& e) {
        std::cerr << "error: " << e.what() << " (use --force to override)\n";
        return kExitUsage;
    } catch (const charlier::algebra_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}
