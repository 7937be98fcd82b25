#pragma once

#include "fibdir/cli/config.hpp"
#include "fibdir/cli/report.hpp"
#include "fibdir/rank_cache.hpp"
#include "fibdir/verify.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace fibdir::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kBudget = 3 };

/// Optional parameters shared by the verify suites; unset fields fall back
/// to each suite's default scale.
struct SuiteParams {
    std::optional<double> x;
    std::optional<std::uint64_t> n;
    std::optional<double> s;
    std::optional<unsigned> depth;
    std::optional<std::string> which;
};

/// Names accepted by `verify`, in the order `verify all` runs them.
const std::vector<std::string>& suite_names();

/// Runs one named suite. Throws std::invalid_argument for an unknown name.
std::vector<VerificationReport> run_suite(const std::string& name, const SuiteParams& params, FibContext& ctx);

/// `contract fn depth n_max`: n, direct value, closed form (when known), match flag.
/// Rows whose factorizations exceed the budget are marked instead of aborting.
struct ContractRows {
    Table table;
    bool all_match = true;
    bool budget_hit = false;
};
ContractRows contract_table(const std::string& fn_name, unsigned depth, std::uint64_t n_max, FibContext& ctx);

/// Lambda-sum, e_p-sum and pi_alpha samples for each x.
Table asymptotics_table(const std::vector<std::uint64_t>& xs, std::uint64_t ep_max, FibContext& ctx,
                        bool* budget_hit = nullptr);

Table verification_table(const std::vector<VerificationReport>& reports);

/// Full command-line entry point; returns the process exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env);

}  // namespace fibdir::cli
