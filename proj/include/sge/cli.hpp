#pragma once

#include "sge/assembly.hpp"
#include "sge/pipeline.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sge {

using Json = nlohmann::ordered_json;

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitParse = 2,
    kExitInapplicable = 3,
    kExitCapExceeded = 4,
    kExitVerifyFailed = 5,
    kExitUnresolved = 6,
};

/// Command-line overrides of the problem's [options].
struct RunOptions {
    std::optional<std::uint64_t> seed;
    std::optional<double> tolerance;
    std::optional<std::size_t> max_pairs;
};

using Bindings = std::vector<std::pair<std::string, std::string>>;

struct SolveResult {
    int exit_code = kExitOk;
    Json report;
    std::string text;
};

/// Runs the whole pipeline. Failures past parsing still produce a report whose
/// "status" names the failure class.
SolveResult run_solve(const Problem& problem, const RunOptions& opts = {});
SolveResult run_solve_file(const std::string& path, const RunOptions& opts = {});

struct BranchVerification {
    int id = 0;
    std::string label;
    bool skipped = false;
    std::string note;
    VerificationReport report;
};

struct VerifyResult {
    int exit_code = kExitOk;
    std::vector<BranchVerification> branches;
    std::string text;
    Json summary;
};

/// Numeric residual check of every resolved branch of a report. `params`
/// override the problem's [bindings]; symbols left free default to 1/2.
VerifyResult run_verify(const Json& report, const Bindings& params = {}, const RunOptions& opts = {});

GridSpec parse_grid(const std::string& spec);
/// Header line, then one row per sample; 17 significant digits, LF endings.
std::string plot_csv(const PlotGrid& grid);
/// CSV text for branch `id` (1-based) of a report.
std::string run_plot(const Json& report, int id, const GridSpec& grid, const Bindings& params = {});

/// Closed form of a report branch rebuilt from its stored assignment.
ClosedForm report_closed_form(const Json& report, int id);

Json read_json_file(const std::string& path);

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace sge
