#include "sge/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace {

sge::Bindings split_params(const std::vector<std::string>& items) {
    sge::Bindings out;
    for (const auto& item : items) {
        auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw sge::UsageError("--param expects name=value, got '" + item + "'");
        out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    return out;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw sge::UsageError("cannot write '" + path.string() + "'");
    out << content;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sine-Gordon expansion solver for nonlinear evolution equations"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
    std::optional<std::size_t> max_pairs;
    app.add_option("--seed", seed, "Seed for residual sampling");
    app.add_option("--tol", tol, "Residual tolerance");
    app.add_option("--max-pairs", max_pairs, "Critical-pair cap for the Groebner computation");

    std::string problem_path, out_dir = ".";
    auto* solve = app.add_subcommand("solve", "Derive, solve and verify a problem file");
    solve->add_option("problem", problem_path, "Problem file")->required();
    solve->add_option("--out", out_dir, "Directory for <name>.json and <name>.txt");

    std::string report_path;
    std::vector<std::string> params;
    auto* verify = app.add_subcommand("verify", "Check every branch of a report numerically");
    verify->add_option("report", report_path, "Report JSON")->required();
    verify->add_option("--param", params, "Parameter binding name=value")->take_all();

    int branch = 0;
    std::string grid_spec, csv_path;
    auto* plot = app.add_subcommand("plot", "Sample a branch on a grid and write CSV");
    plot->add_option("report", report_path, "Report JSON")->required();
    plot->add_option("--branch", branch, "Branch id (1-based)")->required();
    plot->add_option("--grid", grid_spec, "eta:-5:5:201 or x:-5:5:51,t:-2:2:41,y=0")->required();
    plot->add_option("--out", csv_path, "CSV file")->required();
    plot->add_option("--param", params, "Parameter binding name=value")->take_all();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? sge::kExitOk : sge::kExitUsage;
    }

    sge::RunOptions opts{seed, tol, max_pairs};
    try {
        if (*solve) {
            sge::SolveResult res = sge::run_solve_file(problem_path, opts);
            std::cout << res.text;
            if (res.report.contains("problem")) {
                std::filesystem::path dir(out_dir);
                std::filesystem::create_directories(dir);
                std::string name = res.report.value("name", std::string());
                if (name.empty()) name = std::filesystem::path(problem_path).stem().string();
                write_file(dir / (name + ".json"), res.report.dump(2) + "\n");
                write_file(dir / (name + ".txt"), res.text);
            }
            return res.exit_code;
        }
        if (*verify) {
            sge::VerifyResult res = sge::run_verify(sge::read_json_file(report_path), split_params(params), opts);
            std::cout << res.text;
            return res.exit_code;
        }
        if (*plot) {
            std::string csv = sge::run_plot(sge::read_json_file(report_path), branch, sge::parse_grid(grid_spec),
                                            split_params(params));
            write_file(csv_path, csv);
            return sge::kExitOk;
        }
    } catch (const sge::UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return sge::kExitUsage;
    } catch (const sge::ProblemError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return sge::kExitParse;
    } catch (const sge::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return sge::kExitParse;
    } catch (const sge::RealizeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return sge::kExitUnresolved;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return sge::kExitUsage;
    }
    return sge::kExitUsage;
}
