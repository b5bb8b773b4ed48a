#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli.hpp"

namespace {

std::string env_or(const char* name, const std::string& fallback) {
    const char* v = std::getenv(name);
    return v ? std::string(v) : fallback;
}

void add_common_flags(CLI::App* cmd, cgauss::cli::RunConfig& cfg, std::string& mode) {
    cmd->add_option("--mode", mode, "parallel | interleave | rational-oracle")
        ->check(CLI::IsMember({"parallel", "interleave", "rational-oracle"}));
    cmd->add_option("-p,--precision", cfg.precision, "verification precision (error bound 2^-p)");
    cmd->add_option("--fuel", cfg.fuel, "max probes per apartness search before giving up");
    cmd->add_option("--seed", cfg.seed, "seed for matrix generation");
    cmd->add_option("--dim", cfg.dim, "generated matrix dimension");
    cmd->add_option("--threads", cfg.threads, "worker cap for parallel races (0 = hardware)");
    cmd->add_option("--step-budget", cfg.step_budget, "steps per task per interleave round");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact matrix inversion over constructive reals with concurrently raced pivots"};
    app.require_subcommand(1);

    cgauss::cli::RunConfig cfg;
    cfg.threads = static_cast<unsigned>(std::stoul(env_or("CGAUSS_THREADS", "0")));
    std::string mode = env_or("CGAUSS_MODE", "parallel");
    std::string file;
    std::string expr;
    std::string target = "cauchy";
    int count = 8;

    CLI::App* invert = app.add_subcommand("invert", "Invert a matrix file and verify the residual");
    invert->add_option("file", file, "matrix JSON file")->required();
    add_common_flags(invert, cfg, mode);

    CLI::App* pivot = app.add_subcommand("pivot", "Race apartness searches over a vector file");
    pivot->add_option("file", file, "vector JSON file")->required();
    add_common_flags(pivot, cfg, mode);

    CLI::App* convert = app.add_subcommand("convert", "Print approximations or signed digits of a scalar");
    convert->add_option("expr", expr, "scalar: \"p/q\", \"pow2(-N)\" or \"delayed(p/q, c)\"")->required();
    convert->add_option("--to", target, "cauchy | memo | signed-digit")
        ->check(CLI::IsMember({"cauchy", "memo", "signed-digit"}));
    convert->add_option("-n,--count", count, "how many approximations or digits");

    CLI::App* bench = app.add_subcommand("bench", "Generate a hard-pivot matrix and compare modes");
    add_common_flags(bench, cfg, mode);

    CLI11_PARSE(app, argc, argv);

    try {
        cfg.mode = cgauss::cli::parse_mode(mode);
        if (invert->parsed()) return cgauss::cli::cmd_invert(file, cfg, std::cout, std::cerr);
        if (pivot->parsed()) return cgauss::cli::cmd_pivot(file, cfg, std::cout, std::cerr);
        if (convert->parsed())
            return cgauss::cli::cmd_convert(expr, target, count, std::cout, std::cerr);
        return cgauss::cli::cmd_bench(cfg, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
