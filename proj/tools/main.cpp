#include <cstdint>
#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"

#include "idsolve/report.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Stationary integro-differential systems: solvability "
                 "checks, contraction certificates, fixed-point solves"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool strict = false;
    std::string solution_csv;

    auto add_common = [&](CLI::App* sub, bool with_solution) {
        sub->add_option("--config", config_path, "run configuration (JSON)")
            ->required()
            ->check(CLI::ExistingFile);
        sub->add_option("--out", out_dir, "output directory override");
        sub->add_option("--seed", seed, "seed override for randomized audits");
        sub->add_flag("--strict", strict,
                      "enforce the full structural hypotheses");
        if (with_solution)
            sub->add_option("--solution", solution_csv,
                            "solution CSV to audit (columns x, u_1..u_N)")
                ->required()
                ->check(CLI::ExistingFile);
    };

    add_common(app.add_subcommand(
                   "check", "classify cases, verify orthogonality, certify "
                            "the contraction factor"),
               false);
    add_common(app.add_subcommand(
                   "solve", "run the fixed-point iteration and emit the "
                            "solution, trace and residual report"),
               false);
    add_common(app.add_subcommand(
                   "spectrum", "tabulate the symbol curves p^2 - a - i b p "
                               "over the frequency grid"),
               false);
    add_common(app.add_subcommand(
                   "oracle", "recompute the residual of a stored solution "
                             "with finite differences and direct quadrature"),
               true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // normalize CLI11's exit codes: anything other than --help is an
        // input error
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    idsolve::CliOverrides overrides;
    if (!out_dir.empty()) overrides.out_dir = out_dir;
    for (const auto* opt : app.get_subcommands()[0]->get_options())
        if (opt->get_name() == "--seed" && opt->count() > 0)
            overrides.seed = seed;
    overrides.strict = strict;

    const std::string sub = app.get_subcommands()[0]->get_name();
    try {
        return idsolve::run_config(config_path, sub, overrides, solution_csv);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}
