#pragma once

#include <string>

#include "idsolve/config.hpp"
#include "idsolve/oracle.hpp"
#include "idsolve/solver.hpp"

namespace idsolve {

// %.17g (shortest exact round-trip is not guaranteed by the standard
// library at this language level; 17 significant digits are)
std::string fmt_double(double v);

// writers; every CSV cell goes through fmt_double so identical runs emit
// identical bytes
void write_solvability_report(const std::string& path,
                              const PreparedProblem& prepared);
void write_certificate(const std::string& path, const ContractionCertificate& c);
void emit_trace_csv(const std::string& path, const IterationTrace& trace);
void emit_trace_json(const std::string& path, const IterationTrace& trace);
void write_solution_csv(const std::string& path, const VectorField& u);
void write_solution_json(const std::string& path, const VectorField& u);
void write_residual_json(const std::string& path, const ResidualReport& r);
void write_spectrum_csv(const std::string& path, const ProblemSpec& problem);

// Read a solution CSV (columns x, u_1..u_N) back onto the problem grid.
VectorField read_solution_csv(const std::string& path, const DomainSpec& domain,
                              std::size_t components);

struct CliOverrides {
    std::optional<std::string> out_dir;
    std::optional<std::uint64_t> seed;
    bool strict = false;
};

// Subcommand pipelines; return the process exit code:
// 0 success, 1 input error, 2 mathematical infeasibility, 3 non-convergence.
int run_check(const RunConfig& config);
int run_solve(const RunConfig& config);
int run_spectrum(const RunConfig& config);
int run_oracle(const RunConfig& config, const std::string& solution_csv);

// Parse + dispatch; maps ConfigParse/IoError to exit 1.
int run_config(const std::string& config_path, const std::string& subcommand,
               const CliOverrides& overrides,
               const std::string& solution_csv = "");

} // namespace idsolve
