#include "idsolve/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "json.hpp"

#include "idsolve/errors.hpp"

namespace idsolve {

namespace {

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open for writing: " + path);
    return out;
}

ordered_json complex_json(const complexd& z) {
    return ordered_json{{"re", z.real()}, {"im", z.imag()}};
}

ordered_json trace_json(const IterationTrace& trace) {
    ordered_json rows = ordered_json::array();
    for (const auto& s : trace.steps) {
        ordered_json row;
        row["step"] = s.step;
        row["increment_h2"] = s.increment_h2;
        row["ratio"] = s.ratio ? ordered_json(*s.ratio) : ordered_json(nullptr);
        row["residual_l2"] =
            s.residual_l2 ? ordered_json(*s.residual_l2) : ordered_json(nullptr);
        row["wall_ms"] =
            s.wall_ms ? ordered_json(*s.wall_ms) : ordered_json(nullptr);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string status_name(CertificateStatus s) {
    switch (s) {
        case CertificateStatus::Certified: return "certified";
        case CertificateStatus::UncertifiedConvergent:
            return "uncertified-convergent";
        case CertificateStatus::Failed: return "failed";
    }
    return "?";
}

void dump(const std::string& path, const ordered_json& doc) {
    auto out = open_out(path);
    out << doc.dump(2) << "\n";
}

} // namespace

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_solvability_report(const std::string& path,
                              const PreparedProblem& prepared) {
    ordered_json doc;
    doc["validation"] = ordered_json{{"pass", prepared.validation.pass()},
                                     {"violations", prepared.validation.violations}};
    ordered_json eqs = ordered_json::array();
    for (std::size_t k = 0; k < prepared.tags.size(); ++k) {
        const auto& eq = prepared.spec.equations[k];
        ordered_json je;
        je["index"] = eq.index;
        je["a"] = eq.a;
        if (eq.b) je["b"] = *eq.b;
        if (eq.resonant_mode) je["resonant_mode"] = *eq.resonant_mode;
        je["case"] = to_string(prepared.tags[k]);
        auto es = essential_spectrum(eq, prepared.spec.domain, {});
        je["fredholm"] = es.fredholm;
        je["min_abs_symbol"] = es.min_abs;
        if (k < prepared.spectra.size()) {
            const auto& ks = prepared.spectra[k];
            ordered_json moments;
            moments["m0"] = ks.m0;
            if (prepared.spec.domain.is_real_line()) {
                moments["m1"] = ks.m1;
                moments["m2"] = ks.m2;
            } else {
                moments["c_norm"] = ks.c_norm;
            }
            je["kernel"] = ordered_json{{"family", prepared.spec.kernels[k].family_name()},
                                        {"moments", moments},
                                        {"sup_spectrum", ks.sup_bound},
                                        {"truncation_warning", ks.truncation_warning}};
        }
        ordered_json orth = ordered_json::array();
        if (k < prepared.orthogonality.size())
            for (const auto& e : prepared.orthogonality[k].entries)
                orth.push_back(ordered_json{{"condition", e.name},
                                            {"raw", complex_json(e.raw)},
                                            {"scale", e.scale},
                                            {"pass", e.pass}});
        je["orthogonality"] = std::move(orth);
        ordered_json modes = ordered_json::array();
        if (k < prepared.constraints.forced_zero_modes.size())
            for (long m : prepared.constraints.forced_zero_modes[k])
                modes.push_back(m);
        je["constrained_modes"] = std::move(modes);
        eqs.push_back(std::move(je));
    }
    doc["equations"] = std::move(eqs);
    doc["solvable"] = prepared.solvable;
    dump(path, doc);
}

void write_certificate(const std::string& path, const ContractionCertificate& c) {
    ordered_json doc;
    doc["per_equation"] = ordered_json::array();
    for (std::size_t k = 0; k < c.per_equation.size(); ++k)
        doc["per_equation"].push_back(
            ordered_json{{"bound", c.per_equation[k]},
                         {"group", c.drift[k] ? "drift" : "no-drift"}});
    doc["N_ab"] = c.N_ab;
    doc["M_a"] = c.M_a;
    doc["Q"] = c.Q;
    doc["L"] = c.L;
    doc["factor"] = c.factor;
    doc["pass"] = c.pass;
    doc["status"] = status_name(c.status);
    doc["grid_resolution"] = c.grid_resolution;
    dump(path, doc);
}

void emit_trace_csv(const std::string& path, const IterationTrace& trace) {
    auto out = open_out(path);
    out << "step,increment_h2,ratio,residual_l2,wall_ms\n";
    for (const auto& s : trace.steps) {
        out << s.step << ',' << fmt_double(s.increment_h2) << ',';
        if (s.ratio) out << fmt_double(*s.ratio);
        out << ',';
        if (s.residual_l2) out << fmt_double(*s.residual_l2);
        out << ',';
        if (s.wall_ms) out << fmt_double(*s.wall_ms);
        out << '\n';
    }
}

void emit_trace_json(const std::string& path, const IterationTrace& trace) {
    ordered_json doc;
    doc["steps"] = trace_json(trace);
    dump(path, doc);
}

void write_solution_csv(const std::string& path, const VectorField& u) {
    auto out = open_out(path);
    out << "x";
    for (std::size_t k = 1; k <= u.size(); ++k) out << ",u_" << k;
    out << "\n";
    const auto& dom = u.domain();
    for (std::size_t i = 0; i < dom.num_physical(); ++i) {
        out << fmt_double(dom.physical_point(i));
        for (std::size_t k = 0; k < u.size(); ++k)
            out << ',' << fmt_double(u[k].physical()[i]);
        out << '\n';
    }
}

void write_solution_json(const std::string& path, const VectorField& u) {
    ordered_json doc;
    const auto& dom = u.domain();
    doc["x"] = dom.physical_points();
    ordered_json comps = ordered_json::array();
    for (std::size_t k = 0; k < u.size(); ++k) comps.push_back(u[k].physical());
    doc["u"] = std::move(comps);
    dump(path, doc);
}

void write_residual_json(const std::string& path, const ResidualReport& r) {
    ordered_json doc;
    doc["l2"] = r.l2;
    doc["sup"] = r.sup;
    doc["total_l2"] = r.total_l2;
    doc["order_note"] = r.order_note;
    doc["truncation_warning"] = r.truncation_warning;
    dump(path, doc);
}

void write_spectrum_csv(const std::string& path, const ProblemSpec& problem) {
    auto out = open_out(path);
    out << "p";
    for (std::size_t k = 1; k <= problem.size(); ++k)
        out << ",re_lambda_" << k << ",im_lambda_" << k << ",abs_lambda_" << k;
    out << "\n";
    auto ps = problem.domain.frequencies();
    std::vector<EssentialSpectrum> curves;
    curves.reserve(problem.size());
    for (const auto& eq : problem.equations)
        curves.push_back(essential_spectrum(eq, problem.domain, ps));
    for (std::size_t i = 0; i < ps.size(); ++i) {
        out << fmt_double(ps[i]);
        for (const auto& es : curves) {
            out << ',' << fmt_double(es.curve[i].real()) << ','
                << fmt_double(es.curve[i].imag()) << ','
                << fmt_double(std::abs(es.curve[i]));
        }
        out << '\n';
    }
}

VectorField read_solution_csv(const std::string& path, const DomainSpec& domain,
                              std::size_t components) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open solution file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty solution file: " + path);
    std::vector<std::vector<double>> cols(components,
                                          std::vector<double>());
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(ss, cell, ','))
            vals.push_back(std::stod(cell));
        if (vals.size() != components + 1)
            throw IoError("solution row has " + std::to_string(vals.size()) +
                          " columns, expected " + std::to_string(components + 1));
        for (std::size_t k = 0; k < components; ++k)
            cols[k].push_back(vals[k + 1]);
        ++rows;
    }
    if (rows != domain.num_physical())
        throw GridMismatch("solution file has " + std::to_string(rows) +
                           " rows, the grid has " +
                           std::to_string(domain.num_physical()));
    std::vector<SpectralField> comps;
    comps.reserve(components);
    for (auto& c : cols)
        comps.push_back(SpectralField::from_physical(domain, std::move(c)));
    return VectorField(std::move(comps));
}

namespace {

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory " + dir + ": " +
                          ec.message());
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

int check_preconditions(const RunConfig& config, const PreparedProblem& prep) {
    if (!prep.validation.pass()) {
        for (const auto& v : prep.validation.violations)
            std::cerr << "validation: " << v << "\n";
        return config.numerics.strict_paper_mode ? 2 : 1;
    }
    return 0;
}

} // namespace

int run_check(const RunConfig& config) {
    ensure_dir(config.outputs.directory);
    PrepareOptions popts;
    popts.strict_paper_mode = config.numerics.strict_paper_mode;
    popts.audit_seed = config.numerics.seed + 1;
    PreparedProblem prep = prepare(config.problem, popts);
    write_solvability_report(
        join_path(config.outputs.directory, "solvability_report.json"), prep);
    if (int rc = check_preconditions(config, prep)) return rc;
    if (!prep.solvable) {
        for (const auto& f : prep.failing_conditions())
            std::cerr << "orthogonality: " << f << "\n";
        return 2;
    }
    write_certificate(join_path(config.outputs.directory, "certificate.json"),
                      prep.certificate);
    const auto& cert = prep.certificate;
    if (!cert.pass ||
        (config.numerics.certified_mode &&
         cert.status != CertificateStatus::Certified)) {
        std::cerr << "certificate: factor = " << fmt_double(cert.factor) << " ("
                  << status_name(cert.status) << ")\n";
        return 2;
    }
    std::cout << "check: solvable, factor = " << fmt_double(cert.factor) << " ("
              << status_name(cert.status) << ")\n";
    return 0;
}

int run_solve(const RunConfig& config) {
    ensure_dir(config.outputs.directory);
    PrepareOptions popts;
    popts.strict_paper_mode = config.numerics.strict_paper_mode;
    popts.audit_seed = config.numerics.seed + 1;
    PreparedProblem prep = prepare(config.problem, popts);
    write_solvability_report(
        join_path(config.outputs.directory, "solvability_report.json"), prep);
    if (int rc = check_preconditions(config, prep)) return rc;
    if (!prep.solvable) {
        for (const auto& f : prep.failing_conditions())
            std::cerr << "orthogonality: " << f << "\n";
        return 2;
    }
    write_certificate(join_path(config.outputs.directory, "certificate.json"),
                      prep.certificate);

    PicardOptions sopts;
    sopts.tol = config.numerics.tol;
    sopts.max_iter = config.numerics.max_iter;
    sopts.residual_cadence = config.outputs.residual_cadence;
    sopts.certified_mode = config.numerics.certified_mode;
    sopts.reference_mode = config.numerics.reference_mode;

    VectorField v0 = VectorField::zero(config.problem.domain,
                                       config.problem.size());
    IterationTrace trace;
    Solution sol{VectorField::zero(config.problem.domain, config.problem.size()),
                 {}, prep.certificate, false, {}, 0.0, 0, false};
    try {
        sol = picard_solve(prep, v0, sopts, &trace);
    } catch (const CertificateFailed& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const NoConvergence& e) {
        if (config.wants("csv"))
            emit_trace_csv(join_path(config.outputs.directory, "trace.csv"), trace);
        if (config.wants("json"))
            emit_trace_json(join_path(config.outputs.directory, "trace.json"),
                            trace);
        std::cerr << e.what() << "\n";
        return 3;
    }

    if (config.wants("csv")) {
        emit_trace_csv(join_path(config.outputs.directory, "trace.csv"),
                       sol.trace);
        write_solution_csv(join_path(config.outputs.directory, "solution.csv"),
                           sol.fixed_point);
    }
    if (config.wants("json")) {
        emit_trace_json(join_path(config.outputs.directory, "trace.json"),
                        sol.trace);
        write_solution_json(join_path(config.outputs.directory, "solution.json"),
                            sol.fixed_point);
    }
    auto rr = residual_physical(sol.fixed_point, config.problem);
    write_residual_json(join_path(config.outputs.directory, "residual_report.json"),
                        rr);
    ordered_json summary;
    summary["converged"] = sol.converged;
    summary["iterations"] = sol.iterations;
    summary["apriori_bound"] = sol.apriori_bound;
    summary["nontrivial"] = sol.nontrivial;
    ordered_json overlaps = ordered_json::array();
    for (const auto& o : sol.evidence.top)
        overlaps.push_back(ordered_json{{"equation", o.equation},
                                        {"frequency", o.frequency},
                                        {"magnitude", o.magnitude}});
    summary["support_overlaps"] = std::move(overlaps);
    summary["residual_total_l2"] = rr.total_l2;
    dump(join_path(config.outputs.directory, "summary.json"), summary);
    std::cout << "solve: converged in " << sol.iterations
              << " steps, residual L2 = " << fmt_double(rr.total_l2) << "\n";
    return 0;
}

int run_spectrum(const RunConfig& config) {
    ensure_dir(config.outputs.directory);
    write_spectrum_csv(join_path(config.outputs.directory, "spectrum.csv"),
                       config.problem);
    std::cout << "spectrum: wrote "
              << join_path(config.outputs.directory, "spectrum.csv") << "\n";
    return 0;
}

int run_oracle(const RunConfig& config, const std::string& solution_csv) {
    if (solution_csv.empty())
        throw ConfigParse("oracle subcommand requires --solution <csv>");
    ensure_dir(config.outputs.directory);
    VectorField u = read_solution_csv(solution_csv, config.problem.domain,
                                      config.problem.size());
    auto rr = residual_physical(u, config.problem);
    write_residual_json(join_path(config.outputs.directory, "residual_report.json"),
                        rr);
    std::cout << "oracle: residual L2 = " << fmt_double(rr.total_l2) << "\n";
    return 0;
}

int run_config(const std::string& config_path, const std::string& subcommand,
               const CliOverrides& overrides, const std::string& solution_csv) {
    try {
        RunConfig config = parse_config_file(config_path);
        if (overrides.out_dir) config.outputs.directory = *overrides.out_dir;
        if (overrides.seed) config.numerics.seed = *overrides.seed;
        if (overrides.strict) config.numerics.strict_paper_mode = true;

        if (subcommand == "check") return run_check(config);
        if (subcommand == "solve") return run_solve(config);
        if (subcommand == "spectrum") return run_spectrum(config);
        if (subcommand == "oracle") return run_oracle(config, solution_csv);
        throw ConfigParse("unknown subcommand: " + subcommand);
    } catch (const ConfigParse& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const IoError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const GridMismatch& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const NoConvergence& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        // solvability, certificate, constraint, ambiguity: infeasibility
        std::cerr << e.what() << "\n";
        return 2;
    }
}

} // namespace idsolve
