#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "idsolve/config.hpp"
#include "idsolve/errors.hpp"
#include "idsolve/oracle.hpp"
#include "idsolve/solver.hpp"

namespace py = pybind11;

namespace {

using namespace idsolve;

py::dict certificate_dict(const ContractionCertificate& c) {
    py::dict d;
    d["per_equation"] = c.per_equation;
    d["N_ab"] = c.N_ab;
    d["M_a"] = c.M_a;
    d["Q"] = c.Q;
    d["L"] = c.L;
    d["factor"] = c.factor;
    d["pass"] = c.pass;
    switch (c.status) {
        case CertificateStatus::Certified: d["status"] = "certified"; break;
        case CertificateStatus::UncertifiedConvergent:
            d["status"] = "uncertified-convergent";
            break;
        case CertificateStatus::Failed: d["status"] = "failed"; break;
    }
    return d;
}

PreparedProblem prepare_from_text(const RunConfig& config) {
    PrepareOptions popts;
    popts.strict_paper_mode = config.numerics.strict_paper_mode;
    popts.audit_seed = config.numerics.seed + 1;
    return prepare(config.problem, popts);
}

py::dict check_impl(const std::string& config_text) {
    RunConfig config = parse_config_text(config_text);
    PreparedProblem prep = prepare_from_text(config);
    py::dict d;
    d["validation_pass"] = prep.validation.pass();
    d["violations"] = prep.validation.violations;
    py::list cases;
    for (auto t : prep.tags) cases.append(to_string(t));
    d["cases"] = cases;
    d["solvable"] = prep.solvable;
    d["failing_conditions"] = prep.failing_conditions();
    if (prep.solvable) d["certificate"] = certificate_dict(prep.certificate);
    return d;
}

py::dict solve_impl(const std::string& config_text) {
    RunConfig config = parse_config_text(config_text);
    PreparedProblem prep = prepare_from_text(config);
    if (!prep.validation.pass())
        throw ConfigParse("problem failed validation: " +
                          prep.validation.violations.front());

    PicardOptions sopts;
    sopts.tol = config.numerics.tol;
    sopts.max_iter = config.numerics.max_iter;
    sopts.residual_cadence = config.outputs.residual_cadence;
    sopts.certified_mode = config.numerics.certified_mode;
    sopts.reference_mode = config.numerics.reference_mode;

    VectorField v0 = VectorField::zero(config.problem.domain,
                                       config.problem.size());
    Solution sol = picard_solve(prep, v0, sopts);
    ResidualReport rr = residual_physical(sol.fixed_point, config.problem);

    py::dict d;
    d["converged"] = sol.converged;
    d["iterations"] = sol.iterations;
    d["apriori_bound"] = sol.apriori_bound;
    d["nontrivial"] = sol.nontrivial;
    d["certificate"] = certificate_dict(sol.certificate);
    d["residual_total_l2"] = rr.total_l2;
    d["x"] = config.problem.domain.physical_points();
    py::list comps;
    for (std::size_t k = 0; k < sol.fixed_point.size(); ++k)
        comps.append(sol.fixed_point[k].physical());
    d["u"] = comps;
    return d;
}

// End-to-end self test: solve the closed-form fixture and report how far
// the iterate and its equation residual are from zero.
py::tuple manufactured_check_impl() {
    auto [problem, expected] = manufactured_case();
    PreparedProblem prep = prepare(problem);
    VectorField v0 = VectorField::zero(problem.domain, problem.size());
    Solution sol = picard_solve(prep, v0);
    double err = h2_norm_difference(sol.fixed_point, expected);
    ResidualReport rr = residual_physical(sol.fixed_point, problem);
    return py::make_tuple(err, rr.total_l2, sol.iterations);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "solver and contraction certifier for stationary nonlinear "
              "integro-differential systems";
    m.attr("__version__") = "0.1.0";

    py::class_<DomainSpec>(m, "Domain")
        .def_static("real_line", &DomainSpec::real_line, py::arg("half_width"),
                    py::arg("grid_points"))
        .def_static("periodic", &DomainSpec::periodic, py::arg("mode_cutoff"))
        .def_property_readonly("is_real_line", &DomainSpec::is_real_line)
        .def_property_readonly("grid_points", &DomainSpec::grid_points)
        .def_property_readonly("num_spectral", &DomainSpec::num_spectral)
        .def_property_readonly("dx", &DomainSpec::dx)
        .def_property_readonly("dp", &DomainSpec::dp)
        .def("physical_points", &DomainSpec::physical_points)
        .def("frequencies", &DomainSpec::frequencies);

    m.def(
        "forward_transform",
        [](const DomainSpec& d, const std::vector<double>& f) {
            return forward_transform(f, d);
        },
        py::arg("domain"), py::arg("samples"),
        "unitary Fourier transform of grid samples");
    m.def(
        "inverse_transform",
        [](const DomainSpec& d, const std::vector<complexd>& s) {
            return inverse_transform(s, d);
        },
        py::arg("domain"), py::arg("spectrum"),
        "inverse unitary Fourier transform back to grid samples");
    m.def(
        "h2_norm",
        [](const DomainSpec& d, const std::vector<std::vector<double>>& comps) {
            std::vector<SpectralField> fields;
            fields.reserve(comps.size());
            for (const auto& c : comps)
                fields.push_back(SpectralField::from_physical(d, c));
            return h2_norm(VectorField(std::move(fields)));
        },
        py::arg("domain"), py::arg("components"),
        "Sobolev H2 norm of a vector of grid functions");

    m.def("check", &check_impl, py::arg("config_json"),
          "classify, verify orthogonality and certify a configuration");
    m.def("solve", &solve_impl, py::arg("config_json"),
          "run the fixed-point iteration for a configuration");
    m.def("manufactured_check", &manufactured_check_impl,
          "(h2_error, residual_l2, iterations) on the closed-form fixture");

    py::register_exception<ConfigParse>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<SolvabilityViolation>(m, "SolvabilityError",
                                                 PyExc_ArithmeticError);
    py::register_exception<CertificateFailed>(m, "CertificateError",
                                              PyExc_ArithmeticError);
    py::register_exception<NoConvergence>(m, "ConvergenceError",
                                          PyExc_ArithmeticError);
}
