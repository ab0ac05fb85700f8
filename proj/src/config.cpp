#include "idsolve/config.hpp"

#include <fstream>
#include <optional>
#include <sstream>

#include "json.hpp"

#include "idsolve/errors.hpp"

namespace idsolve {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ConfigParse(where + ": " + what);
}

const json& need(const json& j, const char* key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end()) fail(where, std::string("missing field '") + key + "'");
    return *it;
}

Profile parse_profile(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "profile must be an object");
    std::string family = need(j, "family", where).get<std::string>();
    const json params = j.value("params", json::object());
    auto amp = [&] { return params.value("amplitude", 1.0); };
    if (family == "zero") return Profile::zero();
    if (family == "gaussian")
        return Profile::gaussian(amp(), params.value("sigma", 1.0));
    if (family == "odd-gaussian" || family == "odd_gaussian")
        return Profile::odd_gaussian(amp(), params.value("sigma", 1.0));
    if (family == "cosine")
        return Profile::cosine(amp(), params.value("harmonic", 1),
                               params.value("phase", 0.0));
    if (family == "tabulated") {
        if (!params.contains("values"))
            fail(where, "tabulated profile needs params.values");
        return Profile::tabulated(params["values"].get<std::vector<double>>());
    }
    fail(where, "unknown profile family '" + family +
                    "' (expected zero|gaussian|odd-gaussian|cosine|tabulated)");
}

std::vector<ComponentFn> parse_forcing(const json& j, std::size_t n,
                                       const std::string& where) {
    std::vector<ComponentFn> out;
    if (j.is_array()) {
        for (std::size_t k = 0; k < j.size(); ++k)
            out.push_back(ComponentFn::of(
                parse_profile(j[k], where + "[" + std::to_string(k) + "]")));
    } else {
        out.push_back(ComponentFn::of(parse_profile(j, where)));
    }
    if (out.size() != n)
        fail(where, "expected " + std::to_string(n) + " component profiles, got " +
                        std::to_string(out.size()));
    return out;
}

NonlinearityModel parse_nonlinearity(const json& j, std::size_t n,
                                     const std::string& where) {
    std::string family = need(j, "family", where).get<std::string>();
    std::optional<double> declared_K;
    if (j.contains("declared_K")) declared_K = j["declared_K"].get<double>();
    std::optional<ComponentFn> h;
    if (j.contains("h")) h = ComponentFn::of(parse_profile(j["h"], where + ".h"));

    if (family == "affine") {
        auto A = need(j, "A", where).get<std::vector<std::vector<double>>>();
        auto g = parse_forcing(need(j, "g", where), n, where + ".g");
        return NonlinearityModel::affine(std::move(A), std::move(g), declared_K,
                                         std::move(h));
    }
    if (family == "saturating") {
        auto sigma = need(j, "sigma", where).get<std::vector<double>>();
        auto c = need(j, "c", where).get<std::vector<std::vector<double>>>();
        auto g = parse_forcing(need(j, "g", where), n, where + ".g");
        std::optional<double> declared_L;
        if (j.contains("declared_L")) declared_L = j["declared_L"].get<double>();
        return NonlinearityModel::saturating(std::move(sigma), std::move(c),
                                             std::move(g), declared_L, declared_K,
                                             std::move(h));
    }
    if (family == "tabulated") {
        auto samples =
            need(j, "values", where).get<std::vector<std::vector<double>>>();
        double L = j.value("declared_L", 0.0);
        double K = j.value("declared_K", 0.0);
        return NonlinearityModel::tabulated(std::move(samples), L, K);
    }
    fail(where, "unknown nonlinearity family '" + family +
                    "' (expected affine|saturating|tabulated)");
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigParse(e.what());
    }
    try {
        const json& jp = need(doc, "problem", "config");
        const json& jnum = doc.value("numerics", json::object());
        const json& jout = doc.value("outputs", json::object());

        std::string domain_kind =
            need(jp, "domain", "problem").get<std::string>();
        DomainSpec domain = [&] {
            if (domain_kind == "real_line" || domain_kind == "realline") {
                double X = jnum.value("X", 16.0);
                std::size_t M = jnum.value("M", std::size_t{512});
                return DomainSpec::real_line(X, M);
            }
            if (domain_kind == "periodic" || domain_kind == "interval") {
                std::size_t n_max = jnum.value("N_max", std::size_t{64});
                return DomainSpec::periodic(n_max);
            }
            fail("problem.domain", "expected 'real_line' or 'periodic', got '" +
                                       domain_kind + "'");
        }();

        const json& jeqs = need(jp, "equations", "problem");
        if (!jeqs.is_array() || jeqs.empty())
            fail("problem.equations", "must be a nonempty array");
        std::vector<EquationSpec> equations;
        std::vector<Profile> kernels;
        for (std::size_t k = 0; k < jeqs.size(); ++k) {
            const std::string where = "problem.equations[" + std::to_string(k) + "]";
            const json& je = jeqs[k];
            EquationSpec eq;
            eq.index = static_cast<int>(k) + 1;
            eq.a = need(je, "a", where).get<double>();
            if (je.contains("b") && !je["b"].is_null())
                eq.b = je["b"].get<double>();
            if (je.contains("resonant_mode") && !je["resonant_mode"].is_null())
                eq.resonant_mode = je["resonant_mode"].get<int>();
            try {
                eq.validate();
            } catch (const Error& e) {
                fail(where, e.what());
            }
            equations.push_back(eq);
            kernels.push_back(
                parse_profile(need(je, "kernel", where), where + ".kernel"));
        }

        NonlinearityModel model = parse_nonlinearity(
            need(jp, "nonlinearity", "problem"), equations.size(),
            "problem.nonlinearity");

        RunConfig rc{ProblemSpec{domain, std::move(equations), std::move(kernels),
                                 std::move(model)},
                     {}, {}};
        rc.numerics.tol = jnum.value("tol", 1e-10);
        if (!(rc.numerics.tol > 0.0)) fail("numerics.tol", "must be > 0");
        rc.numerics.max_iter = jnum.value("max_iter", std::size_t{200});
        rc.numerics.seed = jnum.value("seed", std::uint64_t{0});
        rc.numerics.strict_paper_mode = jnum.value("strict_paper_mode", false);
        rc.numerics.certified_mode = jnum.value("certified_mode", false);
        rc.numerics.reference_mode = jnum.value("reference_mode", true);

        rc.outputs.directory = jout.value("directory", std::string("out"));
        rc.outputs.residual_cadence =
            jout.value("residual_cadence", std::size_t{5});
        if (jout.contains("formats")) {
            rc.outputs.formats = jout["formats"].get<std::vector<std::string>>();
            if (rc.outputs.formats.empty())
                fail("outputs.formats", "must be nonempty");
            for (const auto& f : rc.outputs.formats)
                if (f != "csv" && f != "json")
                    fail("outputs.formats", "unknown format '" + f + "'");
        }
        return rc;
    } catch (const json::exception& e) {
        throw ConfigParse(e.what());
    }
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigParse("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

} // namespace idsolve
