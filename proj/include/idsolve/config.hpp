#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "idsolve/problem.hpp"
#include "idsolve/solver.hpp"

namespace idsolve {

struct NumericsConfig {
    double tol = 1e-10;
    std::size_t max_iter = 200;
    std::uint64_t seed = 0;
    bool strict_paper_mode = false;
    bool certified_mode = false;
    bool reference_mode = true;
};

struct OutputsConfig {
    std::string directory = "out";
    std::vector<std::string> formats = {"csv", "json"}; // subset of {csv, json}
    std::size_t residual_cadence = 5;
};

struct RunConfig {
    ProblemSpec problem;
    NumericsConfig numerics;
    OutputsConfig outputs;

    bool wants(const std::string& format) const {
        for (const auto& f : outputs.formats)
            if (f == format) return true;
        return false;
    }
};

// Parse the single-document JSON config.  ConfigParse with field diagnostics
// on malformed input.
RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);

} // namespace idsolve
