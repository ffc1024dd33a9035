#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "emlab/report.hpp"

namespace emlab {

// Effective settings of one CLI run.  Fields a flag never touched keep
// these defaults, and every report echoes the values the run actually used.
struct RunConfig {
    std::string subcommand;
    int64_t q = 3;
    int64_t m = 0; // 0: take the path length from the size formula
    int64_t n = 50;
    int64_t ell = 11;
    double eps = 1.0;
    int64_t samples = 5;
    int64_t bins = 40;
    int64_t budget = 4096;
    uint64_t seed = 0;
    double tol = -1.0;    // cluster tolerance override; negative: library default
    double l1_max = 0.05; // empirical histogram distance threshold
    bool petersen = false;
    std::string in_path;
    std::string out_path;
    std::string format = "json";
    std::vector<int64_t> ell_list = {11, 12, 13, 14, 15};
    std::vector<int64_t> m_list = {4, 5, 6, 7, 8};
    // Additive perturbation of the transfer function inside the linear
    // lower-bound clause of cmd_lemmas.  A test hook, never set by a flag:
    // a nonzero value must make that clause fail.
    double f_offset = 0.0;

    bool operator==(const RunConfig&) const = default;
};

// Plain-text serialization, one "key = value" line per field in a fixed
// order.  parse_config(render_config(c)) reproduces c exactly.
std::string render_config(const RunConfig& cfg);
RunConfig parse_config(const std::string& text);

// Cayley graph pipeline on the matrix-times-translation group.
Report cmd_cayley(const RunConfig& cfg);
// Degree-4 subdivided family on the scaled-shift group.
Report cmd_bounded(const RunConfig& cfg);
// Subdivided expander family with the transfer-function claims.
Report cmd_approx(const RunConfig& cfg);
// Averaged eigenvalue histogram of random cubic graphs against the limiting
// density; the threshold is empirical, not theorem-backed.
Report cmd_km(const RunConfig& cfg);
// Grid verification of the polynomial facts and the transfer-function
// estimates the constructions rest on.
Report cmd_lemmas(const RunConfig& cfg);
// Spectrum of a serialized graph file, rendered per cfg.format.
std::string cmd_spectrum(const RunConfig& cfg);

// Full command-line entry point.  Returns 0 when every applicable claim
// holds, 1 when some claim fails, 2 on unusable input (bad flags, bad
// files, violated preconditions).
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace emlab
