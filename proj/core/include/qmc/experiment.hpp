#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qmc/pointset.hpp"
#include "qmc/rational.hpp"

namespace qmc {

// Parsed key = value experiment description. See README for the key list.
struct ExperimentConfig {
    std::string construction;  // net | fibonacci | halton | zaremba | halton_shifted
    std::string matrix_file;   // for net; "{n}" expands to the zero-padded size
    int alpha = 0;             // 0 = as stored in the file; else verify or interlace
    bool tent = false;
    std::string kernel = "none";         // K1 | K2 | K3 | none
    std::string test_function = "none";  // pwlinear | bspline | none
    int d = 2;
    int n_min = -1, n_max = -1;  // digital sizes, N = 2^n
    int m_min = -1, m_max = -1;  // Fibonacci indices, N = F_m
    int replicates = 1;
    std::uint64_t seed = 1;
    int precision_digits = 30;
    std::string mode = "auto";  // exact | fixed60 | auto
    int threads = 1;
    int pw_nodes = 3;    // interior nodes of random piecewise-linear factors
    bool timing = true;  // false writes 0 seconds for byte-stable CSV
    std::int64_t window_n_min = -1, window_n_max = -1;  // slope-fit window on N

    void validate() const;  // throws ConfigError
};

ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

struct ExperimentRecord {
    std::string construction;
    std::string transform;  // none | tent | shift:<seed> | shift:<seed>+tent
    std::string kernel_or_function;
    int d = 0;
    std::uint64_t n_points = 0;
    std::string error;       // decimal string as written to the CSV
    Rational error_value;    // the same value exactly (replicate mean)
    Rational squared_error;  // exact for a single exact-mode replicate
    double seconds = 0.0;
};

struct ExperimentResult {
    std::vector<ExperimentRecord> records;
    bool slope_valid = false;
    double slope = 0.0;  // OLS on (log2 N, log2 error) over the window
    std::uint64_t window_lo = 0, window_hi = 0;
    std::string csv;
    std::string plot_script;
};

// One point set of the configured family: size_param is n (N = 2^n) or the
// Fibonacci index m; rep_seed feeds the random shift when there is one.
// Applies the tent transform when configured. Only the construction-related
// config fields matter here.
PointSet build_point_set(const ExperimentConfig& cfg, int size_param, std::uint64_t rep_seed);

// Runs the sweep the config describes; csv_name only appears inside the
// generated plot script.
ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const std::string& csv_name = "experiment.csv");

// Least-squares slope of log2(error) against log2(N); zero errors are
// skipped. Second member of the return is false when underdetermined.
std::pair<double, bool> fit_log2_slope(
    const std::vector<std::pair<std::uint64_t, Rational>>& points);

}  // namespace qmc
