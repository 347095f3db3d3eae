#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "gaplab/graph.hpp"

namespace gaplab {

struct SweepConfig {
    Vertex n = 10000;
    std::vector<double> t_grid;     // grid of t values; d = log(n)/t per point
    std::uint32_t trials = 5;       // independent graphs per grid point
    std::uint64_t master_seed = 1;  // stream index = grid_index * trials + trial
    double tol = 1e-8;              // eigensolver tolerance
    double epsilon = 0.05;          // window margin for the regime classification
    std::uint32_t threads = 0;      // 0 = hardware concurrency
    std::string out_stem;           // writes <stem>.csv, <stem>.json, <stem>.dat
    bool verbose = false;           // per-trial progress on stderr
};

// One (grid point, trial) result.  Predictions that do not apply to the row's
// regime stay NaN and serialize as empty cells.
struct SweepRow {
    double t = 0.0;
    double d = 0.0;
    std::uint32_t seed_index = 0;
    std::uint32_t t_star = 0; // 0 when the row is supercritical
    double lambda2 = nan_value();
    std::uint32_t kernel_dim = 0;
    double first_order = nan_value();
    double second_order = nan_value();
    double supercritical_first = nan_value();  // set iff d >= log n
    double supercritical_second = nan_value(); // set iff additionally min_degree != d
    std::uint64_t pendant_line_count = 0;
    Vertex min_degree = 0;
    std::string status = "ok"; // "ok", "stalled", or "error: ..."
    double runtime_ms = 0.0;   // wall clock; logged but kept out of output files

    static double nan_value();
};

struct SweepResult {
    SweepConfig config;
    std::vector<SweepRow> rows; // grid-major, trial-minor; independent of thread schedule
};

SweepResult run_sweep(const SweepConfig& config);

// Output files.  Rerunning the same configuration and master seed reproduces
// every byte, which is why wall-clock timings never appear here.
void write_sweep_csv(const SweepResult& result, std::ostream& out);
void write_sweep_json(const SweepResult& result, std::ostream& out);
void write_sweep_dat(const SweepResult& result, std::ostream& out); // per-grid-point aggregates
void write_sweep_files(const SweepResult& result); // all three next to config.out_stem

// Key-value configuration file: "key = value" lines, '#' comments.  Keys:
// n, t_grid (comma list or start:step:stop), trials, master_seed, tol,
// epsilon, threads, out, verbose.
SweepConfig load_sweep_config(std::istream& in);
SweepConfig load_sweep_config_file(const std::string& path);

// Grids matching the two standard figures: t in 1.0..3.2 step 0.1, and the
// dense-regime ramp t in 0.60..1.00 step 0.05.
SweepConfig default_sparse_sweep();
SweepConfig default_dense_sweep();

// Cross-checks the structural claims behind the predictions: the closed-form
// line spectrum against the numeric eigensolver for t = 1..50, the
// anchored-tree minimum scan for every t <= t_max, the adjacency norm bound
// sqrt(2 * max degree) over all trees up to 10 vertices, and the Rayleigh
// refinement error envelope 10 * eps^2 / delta on randomized instances.
// threshold_offset shifts the minimality bound to let tests inject a
// deliberate failure.
struct VerificationReport {
    bool ok = false;
    double line_check_max_dev = 0.0;
    struct OracleSummary {
        std::uint32_t t = 0;
        std::size_t rows = 0;
        std::size_t violations = 0;
        std::size_t equality_cases = 0;
        double min_value = 0.0;
        double bound = 0.0;
        std::string first_violation; // "code anchor value", empty if none
    };
    std::vector<OracleSummary> oracle;
    double norm_margin = 0.0;      // max over trees of ||A|| - sqrt(2 max_deg), wants <= 0
    std::size_t norm_cases = 0;
    double rayleigh_worst = 0.0;   // max |refined - exact| / (10 eps^2 / delta), wants <= 1
    std::size_t rayleigh_cases = 0;
};
VerificationReport verify_propositions(std::uint32_t t_max, double threshold_offset = 0.0);
void print_verification(const VerificationReport& report, std::ostream& out);

// Samples graphs at the window boundary d = log(n)/t_star and reports how
// often lambda2 lands inside the two-sided line band widened by kappa/d.
// Informational: the band check never throws on misses.
struct IntermediateBandReport {
    double d = 0.0;
    double lower = 0.0;      // line bound for length t_star
    double upper = 0.0;      // line bound for length t_star - 1
    double margin = 0.0;     // kappa/d
    std::uint32_t trials = 0;
    std::uint32_t in_band = 0;
    std::vector<double> lambda2_values;
};
IntermediateBandReport intermediate_bounds_check(Vertex n, std::uint32_t t_star,
                                                 std::uint32_t trials, std::uint64_t seed,
                                                 double kappa = 10.0, double tol = 1e-8);

} // namespace gaplab
