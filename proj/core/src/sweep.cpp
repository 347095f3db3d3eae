#include "gaplab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <mutex>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "gaplab/gap_solver.hpp"
#include "gaplab/predict.hpp"
#include "gaplab/rng.hpp"
#include "gaplab/scan.hpp"
#include "gaplab/tree_spectra.hpp"

namespace gaplab {

double SweepRow::nan_value() { return std::numeric_limits<double>::quiet_NaN(); }

namespace {

std::string fmt(double v, const char* spec) {
    char buf[64];
    std::snprintf(buf, sizeof buf, spec, v);
    return buf;
}

// Human-facing tables use 12 significant digits, the JSON mirror uses 17 so
// values round-trip exactly.  Both are pure functions of the double, which
// keeps reruns byte-identical.
std::string fmt_cell(double v) { return std::isnan(v) ? std::string() : fmt(v, "%.12g"); }
std::string fmt_json(double v) { return std::isnan(v) ? std::string("null") : fmt(v, "%.17g"); }

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out;
}

SweepRow run_trial(const SweepConfig& cfg, std::size_t grid_index, std::uint32_t trial) {
    SweepRow row;
    row.t = cfg.t_grid[grid_index];
    row.seed_index = trial;
    const auto started = std::chrono::steady_clock::now();
    try {
        const double logn = std::log(static_cast<double>(cfg.n));
        row.d = logn / row.t;
        const std::uint64_t stream = static_cast<std::uint64_t>(grid_index) * cfg.trials + trial;
        Graph g = generate_er(cfg.n, row.d, RngSeed{cfg.master_seed, stream});
        row.min_degree = *std::min_element(g.degrees.begin(), g.degrees.end());

        if (row.d >= logn) {
            const auto sc = predict_supercritical(static_cast<double>(row.min_degree), row.d);
            row.supercritical_first = sc.first_order;
            if (sc.second_defined) row.supercritical_second = sc.second_order;
        } else {
            const RegimeClass rc = regime_t_star(cfg.n, row.d, cfg.epsilon);
            row.t_star =
                rc.regime == Regime::subcritical ? rc.t_star : nominal_t_star(cfg.n, row.d);
            row.first_order = predict_first_order(row.t_star);
            row.second_order = predict_second_order(cfg.n, row.d, row.t_star);
            row.pendant_line_count = find_pendant_lines(g, row.t_star).size();
        }

        SpectralReport solve;
        try {
            solve = lambda2(g, cfg.tol);
        } catch (const SolverStall& stall) {
            solve = stall.best;
            row.status = "stalled";
        }
        row.lambda2 = solve.lambda2;
        row.kernel_dim = solve.kernel_dim;
    } catch (const std::exception& e) {
        row.status = std::string("error: ") + e.what();
    }
    row.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started)
            .count();
    return row;
}

} // namespace

SweepResult run_sweep(const SweepConfig& config) {
    if (config.t_grid.empty()) throw std::invalid_argument("run_sweep: empty t grid");
    if (config.trials == 0) throw std::invalid_argument("run_sweep: trials must be positive");
    for (double t : config.t_grid)
        if (!(t > 0.0)) throw std::invalid_argument("run_sweep: grid values must be positive");

    SweepResult result;
    result.config = config;
    const std::size_t total = config.t_grid.size() * config.trials;
    result.rows.resize(total);

    std::uint32_t threads = config.threads;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<std::uint32_t>(std::min<std::size_t>(threads, total));

    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t task = next.fetch_add(1);
            if (task >= total) return;
            const std::size_t gi = task / config.trials;
            const auto trial = static_cast<std::uint32_t>(task % config.trials);
            SweepRow row = run_trial(config, gi, trial);
            if (config.verbose) {
                std::lock_guard<std::mutex> lock(log_mutex);
                std::cerr << "sweep t=" << fmt_cell(row.t) << " trial=" << trial
                          << " lambda2=" << fmt_cell(row.lambda2) << " status=" << row.status
                          << " (" << fmt(row.runtime_ms, "%.0f") << " ms)\n";
            }
            result.rows[task] = std::move(row);
        }
    };

    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (std::uint32_t i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return result;
}

void write_sweep_csv(const SweepResult& result, std::ostream& out) {
    out << "t,d,seed_index,t_star,lambda2,kernel_dim,first_order,second_order,"
           "supercritical_first,supercritical_second,pendant_line_count,min_degree,status\n";
    for (const auto& r : result.rows) {
        out << fmt_cell(r.t) << ',' << fmt_cell(r.d) << ',' << r.seed_index << ',';
        if (r.t_star > 0) out << r.t_star;
        out << ',' << fmt_cell(r.lambda2) << ',' << r.kernel_dim << ',' << fmt_cell(r.first_order)
            << ',' << fmt_cell(r.second_order) << ',' << fmt_cell(r.supercritical_first) << ','
            << fmt_cell(r.supercritical_second) << ',';
        if (r.t_star > 0) out << r.pendant_line_count;
        out << ',' << r.min_degree << ',' << csv_escape(r.status) << '\n';
    }
}

void write_sweep_json(const SweepResult& result, std::ostream& out) {
    const auto& cfg = result.config;
    out << "{\"config\":{\"n\":" << cfg.n << ",\"t_grid\":[";
    for (std::size_t i = 0; i < cfg.t_grid.size(); ++i)
        out << (i ? "," : "") << fmt_json(cfg.t_grid[i]);
    out << "],\"trials\":" << cfg.trials << ",\"master_seed\":" << cfg.master_seed
        << ",\"tol\":" << fmt_json(cfg.tol) << ",\"epsilon\":" << fmt_json(cfg.epsilon)
        << "},\"rows\":[";
    for (std::size_t i = 0; i < result.rows.size(); ++i) {
        const auto& r = result.rows[i];
        out << (i ? "," : "") << "{\"t\":" << fmt_json(r.t) << ",\"d\":" << fmt_json(r.d)
            << ",\"seed_index\":" << r.seed_index << ",\"t_star\":" << r.t_star
            << ",\"lambda2\":" << fmt_json(r.lambda2) << ",\"kernel_dim\":" << r.kernel_dim
            << ",\"first_order\":" << fmt_json(r.first_order)
            << ",\"second_order\":" << fmt_json(r.second_order)
            << ",\"supercritical_first\":" << fmt_json(r.supercritical_first)
            << ",\"supercritical_second\":" << fmt_json(r.supercritical_second)
            << ",\"pendant_line_count\":" << r.pendant_line_count
            << ",\"min_degree\":" << r.min_degree << ",\"status\":\"" << json_escape(r.status)
            << "\"}";
    }
    out << "]}\n";
}

void write_sweep_dat(const SweepResult& result, std::ostream& out) {
    out << "# t d lambda2_mean lambda2_min lambda2_max first_order second_order"
           " supercritical_first_mean supercritical_second_mean rows_used\n";
    const std::uint32_t trials = result.config.trials;
    for (std::size_t gi = 0; gi * trials < result.rows.size(); ++gi) {
        double sum = 0.0, lo = 0.0, hi = 0.0, sc1 = 0.0, sc2 = 0.0;
        std::size_t used = 0, sc1_used = 0, sc2_used = 0;
        const SweepRow* sample = nullptr;
        for (std::uint32_t k = 0; k < trials; ++k) {
            const auto& r = result.rows[gi * trials + k];
            sample = &r;
            if (!std::isnan(r.lambda2)) {
                if (used == 0) {
                    lo = hi = r.lambda2;
                } else {
                    lo = std::min(lo, r.lambda2);
                    hi = std::max(hi, r.lambda2);
                }
                sum += r.lambda2;
                ++used;
            }
            if (!std::isnan(r.supercritical_first)) {
                sc1 += r.supercritical_first;
                ++sc1_used;
            }
            if (!std::isnan(r.supercritical_second)) {
                sc2 += r.supercritical_second;
                ++sc2_used;
            }
        }
        auto dat = [](double v) { return std::isnan(v) ? std::string("nan") : fmt(v, "%.12g"); };
        const double mean = used ? sum / static_cast<double>(used) : SweepRow::nan_value();
        out << dat(sample->t) << ' ' << dat(sample->d) << ' ' << dat(mean) << ' '
            << dat(used ? lo : SweepRow::nan_value()) << ' '
            << dat(used ? hi : SweepRow::nan_value()) << ' ' << dat(sample->first_order) << ' '
            << dat(sample->second_order) << ' '
            << dat(sc1_used ? sc1 / static_cast<double>(sc1_used) : SweepRow::nan_value()) << ' '
            << dat(sc2_used ? sc2 / static_cast<double>(sc2_used) : SweepRow::nan_value()) << ' '
            << used << '\n';
    }
}

void write_sweep_files(const SweepResult& result) {
    const std::string stem = result.config.out_stem.empty() ? "sweep" : result.config.out_stem;
    struct Sink {
        const char* ext;
        void (*writer)(const SweepResult&, std::ostream&);
    };
    for (const Sink& s : {Sink{".csv", write_sweep_csv}, Sink{".json", write_sweep_json},
                          Sink{".dat", write_sweep_dat}}) {
        std::ofstream out(stem + s.ext, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open output file " + stem + s.ext);
        s.writer(result, out);
    }
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        double start = 0.0, step = 0.0, stop = 0.0;
        char c1 = 0, c2 = 0;
        std::istringstream in(text);
        if (!(in >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':')
            throw std::invalid_argument("bad grid range, expected start:step:stop");
        if (!(step > 0.0) || stop < start)
            throw std::invalid_argument("grid range needs step > 0 and stop >= start");
        const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
        for (std::size_t i = 0; i < count; ++i)
            grid.push_back(start + static_cast<double>(i) * step);
        return grid;
    }
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        item = trim(item);
        if (item.empty()) throw std::invalid_argument("empty grid entry");
        grid.push_back(std::stod(item));
    }
    if (grid.empty()) throw std::invalid_argument("empty grid");
    return grid;
}

} // namespace

SweepConfig load_sweep_config(std::istream& in) {
    SweepConfig cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (value.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty value");
        try {
            if (key == "n")
                cfg.n = static_cast<Vertex>(std::stoul(value));
            else if (key == "t_grid")
                cfg.t_grid = parse_grid(value);
            else if (key == "trials")
                cfg.trials = static_cast<std::uint32_t>(std::stoul(value));
            else if (key == "master_seed")
                cfg.master_seed = std::stoull(value);
            else if (key == "tol")
                cfg.tol = std::stod(value);
            else if (key == "epsilon")
                cfg.epsilon = std::stod(value);
            else if (key == "threads")
                cfg.threads = static_cast<std::uint32_t>(std::stoul(value));
            else if (key == "out")
                cfg.out_stem = value;
            else if (key == "verbose")
                cfg.verbose = value == "1" || value == "true" || value == "yes";
            else
                throw std::invalid_argument("unknown key '" + key + "'");
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
        }
    }
    return cfg;
}

SweepConfig load_sweep_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file " + path);
    return load_sweep_config(in);
}

SweepConfig default_sparse_sweep() {
    SweepConfig cfg;
    cfg.n = 10000;
    for (int i = 10; i <= 32; ++i) cfg.t_grid.push_back(static_cast<double>(i) / 10.0);
    cfg.trials = 5;
    cfg.master_seed = 20260814;
    cfg.out_stem = "sweep_sparse";
    return cfg;
}

SweepConfig default_dense_sweep() {
    SweepConfig cfg;
    cfg.n = 10000;
    for (int i = 12; i <= 20; ++i) cfg.t_grid.push_back(static_cast<double>(i) / 20.0);
    cfg.trials = 5;
    cfg.master_seed = 20260814;
    cfg.out_stem = "sweep_dense";
    return cfg;
}

VerificationReport verify_propositions(std::uint32_t t_max, double threshold_offset) {
    if (t_max < 1 || t_max > 8)
        throw std::invalid_argument("verify_propositions: t_max must be in 1..8");

    VerificationReport report;
    report.ok = true;

    for (std::uint32_t t = 1; t <= 50; ++t) {
        AnchoredTree line;
        line.t = t;
        for (std::uint32_t v = 0; v + 1 < t; ++v) line.edges.emplace_back(v, v + 1);
        line.anchor.emplace_back(t - 1, 1);
        const auto numeric = sym_eigen(weighted_laplacian(line)).eigenvalues;
        const auto closed = line_spectrum_closed_form(t);
        for (std::uint32_t k = 0; k < t; ++k)
            report.line_check_max_dev =
                std::max(report.line_check_max_dev, std::abs(numeric[k] - closed[k]));
    }
    if (report.line_check_max_dev > 1e-10) report.ok = false;

    for (std::uint32_t t = 1; t <= t_max; ++t) {
        const MinimalityReport mr = minimality_oracle(t, 2, threshold_offset);
        VerificationReport::OracleSummary s;
        s.t = t;
        s.rows = mr.rows.size();
        s.violations = mr.violations.size();
        s.equality_cases = mr.equality_cases.size();
        s.bound = mr.bound;
        s.min_value = mr.rows[mr.argmin_index].min_nonzero;
        if (!mr.violations.empty()) {
            const auto& row = mr.rows[mr.violations.front()];
            s.first_violation =
                row.tree_code + " " + row.anchor + " " + fmt(row.min_nonzero, "%.17g");
        }
        if (!mr.ok) report.ok = false;
        report.oracle.push_back(std::move(s));
    }

    report.norm_margin = -std::numeric_limits<double>::infinity();
    for (std::uint32_t t = 2; t <= 10; ++t) {
        for (const auto& tree : enumerate_trees(t)) {
            std::vector<std::uint32_t> deg(t, 0);
            for (const auto& e : tree.edges) {
                ++deg[e.first];
                ++deg[e.second];
            }
            const auto max_deg = *std::max_element(deg.begin(), deg.end());
            const double margin =
                tree_adjacency_norm(tree.edges) - std::sqrt(2.0 * max_deg);
            report.norm_margin = std::max(report.norm_margin, margin);
            ++report.norm_cases;
        }
    }
    if (report.norm_margin > 1e-12) report.ok = false;

    // Randomized check that one Rayleigh correction lands within the claimed
    // 10 * eps^2 / delta of the isolated eigenvalue it refines.
    Xoshiro256PlusPlus rng(RngSeed{0x52415948u, 0});
    const std::uint32_t dim = 8;
    while (report.rayleigh_cases < 100) {
        DenseSymMatrix m(dim);
        for (std::uint32_t i = 0; i < dim; ++i)
            for (std::uint32_t j = i; j < dim; ++j) {
                const double v = 2.0 * rng.next_double() - 1.0;
                m.at(i, j) = v;
                m.at(j, i) = v;
            }
        const EigenDecomposition full = sym_eigen_full(m);
        const auto j = static_cast<std::uint32_t>(rng.next_below(dim));
        double delta = std::numeric_limits<double>::infinity();
        for (std::uint32_t i = 0; i < dim; ++i)
            if (i != j) delta = std::min(delta, std::abs(full.eigenvalues[i] - full.eigenvalues[j]));
        if (delta < 1e-3) continue; // nearly degenerate draw, not a useful instance

        std::vector<double> v(dim), noise(dim);
        double vn = 0.0;
        for (std::uint32_t i = 0; i < dim; ++i) {
            v[i] = full.vectors.at(i, j);
            noise[i] = 2.0 * rng.next_double() - 1.0;
        }
        double proj = 0.0, nn = 0.0;
        for (std::uint32_t i = 0; i < dim; ++i) proj += noise[i] * v[i];
        for (std::uint32_t i = 0; i < dim; ++i) {
            noise[i] -= proj * v[i];
            nn += noise[i] * noise[i];
        }
        if (nn < 1e-12) continue;
        const double eta = 0.03 * delta / std::sqrt(nn);
        for (std::uint32_t i = 0; i < dim; ++i) {
            v[i] += eta * noise[i];
            vn += v[i] * v[i];
        }
        vn = std::sqrt(vn);
        for (auto& x : v) x /= vn;

        const double lambda_exact = full.eigenvalues[j];
        const double lambda_guess = lambda_exact + 0.02 * delta;
        double eps = 0.0;
        {
            std::vector<double> r(dim, 0.0);
            for (std::uint32_t a = 0; a < dim; ++a) {
                for (std::uint32_t b = 0; b < dim; ++b) r[a] += m.at(a, b) * v[b];
                r[a] -= lambda_guess * v[a];
            }
            for (double x : r) eps += x * x;
            eps = std::sqrt(eps);
        }
        if (5.0 * eps > delta) continue; // would be refused, draw again

        const double refined = rayleigh_refine(m, lambda_guess, v, delta);
        const double envelope = 10.0 * eps * eps / delta;
        report.rayleigh_worst =
            std::max(report.rayleigh_worst, std::abs(refined - lambda_exact) / envelope);
        ++report.rayleigh_cases;
    }
    if (report.rayleigh_worst > 1.0) report.ok = false;
    return report;
}

void print_verification(const VerificationReport& report, std::ostream& out) {
    out << (report.line_check_max_dev <= 1e-10 ? "[ok]  " : "[FAIL] ")
        << "line spectrum closed form vs numeric, t = 1..50, max deviation "
        << fmt(report.line_check_max_dev, "%.3g") << "\n";
    for (const auto& s : report.oracle) {
        const bool good = s.violations == 0;
        out << (good ? "[ok]  " : "[FAIL] ") << "anchored trees t <= " << s.t << ": " << s.rows
            << " cases, bound " << fmt(s.bound, "%.12g") << ", min "
            << fmt(s.min_value, "%.12g") << ", " << s.equality_cases << " at equality";
        if (!good) out << ", " << s.violations << " below bound (first: " << s.first_violation
                       << ")";
        out << "\n";
    }
    out << (report.norm_margin <= 1e-12 ? "[ok]  " : "[FAIL] ") << "adjacency norm <= sqrt(2 max"
        << " degree) on " << report.norm_cases
        << " trees, worst margin " << fmt(report.norm_margin, "%.3g") << "\n";
    out << (report.rayleigh_worst <= 1.0 ? "[ok]  " : "[FAIL] ")
        << "Rayleigh refinement within 10 eps^2/delta on " << report.rayleigh_cases
        << " instances, worst fill " << fmt(report.rayleigh_worst, "%.3g") << "\n";
    out << (report.ok ? "all checks passed\n" : "CHECKS FAILED\n");
}

IntermediateBandReport intermediate_bounds_check(Vertex n, std::uint32_t t_star,
                                                 std::uint32_t trials, std::uint64_t seed,
                                                 double kappa, double tol) {
    if (t_star < 1) throw std::invalid_argument("intermediate_bounds_check: t_star must be >= 1");
    if (trials < 1) throw std::invalid_argument("intermediate_bounds_check: trials must be >= 1");

    IntermediateBandReport report;
    report.trials = trials;
    report.d = std::log(static_cast<double>(n)) / static_cast<double>(t_star);
    report.lower = predict_first_order(t_star);
    report.upper = 2.0 - 2.0 * std::cos(std::numbers::pi / (2.0 * t_star - 1.0));
    report.margin = kappa / report.d;
    for (std::uint32_t i = 0; i < trials; ++i) {
        Graph g = generate_er(n, report.d, RngSeed{seed, i});
        double value = SweepRow::nan_value();
        try {
            value = lambda2(g, tol).lambda2;
        } catch (const SolverStall& stall) {
            value = stall.best.lambda2;
        }
        report.lambda2_values.push_back(value);
        if (value >= report.lower - report.margin && value <= report.upper + report.margin)
            ++report.in_band;
    }
    return report;
}

} // namespace gaplab
