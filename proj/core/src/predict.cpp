#include "gaplab/predict.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "gaplab/tree_spectra.hpp"

namespace gaplab {

double predict_first_order(std::uint32_t t_star) {
    if (t_star == 0) throw std::invalid_argument("predict_first_order: t_star must be positive");
    return 2.0 - 2.0 * std::cos(std::numbers::pi / (2.0 * t_star + 1.0));
}

RegimeClass regime_t_star(std::uint64_t n, double d, double epsilon) {
    if (n < 2) throw std::invalid_argument("regime_t_star: n too small");
    if (!(d > 0.0)) throw std::invalid_argument("regime_t_star: d must be positive");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("regime_t_star: epsilon outside (0,1)");

    const double logn = std::log(static_cast<double>(n));
    if (d >= logn) return {Regime::supercritical, 0};

    // Windows for consecutive t_star never overlap, so checking the two
    // integers around log(n)/d is exhaustive.
    const std::uint32_t guess = nominal_t_star(n, d);
    for (std::uint32_t ts = guess > 1 ? guess - 1 : 1; ts <= guess + 1; ++ts) {
        const double lo = (1.0 + epsilon) * logn / (ts + 1.0);
        const double hi = (1.0 - epsilon) * logn / ts;
        if (lo < d && d < hi) return {Regime::subcritical, ts};
    }
    return {Regime::intermediate, 0};
}

std::uint32_t nominal_t_star(std::uint64_t n, double d) {
    const double logn = std::log(static_cast<double>(n));
    if (!(d > 0.0) || d >= logn)
        throw std::invalid_argument("nominal_t_star: requires 0 < d < log n");
    const double ratio = logn / d;
    std::uint32_t ts = static_cast<std::uint32_t>(std::floor(ratio));
    return ts < 1 ? 1 : ts;
}

double solve_anchor_degree_fraction(std::uint64_t n, double d, std::uint32_t t_star) {
    if (n < 2 || !(d > 0.0) || t_star == 0)
        throw std::invalid_argument("solve_anchor_degree_fraction: bad parameters");
    const double rhs = std::log(static_cast<double>(n)) / d - static_cast<double>(t_star);
    if (rhs > 1.0)
        throw std::invalid_argument(
            "solve_anchor_degree_fraction: no line of this size expected (rhs > 1)");
    if (rhs <= 0.0) return 1.0;

    // f(c) = c log c - c + 1 decreases from 1 (c -> 0+) to 0 (c = 1).
    auto f = [](double c) { return c * std::log(c) - c + 1.0; };
    double lo = 1e-300, hi = 1.0;
    for (int iter = 0; iter < 200 && hi - lo > 1e-15; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (f(mid) > rhs)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double predict_second_order(std::uint64_t n, double d, std::uint32_t t_star) {
    const double c = solve_anchor_degree_fraction(n, d, t_star);
    const double d_z = c * d;
    const DenseSymMatrix m = second_order_matrix(t_star, d_z, d * d_z);
    return sym_eigen(m).eigenvalues.front();
}

SupercriticalPrediction predict_supercritical(double delta, double d) {
    // delta = 0 is allowed: a graph can have an isolated vertex, and the
    // correction formula is still well defined there.
    if (!(delta >= 0.0) || !(d > 0.0))
        throw std::invalid_argument(
            "predict_supercritical: delta must be nonnegative and d positive");
    SupercriticalPrediction p;
    p.first_order = delta;
    if (delta != d) {
        p.second_order = delta + d / (delta - d);
        p.second_defined = true;
    }
    return p;
}

} // namespace gaplab
