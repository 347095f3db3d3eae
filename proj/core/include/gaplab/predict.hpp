#pragma once

#include <cstdint>

namespace gaplab {

// Limit location of the smallest nonzero eigenvalue contributed by a pendant
// line of length t_star: 2 - 2cos(pi/(2 t_star + 1)).
double predict_first_order(std::uint32_t t_star);

enum class Regime { subcritical, intermediate, supercritical };

struct RegimeClass {
    Regime regime = Regime::intermediate;
    std::uint32_t t_star = 0; // meaningful only when regime == subcritical
};

// Classifies (n, d): supercritical when d >= log n, subcritical with index
// t_star when (1+eps) log(n)/(t_star+1) < d < (1-eps) log(n)/t_star holds
// strictly, intermediate otherwise (ties at the window edges included).
RegimeClass regime_t_star(std::uint64_t n, double d, double epsilon);

// floor(log(n)/d), at least 1: the line length whose window d falls nearest
// when the strict classification above abstains.  Requires d < log n.
std::uint32_t nominal_t_star(std::uint64_t n, double d);

// Solves c*log(c) - c + 1 = log(n)/d - t_star for c in (0,1] by bisection
// (the left side falls monotonically from 1 to 0).  A right side <= 0 clamps
// to c = 1; a right side > 1 means no pendant t_star-line is expected and is
// an error.
double solve_anchor_degree_fraction(std::uint64_t n, double d, std::uint32_t t_star);

// Smallest eigenvalue of the aggregated second-order operator with anchor
// degree c*d and second shell d*(c*d), c from solve_anchor_degree_fraction.
double predict_second_order(std::uint64_t n, double d, std::uint32_t t_star);

// Dense-regime estimates driven by the minimum degree delta: first order
// delta itself, second order delta + d/(delta - d).  The correction is
// undefined at delta == d; second_defined flags that case.
struct SupercriticalPrediction {
    double first_order = 0.0;
    double second_order = 0.0;
    bool second_defined = false;
};
SupercriticalPrediction predict_supercritical(double delta, double d);

} // namespace gaplab
