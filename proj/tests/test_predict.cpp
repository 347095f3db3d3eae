#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "gaplab/predict.hpp"
#include "gaplab/tree_spectra.hpp"

using namespace gaplab;

TEST_CASE("first-order values for small line lengths") {
    CHECK(predict_first_order(1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(predict_first_order(2) == doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-15));
    CHECK(predict_first_order(3) ==
          doctest::Approx(2.0 - 2.0 * std::cos(std::numbers::pi / 7.0)).epsilon(1e-15));
    CHECK(predict_first_order(2) == doctest::Approx(line_spectrum_closed_form(2)[0]));
    CHECK_THROWS_AS(predict_first_order(0), std::invalid_argument);
}

TEST_CASE("regime classification follows the strict window") {
    const std::uint64_t n = 10000;
    const double logn = std::log((double)n);

    // d = ln n / 2.5 sits strictly inside the t*=2 window for eps = 0.1
    RegimeClass in_window = regime_t_star(n, logn / 2.5, 0.1);
    CHECK(in_window.regime == Regime::subcritical);
    CHECK(in_window.t_star == 2);

    // at eps = 0.2 the same point hits the upper boundary exactly: 1/2.5 = (1-0.2)/2
    RegimeClass boundary = regime_t_star(n, logn / 2.5, 0.2);
    CHECK(boundary.regime == Regime::intermediate);

    // d = ln n / 2.2 violates the upper constraint for eps = 0.1 (1/2.2 > 0.45)
    RegimeClass outside = regime_t_star(n, logn / 2.2, 0.1);
    CHECK(outside.regime == Regime::intermediate);

    CHECK(regime_t_star(n, 2.0 * logn, 0.1).regime == Regime::supercritical);
    CHECK(regime_t_star(n, logn, 0.1).regime == Regime::supercritical);

    CHECK_THROWS_AS(regime_t_star(1, 1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(regime_t_star(n, 0.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(regime_t_star(n, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("nominal index is the floor of ln(n)/d") {
    const std::uint64_t n = 10000;
    const double logn = std::log((double)n);
    CHECK(nominal_t_star(n, logn / 2.5) == 2);
    CHECK(nominal_t_star(n, logn / 1.01) == 1);
    CHECK(nominal_t_star(n, logn / 7.9) == 7);
    CHECK_THROWS_AS(nominal_t_star(n, logn), std::invalid_argument);
    CHECK_THROWS_AS(nominal_t_star(n, 2.0 * logn), std::invalid_argument);
}

TEST_CASE("anchor degree fraction solves its defining equation") {
    const std::uint64_t n = 10000;
    const double logn = std::log((double)n);
    auto lhs = [](double c) { return c * std::log(c) - c + 1.0; };

    // rhs = 0.5, root bisected independently
    const double c_half = solve_anchor_degree_fraction(n, logn / 2.5, 2);
    CHECK(c_half == doctest::Approx(0.18668230885083703).epsilon(1e-9));
    CHECK(std::abs(lhs(c_half) - 0.5) <= 1e-9);

    // rhs = 0 clamps to 1
    CHECK(solve_anchor_degree_fraction(n, logn / 2.0, 2) == doctest::Approx(1.0).epsilon(1e-12));

    // a very small rhs gives c near 1, a large one near 0
    const double c_small = solve_anchor_degree_fraction(n, logn / 2.05, 2);
    const double c_big = solve_anchor_degree_fraction(n, logn / 2.95, 2);
    CHECK(c_small == doctest::Approx(0.70092000731988757).epsilon(1e-8));
    CHECK(c_big < 0.05);
    CHECK(std::abs(lhs(c_small) - (2.05 - 2.0)) <= 1e-9);
    CHECK(std::abs(lhs(c_big) - (2.95 - 2.0)) <= 1e-9);

    // rhs > 1: no pendant line of that length is expected
    CHECK_THROWS_AS(solve_anchor_degree_fraction(n, logn / 3.5, 2), std::invalid_argument);
}

TEST_CASE("second-order value sits below first order and converges to it") {
    // growing n with the reduced rate ln(n)/d - t* held fixed: the correction
    // must approach the first-order limit from below with a shrinking gap
    for (std::uint32_t t_star : {1u, 2u}) {
        for (double ratio_offset : {0.0, 0.25}) {
            const double first = predict_first_order(t_star);
            double prev_gap = 1e9;
            for (double n : {1e4, 1e8, 1e16}) {
                const double d = std::log(n) / (t_star + ratio_offset);
                const double second = predict_second_order((std::uint64_t)n, d, t_star);
                const double gap = first - second;
                CHECK(gap > 0.0);
                CHECK(gap < prev_gap);
                prev_gap = gap;
            }
            CHECK(prev_gap < 0.35);
        }
    }
}

TEST_CASE("second-order value at the desk-scale reference point") {
    // frozen from the implementation's own bisection + eigensolve; the
    // correction overshoots below zero this deep in the sparse regime
    const std::uint64_t n = 10000;
    const double d = std::log((double)n) / 2.5;
    const double v = predict_second_order(n, d, 2);
    CHECK(v == doctest::Approx(-0.21084663464690609).epsilon(1e-9));
    CHECK(v < predict_first_order(2));
}

TEST_CASE("supercritical estimates") {
    auto p = predict_supercritical(10.0, 5.0);
    CHECK(p.second_defined);
    CHECK(p.first_order == 10.0);
    CHECK(p.second_order == doctest::Approx(11.0).epsilon(1e-15));

    auto q = predict_supercritical(8.0, 4.0);
    CHECK(q.second_order == doctest::Approx(9.0).epsilon(1e-15)); // delta = 2d gives delta + 1

    auto r = predict_supercritical(5.0, 5.0);
    CHECK(!r.second_defined);
    CHECK(r.first_order == 5.0);

    // the correction shrinks like d/delta; compare loosely, the subtraction
    // cancels most of the mantissa at this magnitude
    auto far = predict_supercritical(1e6, 5.0);
    CHECK(far.second_order - far.first_order == doctest::Approx(5.0 / (1e6 - 5.0)).epsilon(1e-4));

    // isolated vertex: delta 0 is a valid minimum degree
    auto iso = predict_supercritical(0.0, 5.0);
    CHECK(iso.first_order == 0.0);
    CHECK(iso.second_order == doctest::Approx(-1.0).epsilon(1e-15));

    CHECK_THROWS_AS(predict_supercritical(-1.0, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(predict_supercritical(3.0, 0.0), std::invalid_argument);
}
