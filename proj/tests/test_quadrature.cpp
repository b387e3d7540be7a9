#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "qreg/bessel.hpp"
#include "qreg/quadrature.hpp"

using namespace qreg;

TEST_SUITE_BEGIN("quadrature");

namespace {

// int_0^inf exp(-w/wc)(1-cos wt)/w dw = ln(1 + wc^2 t^2)/2
double log_form(double cutoff, double t) {
    return 0.5 * std::log(1.0 + cutoff * cutoff * t * t);
}

// int_0^inf exp(-w/wc)(sin wt - wt)/w dw = atan(wc t) - wc t
double atan_form(double cutoff, double t) {
    return std::atan(cutoff * t) - cutoff * t;
}

double run_log_form(double t, const QuadratureConfig& cfg) {
    OscillationHints hints{{t}, 1.0};
    return integrate_oscillatory(
               [t](double w) {
                   const double half = std::sin(0.5 * w * t);
                   return std::exp(-w) * 2.0 * half * half / w;
               },
               hints, cfg)
        .value;
}

}  // namespace

TEST_CASE("plain exponential") {
    OscillationHints hints{{}, 1.0};
    const IntegralResult res = integrate_oscillatory([](double w) { return std::exp(-w); }, hints);
    CHECK(res.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(res.error <= 1e-9);
}

TEST_CASE("ohmic closed forms") {
    {
        OscillationHints hints{{3.0}, 1.0};
        const double val = integrate_oscillatory(
                               [](double w) {
                                   const double half = std::sin(1.5 * w);
                                   return std::exp(-w) * 2.0 * half * half / w;
                               },
                               hints)
                               .value;
        CHECK(val == doctest::Approx(log_form(1.0, 3.0)).epsilon(1e-9));
        CHECK(val == doctest::Approx(1.1513).epsilon(1e-4));
    }
    {
        OscillationHints hints{{1.0}, 1.0};
        const double val = integrate_oscillatory(
                               [](double w) { return std::exp(-w) * (std::sin(w) - w) / w; },
                               hints)
                               .value;
        CHECK(val == doctest::Approx(atan_form(1.0, 1.0)).epsilon(1e-9));
        CHECK(val == doctest::Approx(-0.2146).epsilon(1e-3));
    }
}

TEST_CASE("linearity") {
    OscillationHints hints{{2.0}, 1.0};
    auto f = [](double w) { return std::exp(-w); };
    auto g = [](double w) {
        const double half = std::sin(w);
        return std::exp(-w) * 2.0 * half * half / w;
    };
    const double fa = integrate_oscillatory(f, hints).value;
    const double ga = integrate_oscillatory(g, hints).value;
    const double combo =
        integrate_oscillatory([&](double w) { return 2.0 * f(w) + 3.0 * g(w); }, hints).value;
    CHECK(combo == doctest::Approx(2.0 * fa + 3.0 * ga).epsilon(1e-10));
}

TEST_CASE("halving rel_tol never worsens the closed-form agreement") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-6;
    const double exact = log_form(1.0, 3.0);
    double prev = std::abs(run_log_form(3.0, cfg) - exact);
    for (int i = 0; i < 6; ++i) {
        cfg.rel_tol *= 0.5;
        const double diff = std::abs(run_log_form(3.0, cfg) - exact);
        CHECK(diff <= prev + 1e-15);
        prev = diff;
    }
}

TEST_CASE("bit reproducibility") {
    QuadratureConfig cfg;
    OscillationHints hints{{7.5}, 1.0};
    auto f = [](double w) {
        const double half = std::sin(3.75 * w);
        return std::exp(-w) * 2.0 * half * half / w;
    };
    const IntegralResult a = integrate_oscillatory(f, hints, cfg);
    const IntegralResult b = integrate_oscillatory(f, hints, cfg);
    CHECK(a.value == b.value);
    CHECK(a.error == b.error);
    CHECK(a.panels == b.panels);
}

TEST_CASE("convergence failure carries the best estimate") {
    QuadratureConfig cfg;
    cfg.max_subdivisions = 8;
    cfg.rel_tol = 1e-13;
    cfg.abs_tol = 1e-300;
    OscillationHints hints{{}, 1.0};
    auto kinked = [](double w) { return std::sqrt(std::abs(w - 1.0)) * std::exp(-w); };
    CHECK_THROWS_AS(integrate_oscillatory(kinked, hints, cfg), ConvergenceError);
    try {
        integrate_oscillatory(kinked, hints, cfg);
    } catch (const ConvergenceError& err) {
        CHECK(err.best_estimate().value == doctest::Approx(0.787945159).epsilon(0.05));
        CHECK(err.best_estimate().error > 0);
    }
}

TEST_CASE("config and hint validation") {
    QuadratureConfig cfg;
    cfg.rel_tol = 0;
    OscillationHints hints{{}, 1.0};
    CHECK_THROWS_AS(integrate_oscillatory([](double) { return 0.0; }, hints, cfg),
                    std::invalid_argument);
    cfg = {};
    cfg.cutoff_decades = 5;  // must be >= 10
    CHECK_THROWS_AS(integrate_oscillatory([](double) { return 0.0; }, hints, cfg),
                    std::invalid_argument);
    cfg = {};
    hints.cutoff = 0;
    CHECK_THROWS_AS(integrate_oscillatory([](double) { return 0.0; }, hints, cfg),
                    std::invalid_argument);
}

TEST_CASE("bessel j0 reference values") {
    // reference values computed with 40-digit arithmetic
    const struct {
        double x, j0;
    } table[] = {
        {0.0, 1.0},
        {0.001, 0.99999975000001562},
        {0.1, 0.99750156206604003},
        {0.5, 0.9384698072408129},
        {1.0, 0.76519768655796655},
        {2.0, 0.22389077914123567},
        {2.404825557695773, -1.2011950073676861e-16},
        {3.0, -0.26005195490193344},
        {4.0, -0.39714980986384737},
        {5.0, -0.1775967713143383},
        {5.520078110286311, 1.1922994371894896e-16},
        {6.0, 0.15064525725099693},
        {7.9, 0.19436184484127832},
        {8.0, 0.17165080713755391},
        {8.1, 0.14751745404437758},
        {10.0, -0.24593576445134834},
        {14.930917708487786, -1.0789449883086466e-17},
        {20.0, 0.16702466434058315},
        {31.4, 0.098653744091573261},
        {50.0, 0.055812327669251815},
        {100.0, 0.019985850304223122},
        {123.456, -0.071030062418370727},
        {250.0, -0.026053373425204234},
        {500.0, -0.034100556880731998},
        {777.7, -0.016850060564151063},
        {1000.0, 0.024786686152420175},
    };
    for (const auto& row : table) {
        CHECK(std::abs(bessel_j0(row.x) - row.j0) < 1e-13);
        CHECK(bessel_j0(-row.x) == bessel_j0(row.x));
    }
}

TEST_CASE("bessel j0 against the standard library") {
    for (double x = 0.05; x < 30.0; x += 0.37)
        CHECK(bessel_j0(x) == doctest::Approx(std::cyl_bessel_j(0.0, x)).epsilon(1e-10));
}

TEST_CASE("angular identity residuals") {
    CHECK(angular_bessel_identity_check(0.0, 1.0) < 1e-10);
    CHECK(angular_bessel_identity_check(1.0, 2.0) < 1e-8);
    CHECK(angular_bessel_identity_check(5.0, 0.1) < 1e-8);
    CHECK(angular_bessel_identity_check(10.0, 10.0) < 1e-8);
    CHECK_THROWS_AS(angular_bessel_identity_check(1.0, 0.0), std::invalid_argument);
}

TEST_SUITE_END();
