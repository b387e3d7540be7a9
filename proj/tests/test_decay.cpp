#include <doctest.h>

#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

#include "qreg/decay.hpp"

using namespace qreg;

TEST_SUITE_BEGIN("decay");

namespace {
const RegisterGeometry gaas_geometry(1000, 50e-9, 400e-9, 5e3);
const BathModel gaas_piezo = BathModel::piezo(0.03, 5e10);

// toy scales: alpha = 0.25, omega_q = 1, transit time 4
const RegisterGeometry toy_geometry(3, 0.5, 4.0, 1.0);
const BathModel toy_piezo = BathModel::piezo(1.0, 1.0);

RegisterGeometry resized(const RegisterGeometry& g, int n) {
    return RegisterGeometry(n, g.dot_half_separation, g.spacing, g.sound_speed);
}
}  // namespace

TEST_CASE("kernels vanish at t = 0") {
    CHECK(q2_r(gaas_piezo, gaas_geometry, 0, 0.0) == 0.0);
    CHECK(q1_r(gaas_piezo, gaas_geometry, 5, 0.0) == 0.0);
    CHECK(q_fermionic(1.0, 1.0, 0.0, 0.0, 1) == 0.0);
    CHECK(q_fermionic(1.0, 1.0, 0.0, 0.0, 2) == 0.0);
}

TEST_CASE("kernel argument validation") {
    CHECK_THROWS_AS(q2_r(BathModel::ohmic_gate(1e-8, 1e15), gaas_geometry, 0, 1e-12),
                    std::invalid_argument);
    CHECK_THROWS_AS(q2_r(gaas_piezo, gaas_geometry, 1000, 1e-12), std::invalid_argument);
    CHECK_THROWS_AS(q2_r(gaas_piezo, gaas_geometry, 0, -1e-12), std::domain_error);
    CHECK_THROWS_AS(q_fermionic(1.0, 1.0, 0.0, 1.0, 3), std::invalid_argument);
    CHECK_THROWS_AS(q_fermionic(-1.0, 1.0, 0.0, 1.0, 1), std::invalid_argument);
}

TEST_CASE("gate kernels reproduce their closed forms") {
    // q2 at T = 0: (eta/2) ln(1 + wc^2 t^2)
    CHECK(q_fermionic(1.0, 1.0, 0.0, 3.0, 2) ==
          doctest::Approx(0.5 * std::log(10.0)).epsilon(1e-9));
    // q1 at any T: eta [atan(wc t) - wc t]
    CHECK(q_fermionic(1.0, 1.0, 0.0, 1.0, 1) ==
          doctest::Approx(std::atan(1.0) - 1.0).epsilon(1e-9));
    CHECK(q_fermionic(1.0, 1.0, 4.2, 1.0, 1) ==
          doctest::Approx(std::atan(1.0) - 1.0).epsilon(1e-9));

    // thermal decay kernel only grows with temperature
    const double cold = q_fermionic(1.0, 1.0, 0.0, 2.0, 2);
    const double warm = q_fermionic(1.0, 1.0, 5.0, 2.0, 2);
    CHECK(warm > cold);

    // realistic gate scales: wc t >> 1
    const double eta = 9.3e-8, cutoff = 1.3e15, t = 1e-10;
    CHECK(q_fermionic(eta, cutoff, 0.0, t, 2) ==
          doctest::Approx(0.5 * eta * std::log(1.0 + cutoff * cutoff * t * t)).epsilon(1e-6));
}

TEST_CASE("single-qubit reduction matches the plain spin-boson kernel") {
    // N = 1 profile is the scalar 2*Q2_0 with the J_0 spectral function
    const RegisterGeometry single = resized(gaas_geometry, 1);
    const DecayProfile profile = decay_profile(gaas_piezo, single, 20e-12);
    CHECK(profile.n() == 1);
    const std::vector<double> one{1.0};
    CHECK(toeplitz_quadratic(profile, 2, one, one) ==
          doctest::Approx(2.0 * q2_r(gaas_piezo, single, 0, 20e-12)).epsilon(1e-12));
}

TEST_CASE("profile matches explicit Jordan-block assembly at N = 3") {
    const double t = 2.0;
    const DecayProfile profile = decay_profile(toy_piezo, toy_geometry, t);
    REQUIRE(profile.n() == 3);

    for (int m : {1, 2}) {
        const auto& q = (m == 2) ? profile.q2 : profile.q1;
        // M = sum_r nu_r (J^r + J^r^T) q_r with nu_0 = 1, nu_r = 2
        double matrix[3][3] = {};
        for (int r = 0; r < 3; ++r) {
            const double nu = (r == 0) ? 1.0 : 2.0;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    const bool jordan = (j == i + r);
                    const bool jordan_t = (i == j + r);
                    if (jordan) matrix[i][j] += nu * q[r];
                    if (jordan_t) matrix[i][j] += nu * q[r];
                }
        }
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(matrix[i][j] == doctest::Approx(2.0 * q[std::abs(i - j)]).epsilon(1e-14));

        std::mt19937 rng(7);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> x(3), y(3);
            for (auto& v : x) v = dist(rng);
            for (auto& v : y) v = dist(rng);
            double dense = 0;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) dense += x[i] * matrix[i][j] * y[j];
            CHECK(toeplitz_quadratic(profile, m, x, y) ==
                  doctest::Approx(dense).epsilon(1e-12));
        }
    }
}

TEST_CASE("toeplitz form against dense multiply at N = 5") {
    const RegisterGeometry geom5 = resized(toy_geometry, 5);
    const DecayProfile profile = decay_profile(toy_piezo, geom5, 1.5);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> x(5), y(5);
        for (auto& v : x) v = dist(rng);
        for (auto& v : y) v = dist(rng);
        double dense = 0;
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j)
                dense += x[i] * 2.0 * profile.q2[std::abs(i - j)] * y[j];
        const double fast = toeplitz_quadratic(profile, 2, x, y);
        CHECK(fast == doctest::Approx(dense).epsilon(1e-12));
        CHECK(toeplitz_quadratic(profile, 2, y, x) == doctest::Approx(fast).epsilon(1e-13));
    }
    const std::vector<double> short_vec(4, 1.0);
    CHECK_THROWS_AS(toeplitz_quadratic(profile, 2, short_vec, short_vec),
                    std::invalid_argument);
    const std::vector<double> ok(5, 1.0);
    CHECK_THROWS_AS(toeplitz_quadratic(profile, 3, ok, ok), std::invalid_argument);
}

TEST_CASE("profile at t = 0 is the zero matrix") {
    const DecayProfile profile = decay_profile(toy_piezo, toy_geometry, 0.0);
    for (double v : profile.q1) CHECK(v == 0.0);
    for (double v : profile.q2) CHECK(v == 0.0);
}

TEST_CASE("positivity of the decay form") {
    const RegisterGeometry geom20 = resized(gaas_geometry, 20);
    const DecayProfile profile = decay_profile(gaas_piezo, geom20, 20e-12);
    CHECK(profile.q2[0] >= 0.0);
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> x(20);
        for (auto& v : x) v = dist(rng);
        const double form = toeplitz_quadratic(profile, 2, x, x);
        CHECK(form >= -1e-9 * profile.q2[0]);
    }
}

TEST_CASE("decay grows with temperature") {
    double prev = 0;
    for (double temp : {0.0, 0.05, 0.1, 1.0, 10.0}) {
        const BathModel bath = BathModel::piezo(0.03, 5e10, temp);
        const double value = q2_r(bath, gaas_geometry, 0, 10e-12);
        CHECK(value >= prev * (1.0 - 1e-9));
        prev = value;
    }
}

TEST_CASE("single-qubit comparator reaches an order-ten plateau at late times") {
    // 2N Q2_0 with N = 1000 at 100 ps
    const double plateau = 2000.0 * q2_r(gaas_piezo, gaas_geometry, 0, 100e-12);
    CHECK(plateau > 1.0);
    CHECK(plateau < 100.0);
}

TEST_CASE("first separations dominate and fall off in order") {
    // the scaled traces for r = 1, 2, 3 shrink with r at fixed time
    for (int m : {1, 2}) {
        double prev = 1e300;
        for (int r = 1; r <= 3; ++r) {
            const double value =
                std::abs(m == 2 ? q2_r(gaas_piezo, gaas_geometry, r, 100e-12)
                                : q1_r(gaas_piezo, gaas_geometry, r, 100e-12));
            CHECK(value < prev);
            prev = value;
        }
    }
}

TEST_CASE("kernel magnitudes decrease with separation beyond the transit front") {
    for (double t : {20e-12, 100e-12}) {
        double prev = std::abs(q2_r(gaas_piezo, gaas_geometry, 2, t));
        for (int r = 3; r <= 6; ++r) {
            const double cur = std::abs(q2_r(gaas_piezo, gaas_geometry, r, t));
            CHECK(cur <= prev * (1.0 + 1e-6));
            prev = cur;
        }
    }
}

TEST_CASE("e factors") {
    const RegisterGeometry single = resized(gaas_geometry, 1);
    const DecayProfile lone = decay_profile(gaas_piezo, single, 10e-12);
    CHECK(e_factor(lone) == 0.0);
    CHECK(e_tilde_factor(lone) == 0.0);

    const RegisterGeometry geom12 = resized(gaas_geometry, 12);
    for (double t : {5e-12, 50e-12, 200e-12}) {
        const DecayProfile profile = decay_profile(gaas_piezo, geom12, t);
        CHECK(std::abs(e_factor(profile)) <= e_tilde_factor(profile) + 1e-15);
    }

    const DecayProfile frozen = decay_profile(gaas_piezo, geom12, 0.0);
    CHECK_THROWS_AS(e_factor(frozen), std::domain_error);
    CHECK_THROWS_AS(e_tilde_factor(frozen), std::domain_error);
}

TEST_CASE("truncated profiles record and zero the discarded tail") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-6;  // also the |Q2_r|/Q2_0 truncation threshold
    const RegisterGeometry geom50 = resized(gaas_geometry, 50);
    const DecayProfile profile = decay_profile_truncated(gaas_piezo, geom50, 5e-12, nullptr, cfg);
    CHECK(profile.r_max_used < 20);
    for (int r = profile.r_max_used + 1; r < 50; ++r) {
        CHECK(profile.q2[r] == 0.0);
        CHECK(profile.q1[r] == 0.0);
    }
    // kept entries agree with the direct kernels
    for (int r = 0; r <= profile.r_max_used; ++r) {
        CHECK(profile.q2[r] ==
              doctest::Approx(q2_r(gaas_piezo, geom50, r, 5e-12, cfg)).epsilon(1e-12));
        CHECK(profile.q1[r] ==
              doctest::Approx(q1_r(gaas_piezo, geom50, r, 5e-12, cfg)).epsilon(1e-12));
    }

    // truncation keeps the most-offdiagonal form accurate
    const DecayProfile full = decay_profile(gaas_piezo, geom50, 5e-12);
    const std::vector<double> ones(50, 1.0);
    CHECK(toeplitz_quadratic(profile, 2, ones, ones) ==
          doctest::Approx(toeplitz_quadratic(full, 2, ones, ones)).epsilon(1e-4));
}

TEST_CASE("kernel cache is consistent and thread-safe") {
    KernelCache cache;
    const double direct = q2_r(toy_piezo, toy_geometry, 1, 1.0);
    CHECK(cache.q2(toy_piezo, toy_geometry, 1, 1.0) == direct);
    CHECK(cache.q2(toy_piezo, toy_geometry, 1, 1.0) == direct);
    CHECK(cache.size() == 1);

    // coupling strength is factored out of the cached value
    const BathModel stronger = BathModel::piezo(2.0, 1.0);
    CHECK(cache.q2(stronger, toy_geometry, 1, 1.0) == doctest::Approx(2.0 * direct).epsilon(1e-15));
    CHECK(cache.size() == 1);

    KernelCache shared;
    std::array<double, 3> results[6];
    std::vector<std::thread> workers;
    for (int w = 0; w < 6; ++w)
        workers.emplace_back([&shared, &results, w] {
            for (int r = 0; r < 3; ++r)
                results[w][r] = shared.q2(toy_piezo, toy_geometry, r, 0.5 + 0.25 * (w % 3));
        });
    for (auto& worker : workers) worker.join();
    for (int w = 0; w < 6; ++w)
        for (int r = 0; r < 3; ++r)
            CHECK(results[w][r] == results[w % 3][r]);
}

TEST_SUITE_END();
