#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qreg/spectral.hpp"

using namespace qreg;

TEST_SUITE_BEGIN("spectral");

namespace {
const RegisterGeometry gaas_geometry(1000, 50e-9, 400e-9, 5e3);  // alpha 0.25, omega_q 5e10
const BathModel gaas_piezo = BathModel::piezo(0.03, 5e10);
}  // namespace

TEST_CASE("piezo spectral function at the qubit frequency") {
    const double omega = 5e10;
    const double expected = 0.03 * omega * (1.0 - std::sin(1.0)) * std::exp(-1.0);
    CHECK(eval_J(gaas_piezo, gaas_geometry, 0, omega) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(expected == doctest::Approx(8.75e7).epsilon(2e-3));
}

TEST_CASE("zero frequency and small-frequency behavior") {
    CHECK(eval_J(gaas_piezo, gaas_geometry, 0, 0.0) == 0.0);
    CHECK(eval_J(gaas_piezo, gaas_geometry, 3, 0.0) == 0.0);

    // J0 ~ g omega^3/(6 omega_q^2) at small omega, up to the cutoff factor
    const double g = 0.03, omega_q = 5e10, omega_c = 5e10;
    for (double omega : {1e6, 1e7, 5e7}) {
        const double lead =
            g * omega * omega * omega / (6.0 * omega_q * omega_q) * std::exp(-omega / omega_c);
        CHECK(eval_J(gaas_piezo, gaas_geometry, 0, omega) ==
              doctest::Approx(lead).epsilon(1e-5));
    }
}

TEST_CASE("deformation prefactor") {
    const BathModel def = BathModel::deformation(1e25, 5e10);
    const double omega = 7e10;
    const double expected = omega * omega * omega / 1e25 * std::exp(-omega / 5e10) *
                            (1.0 - std::sin(omega / 5e10) / (omega / 5e10));
    CHECK(eval_J(def, gaas_geometry, 0, omega) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("limit consistency of the general formula at r -> 0") {
    for (double omega : {1e9, 5e10, 2e11}) {
        const double general = eval_J_real_r(gaas_piezo, gaas_geometry, 1e-6, omega);
        const double closed = eval_J(gaas_piezo, gaas_geometry, 0, omega);
        CHECK(general == doctest::Approx(closed).epsilon(1e-6));
    }
}

TEST_CASE("large-separation expansion") {
    // J_r ~ -(c1/2)(alpha omega/r)^2 |g|^2 cos(omega r/(alpha omega_q)) in the
    // retarded regime; the frozen frequency keeps the next-order corrections
    // below one percent at r = 2, alpha = 0.25.
    const int r = 2;
    const double omega_q = gaas_geometry.qubit_frequency();
    const double alpha = gaas_geometry.size_ratio();
    const double omega = 2.3413 * omega_q;
    REQUIRE(alpha * omega / (4 * r * omega_q) < 0.1);

    const double prefactor = 0.03 / omega * std::exp(-omega / 5e10);  // c1 |g|^2
    const double expansion = -0.5 * prefactor * alpha * alpha * omega * omega / (r * r) *
                             std::cos(omega * r / (alpha * omega_q));
    CHECK(eval_J(gaas_piezo, gaas_geometry, r, omega) ==
          doctest::Approx(expansion).epsilon(0.01));
}

TEST_CASE("inverse-square suppression at large separations") {
    // in the regime alpha*omega/(4 r omega_q) << 1, |J_r| r^2 stays bounded
    const double omega = 0.1 * gaas_geometry.qubit_frequency();
    const double alpha = gaas_geometry.size_ratio();
    const double prefactor = 0.03 / omega * std::exp(-omega / 5e10);
    // |cos A - sinc A| can slightly exceed one near A = 2.9, hence the margin
    const double envelope = 0.5 * prefactor * alpha * alpha * omega * omega;
    for (int r = 2; r <= 50; ++r) {
        const double scaled = std::abs(eval_J(gaas_piezo, gaas_geometry, r, omega)) * r * r;
        CHECK(scaled <= envelope * 1.2);
    }
}

TEST_CASE("sign structure") {
    // J0 >= 0 everywhere; J_r for r >= 1 changes sign
    bool sign_change = false;
    double prev = 0;
    for (double omega = 1e9; omega < 4e11; omega += 1e9) {
        CHECK(eval_J(gaas_piezo, gaas_geometry, 0, omega) >= 0.0);
        const double jr = eval_J(gaas_piezo, gaas_geometry, 1, omega);
        if (jr * prev < 0) sign_change = true;
        prev = jr;
    }
    CHECK(sign_change);
}

TEST_CASE("ohmic gate spectral density") {
    CHECK(eval_J_ohmic(9.3e-8, 1.3e15, 0.0) == 0.0);
    CHECK(eval_J_ohmic(1.0, 1.0, 1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
    CHECK(eval_J_ohmic(9.3e-8, 1.3e15, 1e12) ==
          doctest::Approx(9.3e-8 * 1e12 * std::exp(-1e12 / 1.3e15)).epsilon(1e-15));
    CHECK(eval_J_ohmic(9.3e-8, 1.3e15, 1e12) == doctest::Approx(9.29e4).epsilon(1e-3));
    CHECK_THROWS_AS(eval_J_ohmic(-1.0, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("argument validation") {
    const BathModel gate = BathModel::ohmic_gate(9.3e-8, 1.3e15);
    CHECK_THROWS_AS(eval_J(gate, gaas_geometry, 0, 1e10), std::invalid_argument);
    CHECK_THROWS_AS(eval_J(gaas_piezo, gaas_geometry, -1, 1e10), std::invalid_argument);
    CHECK_THROWS_AS(eval_J(gaas_piezo, gaas_geometry, 1000, 1e10), std::invalid_argument);
    CHECK_THROWS_AS(eval_J(gaas_piezo, gaas_geometry, 0, -1.0), std::domain_error);
    CHECK_THROWS_AS(SpectralFunction(gate, gaas_geometry, 0), std::invalid_argument);
    CHECK_THROWS_AS(SpectralFunction(gaas_piezo, gaas_geometry, 1000), std::invalid_argument);
    const SpectralFunction j2(gaas_piezo, gaas_geometry, 2);
    CHECK(j2(5e10) == eval_J(gaas_piezo, gaas_geometry, 2, 5e10));
}

TEST_SUITE_END();
