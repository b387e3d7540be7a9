#include "qreg/bessel.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>

namespace qreg {

namespace {

// Chebyshev series with the c0/2 convention, evaluated by Clenshaw recurrence.
double clenshaw(const double* c, std::size_t n, double x) {
    double b1 = 0, b2 = 0;
    for (std::size_t i = n; i-- > 1;) {
        const double b0 = 2.0 * x * b1 - b2 + c[i];
        b2 = b1;
        b1 = b0;
    }
    return x * b1 - b2 + 0.5 * c[0];
}

// J0(x) on |x| <= 8 as a series in z = x^2/32 - 1.
constexpr double j0_small[] = {
    0.31545594294978023913,
    -0.0087234423528522212908,
    0.26517861320333680987,
    -0.37009499387264977903,
    0.15806710233209726128,
    -0.034893769411408885163,
    0.0048191800694676044968,
    -0.00046062616620627504750,
    0.000032460328821005080806,
    -1.7619469077621507495e-6,
    7.6081635924187818670e-8,
    -2.6792535305576728983e-9,
    7.8486963144794644165e-11,
    -1.9438346867370165706e-12,
    4.1253205956343739326e-14,
    -7.5885081254475463376e-16,
    1.2218515873961411034e-17,
    -1.7367896077002367683e-19,
};

// For x >= 8, J0(x) = sqrt(2/(pi x)) * M(w) * cos(x - pi/4 + G(w)/x)
// with w = 2*(8/x)^2 - 1. M is the modulus sqrt(pi x/2)*|H0^(1)(x)| and
// G the phase correction times x; both are smooth on w in [-1, 1].
constexpr double j0_ampl[] = {
    1.9990412520920605951,
    -0.00047649307545693993198,
    2.8304085728379606780e-6,
    -4.8825682232178849163e-8,
    1.5627403734412552010e-9,
    -7.6025396656362018906e-11,
    5.0238616566139123111e-12,
    -4.1998533973713909515e-13,
    4.2325918841181937118e-14,
    -4.9688715591208806797e-15,
    6.6251582792437381640e-16,
    -9.8416731808287076928e-17,
    1.6046188086386699226e-17,
    -2.8374985650973124245e-18,
    5.3898735994207578138e-19,
};

constexpr double j0_phase[] = {
    -0.24901780862128936718,
    0.00048550299609623749241,
    -5.4511837345017204951e-6,
    1.3558673059405964054e-7,
    -5.5691398902227626228e-9,
    3.2609031824994335304e-10,
    -2.4918807862461341125e-11,
    2.3449377420882520554e-12,
    -2.6096534444310387762e-13,
    3.3353140420097395106e-14,
    -4.7890000440572684647e-15,
    7.5956178436192215973e-16,
    -1.3131556016891440383e-16,
    2.4483618345240857496e-17,
    -4.8805729810618777685e-18,
    1.0327285029786316151e-18,
};

template <std::size_t N>
double eval(const double (&c)[N], double x) {
    return clenshaw(c, N, x);
}

}  // namespace

double bessel_j0(double x) {
    x = std::abs(x);
    if (x <= 8.0) {
        return eval(j0_small, x * x / 32.0 - 1.0);
    }
    const double w = 128.0 / (x * x) - 1.0;
    const double ampl = eval(j0_ampl, w);
    const double phase = x - 0.25 * std::numbers::pi + eval(j0_phase, w) / x;
    return std::sqrt(2.0 / (std::numbers::pi * x)) * ampl * std::cos(phase);
}

}  // namespace qreg
