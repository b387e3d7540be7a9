#include "qreg/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <limits>
#include <queue>

#include "qreg/bessel.hpp"
#include "qreg/summation.hpp"

namespace qreg {

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0) || !(abs_tol > 0))
        throw std::invalid_argument("QuadratureConfig: tolerances must be positive");
    if (max_subdivisions < 1)
        throw std::invalid_argument("QuadratureConfig: max_subdivisions must be >= 1");
    if (!(cutoff_decades >= 10))
        throw std::invalid_argument("QuadratureConfig: cutoff_decades must be >= 10");
}

void OscillationHints::validate() const {
    if (!(cutoff > 0)) throw std::invalid_argument("OscillationHints: cutoff must be positive");
    for (double p : periods)
        if (!(p >= 0) || !std::isfinite(p))
            throw std::invalid_argument("OscillationHints: periods must be finite and >= 0");
}

namespace {

// 15-point Kronrod extension of 7-point Gauss (QUADPACK dqk15 constants).
constexpr double kronrod_nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kronrod_weights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double gauss_weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Panel {
    double a = 0, b = 0;
    double value = 0;
    double error = 0;
    double floor = 0;  // roundoff floor 50*eps*int|f|
};

Panel eval_panel(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(center - half * kronrod_nodes[i]);
        fv[14 - i] = f(center + half * kronrod_nodes[i]);
    }
    fv[7] = f(center);

    double k15 = kronrod_weights[7] * fv[7];
    double resabs = kronrod_weights[7] * std::abs(fv[7]);
    for (int i = 0; i < 7; ++i) {
        k15 += kronrod_weights[i] * (fv[i] + fv[14 - i]);
        resabs += kronrod_weights[i] * (std::abs(fv[i]) + std::abs(fv[14 - i]));
    }
    double g7 = gauss_weights[3] * fv[7];
    for (int i = 0; i < 3; ++i) g7 += gauss_weights[i] * (fv[2 * i + 1] + fv[13 - 2 * i]);

    // QUADPACK-style error estimate: the raw |K15 - G7| gap reflects the
    // Gauss error, not the Kronrod one, so it is damped through the
    // oscillation measure resasc.
    const double mean = 0.5 * k15;
    double resasc = kronrod_weights[7] * std::abs(fv[7] - mean);
    for (int i = 0; i < 7; ++i)
        resasc += kronrod_weights[i] * (std::abs(fv[i] - mean) + std::abs(fv[14 - i] - mean));
    resasc *= half;
    resabs *= half;

    const double floor = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
    double err = std::abs(k15 - g7) * half;
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    err = std::max(err, floor);

    Panel p;
    p.a = a;
    p.b = b;
    p.value = half * k15;
    p.error = err;
    p.floor = floor;
    return p;
}

struct WorstFirst {
    bool operator()(const Panel& x, const Panel& y) const {
        if (x.error != y.error) return x.error < y.error;
        return x.a > y.a;  // deterministic tie-break
    }
};

IntegralResult run_panels(const std::function<double(double)>& f, double a, double b,
                          double width, const QuadratureConfig& cfg) {
    const long n_init = std::max<long>(1, static_cast<long>(std::ceil((b - a) / width)));
    const double w = (b - a) / static_cast<double>(n_init);

    // Streaming pass over the uniform panels. Once the estimated error is
    // dominated by the accumulated roundoff floor, refinement can only chase
    // rounding noise, so that floor joins the convergence target.
    CompensatedSum value, error, floors;
    for (long i = 0; i < n_init; ++i) {
        const Panel p = eval_panel(f, a + w * static_cast<double>(i),
                                   a + w * static_cast<double>(i + 1));
        value.add(p.value);
        error.add(p.error);
        floors.add(p.floor);
    }
    double tol = std::max({cfg.abs_tol, cfg.rel_tol * std::abs(value.value()),
                           2.0 * floors.value()});
    if (error.value() <= tol)
        return {value.value(), error.value(), static_cast<int>(std::min<long>(n_init, std::numeric_limits<int>::max()))};

    // Refinement pass: re-evaluate, keep panels, bisect worst-first.
    std::vector<Panel> initial;
    initial.reserve(static_cast<std::size_t>(n_init));
    CompensatedSum v0, e0, f0;
    for (long i = 0; i < n_init; ++i) {
        initial.push_back(eval_panel(f, a + w * static_cast<double>(i),
                                     a + w * static_cast<double>(i + 1)));
        v0.add(initial.back().value);
        e0.add(initial.back().error);
        f0.add(initial.back().floor);
    }
    std::priority_queue<Panel, std::vector<Panel>, WorstFirst> queue(
        WorstFirst{}, std::move(initial));

    long budget = std::max<long>(0, cfg.max_subdivisions - n_init);
    double value_sum = v0.value();
    double error_sum = e0.value();
    double floor_sum = f0.value();

    while (budget > 0) {
        tol = std::max({cfg.abs_tol, cfg.rel_tol * std::abs(value_sum), 2.0 * floor_sum});
        if (error_sum <= tol) break;
        Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const Panel left = eval_panel(f, worst.a, mid);
        const Panel right = eval_panel(f, mid, worst.b);
        value_sum += left.value + right.value - worst.value;
        error_sum += left.error + right.error - worst.error;
        floor_sum += left.floor + right.floor - worst.floor;
        queue.push(left);
        queue.push(right);
        --budget;
    }

    // Recompute the totals with compensated sums for a deterministic result.
    CompensatedSum v, e, fl;
    std::vector<Panel> panels;
    panels.reserve(queue.size());
    while (!queue.empty()) {
        panels.push_back(queue.top());
        queue.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const Panel& x, const Panel& y) { return x.a < y.a; });
    for (const Panel& p : panels) {
        v.add(p.value);
        e.add(p.error);
        fl.add(p.floor);
    }
    IntegralResult result{v.value(), e.value(),
                          static_cast<int>(std::min<std::size_t>(panels.size(), std::numeric_limits<int>::max()))};
    tol = std::max({cfg.abs_tol, cfg.rel_tol * std::abs(result.value), 2.0 * fl.value()});
    if (result.error > tol)
        throw ConvergenceError("integrate: subdivision budget exhausted", result);
    return result;
}

}  // namespace

IntegralResult integrate_oscillatory(const std::function<double(double)>& f,
                                     const OscillationHints& hints,
                                     const QuadratureConfig& cfg) {
    cfg.validate();
    hints.validate();
    const double omega_max = cfg.cutoff_decades * hints.cutoff;

    double longest_period = 0;
    for (double p : hints.periods) longest_period = std::max(longest_period, p);

    // Half the shortest oscillation period in omega is pi/tau; always
    // resolve the cutoff scale as well.
    double width = hints.cutoff / 2.0;
    if (longest_period > 0)
        width = std::min(width, std::numbers::pi / longest_period);
    width = std::max(width, omega_max / static_cast<double>(cfg.max_subdivisions));

    return run_panels(f, 0.0, omega_max, width, cfg);
}

IntegralResult integrate_interval(const std::function<double(double)>& f, double a,
                                  double b, double initial_width,
                                  const QuadratureConfig& cfg) {
    cfg.validate();
    if (!(b > a)) throw std::invalid_argument("integrate_interval: need b > a");
    if (!(initial_width > 0))
        throw std::invalid_argument("integrate_interval: width must be positive");
    return run_panels(f, a, b, initial_width, cfg);
}

double angular_bessel_identity_check(double y, double z) {
    if (!(z > 0)) throw std::invalid_argument("angular_bessel_identity_check: z must be positive");

    const auto integrand = [y, z](double theta) {
        const double s = std::sin(y * std::cos(theta));
        return s * s * bessel_j0(z * std::sin(theta)) * std::sin(theta);
    };
    // The integrand oscillates at most on the scale of max(2y, z) radians.
    const double rate = std::max({2.0 * std::abs(y), z, 1.0});
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.abs_tol = 1e-13;
    const IntegralResult num =
        integrate_interval(integrand, 0.0, std::numbers::pi,
                           0.5 * std::numbers::pi / rate, cfg);

    const double root = std::hypot(z, 2.0 * y);
    const double closed = std::sin(z) / z - std::sin(root) / root;
    return std::abs(num.value - closed);
}

}  // namespace qreg
