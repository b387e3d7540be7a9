#include "qreg/decay.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "qreg/spectral.hpp"

namespace qreg {

namespace {

// Raise the subdivision budget when the hint-driven paneling alone needs
// more initial panels than the configured budget (long oscillation ranges,
// e.g. gate baths with omega_c*t >> 1). The configured value stays a floor.
QuadratureConfig with_panel_headroom(const QuadratureConfig& cfg, const OscillationHints& hints) {
    double longest = 0;
    for (double p : hints.periods) longest = std::max(longest, p);
    if (longest <= 0) return cfg;
    const double omega_max = cfg.cutoff_decades * hints.cutoff;
    const double width = std::min(hints.cutoff / 2.0, std::numbers::pi / longest);
    const double needed = std::ceil(omega_max / width);
    QuadratureConfig out = cfg;
    if (3.0 * needed + 256 > static_cast<double>(out.max_subdivisions))
        out.max_subdivisions = static_cast<int>(3.0 * needed + 256);
    return out;
}

// Rescale the absolute tolerance to the unit-coupling value scale.
QuadratureConfig with_scaled_abs_tol(const QuadratureConfig& cfg, double coupling_scale) {
    QuadratureConfig out = cfg;
    out.abs_tol = cfg.abs_tol / coupling_scale;
    return out;
}

// Unit-coupling phonon kernel; the linear coupling constant is applied by
// the callers so cached values can be reused across coupling sweeps.
double phonon_kernel_unit(bool piezo_like, double cutoff, double temperature,
                          const RegisterGeometry& geometry, int r, double t, int which,
                          const QuadratureConfig& cfg) {
    const double transit = geometry.transit_time();
    const double ratio = geometry.size_ratio();
    const double qubit_freq = geometry.qubit_frequency();
    const double tau_near = r * transit;
    const double tau_far = transit * std::sqrt(static_cast<double>(r) * r + ratio * ratio);

    const auto weight = [=](double w) {
        const double geometric = (r == 0)
                                     ? detail::one_minus_sinc(w / qubit_freq)
                                     : detail::sinc_diff(w * tau_near, w * tau_far);
        const double envelope = std::exp(-w / cutoff);
        return piezo_like ? envelope * geometric / w : envelope * geometric * w;
    };

    std::function<double(double)> integrand;
    if (which == 2) {
        if (temperature == 0)
            integrand = [=](double w) { return weight(w) * detail::one_minus_cos(w * t); };
        else
            integrand = [=](double w) {
                return weight(w) * detail::one_minus_cos(w * t) * coth_factor(temperature, w);
            };
    } else {
        integrand = [=](double w) { return weight(w) * detail::sin_minus_x(w * t); };
    }

    OscillationHints hints;
    hints.cutoff = cutoff;
    hints.periods = {t, tau_far};
    if (r > 0) hints.periods.push_back(tau_near);
    if (which == 2 && temperature > 0) {
        // resolve the coth feature at omega ~ 2/beta; once it sits below
        // 1e-4 of the cutoff its thermal excess is negligible anyway
        const double beta = inverse_temperature(temperature);
        if (beta * cutoff <= 1e4) hints.periods.push_back(beta);
    }

    return integrate_oscillatory(integrand, hints, with_panel_headroom(cfg, hints)).value;
}

double fermionic_kernel_unit(double omega_c_f, double temperature, double t, int which,
                             const QuadratureConfig& cfg) {
    std::function<double(double)> integrand;
    if (which == 2) {
        if (temperature == 0)
            integrand = [=](double w) {
                return std::exp(-w / omega_c_f) * detail::one_minus_cos(w * t) / w;
            };
        else
            integrand = [=](double w) {
                return std::exp(-w / omega_c_f) * detail::one_minus_cos(w * t) *
                       coth_factor(temperature, w) / w;
            };
    } else {
        integrand = [=](double w) {
            return std::exp(-w / omega_c_f) * detail::sin_minus_x(w * t) / w;
        };
    }

    OscillationHints hints;
    hints.cutoff = omega_c_f;
    hints.periods = {t};
    if (which == 2 && temperature > 0) {
        const double beta = inverse_temperature(temperature);
        if (beta * omega_c_f <= 1e4) hints.periods.push_back(beta);
    }

    return integrate_oscillatory(integrand, hints, with_panel_headroom(cfg, hints)).value;
}

struct PhononParams {
    bool piezo_like = true;
    double scale = 0;  // multiplies the unit-coupling kernel
    double cutoff = 0;
};

PhononParams phonon_params(const BathModel& bath) {
    if (const auto* p = std::get_if<PiezoCoupling>(&bath.coupling))
        return {true, p->strength, p->cutoff};
    if (const auto* d = std::get_if<DeformationCoupling>(&bath.coupling))
        return {false, 1.0 / d->strength_sq, d->cutoff};
    throw std::invalid_argument("decay kernels: bath must be piezo or deformation");
}

void check_kernel_args(const RegisterGeometry& geometry, int r, double t) {
    if (r < 0 || r >= geometry.n_qubits)
        throw std::invalid_argument("decay kernel: separation index out of range");
    if (t < 0) throw std::domain_error("decay kernel: t must be >= 0");
}

}  // namespace

double q2_r(const BathModel& bath, const RegisterGeometry& geometry, int r, double t,
            const QuadratureConfig& cfg) {
    const PhononParams p = phonon_params(bath);
    check_kernel_args(geometry, r, t);
    if (t == 0 || p.scale == 0) return 0.0;
    return p.scale * phonon_kernel_unit(p.piezo_like, p.cutoff, bath.temperature, geometry, r, t,
                                        2, with_scaled_abs_tol(cfg, p.scale));
}

double q1_r(const BathModel& bath, const RegisterGeometry& geometry, int r, double t,
            const QuadratureConfig& cfg) {
    const PhononParams p = phonon_params(bath);
    check_kernel_args(geometry, r, t);
    if (t == 0 || p.scale == 0) return 0.0;
    return p.scale * phonon_kernel_unit(p.piezo_like, p.cutoff, bath.temperature, geometry, r, t,
                                        1, with_scaled_abs_tol(cfg, p.scale));
}

double q_fermionic(double eta, double omega_c_f, double temperature, double t, int which,
                   const QuadratureConfig& cfg) {
    if (eta < 0) throw std::invalid_argument("q_fermionic: eta must be >= 0");
    if (!(omega_c_f > 0)) throw std::invalid_argument("q_fermionic: cutoff must be positive");
    if (which != 1 && which != 2) throw std::invalid_argument("q_fermionic: which must be 1 or 2");
    if (temperature < 0) throw std::domain_error("q_fermionic: negative temperature");
    if (t < 0) throw std::domain_error("q_fermionic: t must be >= 0");
    if (t == 0 || eta == 0) return 0.0;
    return eta * fermionic_kernel_unit(omega_c_f, temperature, t, which,
                                       with_scaled_abs_tol(cfg, eta));
}

// ---- cache ----

std::size_t KernelCache::KeyHash::operator()(const Key& k) const {
    auto mix = [](std::size_t seed, std::size_t v) {
        return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
    };
    std::size_t h = std::hash<int>{}(k.tag * 1031 + k.r);
    for (double d : {k.p1, k.p2, k.g1, k.g2, k.g3, k.t, k.temperature})
        h = mix(h, std::hash<std::uint64_t>{}(std::bit_cast<std::uint64_t>(d)));
    return h;
}

double KernelCache::lookup_or(const Key& key, const std::function<double()>& compute) {
    {
        std::lock_guard lock(mutex_);
        if (auto it = values_.find(key); it != values_.end()) return it->second;
    }
    const double value = compute();
    std::lock_guard lock(mutex_);
    return values_.emplace(key, value).first->second;
}

double KernelCache::q1(const BathModel& bath, const RegisterGeometry& geometry, int r, double t,
                       const QuadratureConfig& cfg) {
    const PhononParams p = phonon_params(bath);
    check_kernel_args(geometry, r, t);
    if (t == 0 || p.scale == 0) return 0.0;
    Key key{p.piezo_like ? 0 : 1,
            r,
            1.0,
            p.cutoff,
            geometry.dot_half_separation,
            geometry.spacing,
            geometry.sound_speed,
            t,
            bath.temperature};
    return p.scale * lookup_or(key, [&] {
        return phonon_kernel_unit(p.piezo_like, p.cutoff, bath.temperature, geometry, r, t, 1,
                                  with_scaled_abs_tol(cfg, p.scale));
    });
}

double KernelCache::q2(const BathModel& bath, const RegisterGeometry& geometry, int r, double t,
                       const QuadratureConfig& cfg) {
    const PhononParams p = phonon_params(bath);
    check_kernel_args(geometry, r, t);
    if (t == 0 || p.scale == 0) return 0.0;
    Key key{p.piezo_like ? 0 : 1,
            r,
            2.0,
            p.cutoff,
            geometry.dot_half_separation,
            geometry.spacing,
            geometry.sound_speed,
            t,
            bath.temperature};
    return p.scale * lookup_or(key, [&] {
        return phonon_kernel_unit(p.piezo_like, p.cutoff, bath.temperature, geometry, r, t, 2,
                                  with_scaled_abs_tol(cfg, p.scale));
    });
}

double KernelCache::fermionic(double eta, double omega_c_f, double temperature, double t,
                              int which, const QuadratureConfig& cfg) {
    if (eta < 0) throw std::invalid_argument("q_fermionic: eta must be >= 0");
    if (!(omega_c_f > 0)) throw std::invalid_argument("q_fermionic: cutoff must be positive");
    if (which != 1 && which != 2) throw std::invalid_argument("q_fermionic: which must be 1 or 2");
    if (temperature < 0) throw std::domain_error("q_fermionic: negative temperature");
    if (t < 0) throw std::domain_error("q_fermionic: t must be >= 0");
    if (t == 0 || eta == 0) return 0.0;
    Key key{10 + which, 0, 1.0, omega_c_f, 0, 0, 0, t, temperature};
    return eta * lookup_or(key, [&] {
        return fermionic_kernel_unit(omega_c_f, temperature, t, which,
                                     with_scaled_abs_tol(cfg, eta));
    });
}

std::size_t KernelCache::size() const {
    std::lock_guard lock(mutex_);
    return values_.size();
}

// ---- profiles ----

namespace {

double cached_q(KernelCache* cache, int which, const BathModel& bath,
                const RegisterGeometry& geometry, int r, double t, const QuadratureConfig& cfg) {
    if (cache) return which == 2 ? cache->q2(bath, geometry, r, t, cfg)
                                 : cache->q1(bath, geometry, r, t, cfg);
    return which == 2 ? q2_r(bath, geometry, r, t, cfg) : q1_r(bath, geometry, r, t, cfg);
}

}  // namespace

DecayProfile decay_profile(const BathModel& bath, const RegisterGeometry& geometry, double t,
                           KernelCache* cache, const QuadratureConfig& cfg) {
    const int n = geometry.n_qubits;
    DecayProfile profile;
    profile.time = t;
    profile.q1.assign(n, 0.0);
    profile.q2.assign(n, 0.0);
    profile.r_max_used = n - 1;
    if (t == 0) {
        profile.r_max_used = 0;
        return profile;
    }
    for (int r = 0; r < n; ++r) {
        profile.q2[r] = cached_q(cache, 2, bath, geometry, r, t, cfg);
        profile.q1[r] = cached_q(cache, 1, bath, geometry, r, t, cfg);
    }
    return profile;
}

DecayProfile decay_profile_truncated(const BathModel& bath, const RegisterGeometry& geometry,
                                     double t, KernelCache* cache, const QuadratureConfig& cfg) {
    const int n = geometry.n_qubits;
    DecayProfile profile;
    profile.time = t;
    profile.q1.assign(n, 0.0);
    profile.q2.assign(n, 0.0);
    profile.r_max_used = 0;
    if (t == 0) return profile;

    profile.q2[0] = cached_q(cache, 2, bath, geometry, 0, t, cfg);
    const double floor = std::abs(profile.q2[0]) * cfg.rel_tol;
    int consecutive_below = 0;
    for (int r = 1; r < n; ++r) {
        const double value = cached_q(cache, 2, bath, geometry, r, t, cfg);
        if (std::abs(value) < floor) {
            if (++consecutive_below == 3) break;
        } else {
            consecutive_below = 0;
            profile.r_max_used = r;
        }
        profile.q2[r] = value;
    }
    // zero provisional entries past the last kept separation
    for (int r = profile.r_max_used + 1; r < n; ++r) profile.q2[r] = 0.0;
    for (int r = 0; r <= profile.r_max_used; ++r)
        profile.q1[r] = cached_q(cache, 1, bath, geometry, r, t, cfg);
    return profile;
}

// ---- Toeplitz forms ----

namespace {

double toeplitz_form(const DecayProfile& profile, int m, std::span<const double> x,
                     std::span<const double> y, bool include_diagonal) {
    if (m != 1 && m != 2) throw std::invalid_argument("toeplitz_quadratic: m must be 1 or 2");
    const auto& q = (m == 2) ? profile.q2 : profile.q1;
    const std::size_t n = q.size();
    if (x.size() != n || y.size() != n)
        throw std::invalid_argument("toeplitz_quadratic: dimension mismatch");

    double total = 0;
    if (include_diagonal) {
        double dot = 0;
        for (std::size_t i = 0; i < n; ++i) dot += x[i] * y[i];
        total += q[0] * dot;
    }
    const int r_hi = std::min<int>(profile.r_max_used, static_cast<int>(n) - 1);
    for (int r = 1; r <= r_hi; ++r) {
        if (q[r] == 0.0) continue;
        double cross = 0;
        for (std::size_t i = 0; i + r < n; ++i)
            cross += x[i] * y[i + r] + x[i + r] * y[i];
        total += q[r] * cross;
    }
    return 2.0 * total;
}

}  // namespace

double toeplitz_quadratic(const DecayProfile& profile, int m, std::span<const double> x,
                          std::span<const double> y) {
    return toeplitz_form(profile, m, x, y, true);
}

double toeplitz_quadratic_offdiagonal(const DecayProfile& profile, int m,
                                      std::span<const double> x, std::span<const double> y) {
    return toeplitz_form(profile, m, x, y, false);
}

double e_factor(const DecayProfile& profile) {
    if (!(profile.q2.size() >= 1) || !(profile.q2[0] > 0))
        throw std::domain_error("e_factor: requires Q2_0 > 0 (t > 0)");
    const double n = static_cast<double>(profile.q2.size());
    double sum = 0;
    for (int r = 1; r <= profile.r_max_used; ++r)
        sum += (1.0 - r / n) * profile.q2[r];
    return 2.0 * sum / profile.q2[0];
}

double e_tilde_factor(const DecayProfile& profile) {
    if (!(profile.q2.size() >= 1) || !(profile.q2[0] > 0))
        throw std::domain_error("e_tilde_factor: requires Q2_0 > 0 (t > 0)");
    double sum = 0;
    for (int r = 1; r <= profile.r_max_used; ++r) sum += std::abs(profile.q2[r]);
    return 2.0 * sum / profile.q2[0];
}

}  // namespace qreg
