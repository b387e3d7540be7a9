#include "qreg/oracle.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <unordered_map>

#include "qreg/summation.hpp"

namespace qreg {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

// c1 |g(omega/c_L)|^2 of the phonon bath
double bath_prefactor(const BathModel& bath, double omega) {
    if (const auto* p = std::get_if<PiezoCoupling>(&bath.coupling))
        return p->strength / omega * std::exp(-omega / p->cutoff);
    if (const auto* d = std::get_if<DeformationCoupling>(&bath.coupling))
        return omega / d->strength_sq * std::exp(-omega / d->cutoff);
    throw std::invalid_argument("oracle: bath must be piezo or deformation");
}

struct ModeData {
    double omega = 0;
    double g_sq = 0;   // |g(k)|^2
    double coth = 1;
};

// Enumerates k = 2 pi (n1/L1, n2/L2, n3/L3) with 0 < |k| < 1/a. The body
// receives the wavevector and a shell key (n1^2+n2^2+n3^2 for cubic boxes,
// -1 otherwise) so radial quantities can be memoized per shell.
template <class Body>
std::size_t enumerate_modes(const KLattice& lattice, Body&& body) {
    const double k_max = 1.0 / lattice.lattice_constant;
    const double k_max_sq = k_max * k_max;
    const bool cubic =
        lattice.box[0] == lattice.box[1] && lattice.box[1] == lattice.box[2];
    long m[3];
    for (int i = 0; i < 3; ++i)
        m[i] = static_cast<long>(std::floor(k_max * lattice.box[i] / two_pi));

    std::size_t count = 0;
    for (long n1 = -m[0]; n1 <= m[0]; ++n1) {
        const double kx = two_pi * static_cast<double>(n1) / lattice.box[0];
        for (long n2 = -m[1]; n2 <= m[1]; ++n2) {
            const double ky = two_pi * static_cast<double>(n2) / lattice.box[1];
            const double kxy_sq = kx * kx + ky * ky;
            if (kxy_sq >= k_max_sq) continue;
            for (long n3 = -m[2]; n3 <= m[2]; ++n3) {
                if (n1 == 0 && n2 == 0 && n3 == 0) continue;
                const double kz = two_pi * static_cast<double>(n3) / lattice.box[2];
                const double k_sq = kxy_sq + kz * kz;
                if (k_sq >= k_max_sq) continue;
                if (++count > lattice.mode_cap)
                    throw ResourceCapError("KLattice: mode count exceeds mode_cap");
                const long long shell =
                    cubic ? n1 * n1 + n2 * n2 + n3 * n3 : static_cast<long long>(-1);
                body(kx, ky, kz, k_sq, shell);
            }
        }
    }
    return count;
}

class ShellCache {
  public:
    ShellCache(const BathModel& bath, double sound_speed, double volume, bool thermal)
        : bath_(bath), sound_speed_(sound_speed), thermal_(thermal) {
        inv_c1_ = 2.0 * std::numbers::pi * std::numbers::pi *
                  sound_speed * sound_speed * sound_speed / volume;
    }

    const ModeData& get(double k_sq, long long shell) {
        if (shell >= 0) {
            auto it = cache_.find(shell);
            if (it != cache_.end()) return it->second;
            return cache_.emplace(shell, compute(k_sq)).first->second;
        }
        scratch_ = compute(k_sq);
        return scratch_;
    }

  private:
    ModeData compute(double k_sq) const {
        ModeData d;
        d.omega = sound_speed_ * std::sqrt(k_sq);
        d.g_sq = bath_prefactor(bath_, d.omega) * inv_c1_;
        if (thermal_ && bath_.temperature > 0)
            d.coth = coth_factor(bath_.temperature, d.omega);
        return d;
    }

    const BathModel& bath_;
    double sound_speed_;
    double inv_c1_;
    bool thermal_;
    std::unordered_map<long long, ModeData> cache_;
    ModeData scratch_;
};

}  // namespace

KLattice KLattice::cubic(double box_edge, double lattice_constant, std::size_t mode_cap) {
    KLattice lattice;
    lattice.box = {box_edge, box_edge, box_edge};
    lattice.lattice_constant = lattice_constant;
    lattice.mode_cap = mode_cap;
    lattice.validate();
    return lattice;
}

void KLattice::validate() const {
    for (double edge : box)
        if (!(edge > 0)) throw std::invalid_argument("KLattice: box edges must be positive");
    if (!(lattice_constant > 0))
        throw std::invalid_argument("KLattice: lattice constant must be positive");
    if (mode_cap < 1) throw std::invalid_argument("KLattice: mode_cap must be >= 1");
    auto norm = [](const std::array<double, 3>& v) {
        return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    };
    if (std::abs(norm(chain_dir) - 1.0) > 1e-12 || std::abs(norm(dot_dir) - 1.0) > 1e-12)
        throw std::invalid_argument("KLattice: orientation vectors must be unit length");
    const double dot = chain_dir[0] * dot_dir[0] + chain_dir[1] * dot_dir[1] +
                       chain_dir[2] * dot_dir[2];
    if (std::abs(dot) > 1e-12)
        throw std::invalid_argument("KLattice: orientation vectors must be orthogonal");
}

std::size_t KLattice::count_modes() const {
    validate();
    return enumerate_modes(*this, [](double, double, double, double, long long) {});
}

double oracle_q(const KLattice& lattice, const BathModel& bath,
                const RegisterGeometry& geometry, int r, double t, int which) {
    lattice.validate();
    if (r < 0 || r >= geometry.n_qubits)
        throw std::invalid_argument("oracle_q: separation index out of range");
    if (which != 1 && which != 2) throw std::invalid_argument("oracle_q: which must be 1 or 2");
    if (t < 0) throw std::domain_error("oracle_q: t must be >= 0");

    const double volume = lattice.box[0] * lattice.box[1] * lattice.box[2];
    ShellCache shells(bath, geometry.sound_speed, volume, which == 2);
    const double d = geometry.spacing;
    const double q0 = geometry.dot_half_separation;

    CompensatedSum sum;
    enumerate_modes(lattice, [&](double kx, double ky, double kz, double k_sq, long long shell) {
        const ModeData& mode = shells.get(k_sq, shell);
        const double phi_d =
            (kx * lattice.chain_dir[0] + ky * lattice.chain_dir[1] + kz * lattice.chain_dir[2]) *
            d;
        const double phi_q =
            (kx * lattice.dot_dir[0] + ky * lattice.dot_dir[1] + kz * lattice.dot_dir[2]) * q0;
        const double a = phi_d * r;
        const double wt = mode.omega * t;
        const double s = std::sin(phi_q);

        double bracket;
        if (which == 2) {
            const double plus = std::cos(a) - std::cos(wt + a) - wt * std::sin(a);
            const double minus = std::cos(a) - std::cos(wt - a) + wt * std::sin(a);
            bracket = 0.5 * (plus + minus) * mode.coth;
        } else {
            const double plus = std::sin(wt + a) - wt * std::cos(a) - std::sin(a);
            const double minus = std::sin(wt - a) - wt * std::cos(a) + std::sin(a);
            bracket = 0.5 * (plus + minus);
        }
        sum.add(2.0 * mode.g_sq / (mode.omega * mode.omega) * s * s * bracket);
    });
    return sum.value();
}

std::pair<double, double> oracle_psi_phi(const KLattice& lattice, const BathModel& bath,
                                         const RegisterGeometry& geometry, int qubit,
                                         double t) {
    lattice.validate();
    const int n_qubits = geometry.n_qubits;
    if (qubit < 0 || qubit >= n_qubits)
        throw std::invalid_argument("oracle_psi_phi: qubit index out of range");
    if (t < 0) throw std::domain_error("oracle_psi_phi: t must be >= 0");

    const double volume = lattice.box[0] * lattice.box[1] * lattice.box[2];
    ShellCache shells(bath, geometry.sound_speed, volume, false);
    const double d = geometry.spacing;
    const double q0 = geometry.dot_half_separation;
    // sin(X) - sin(Y) and cos(X) - cos(Y) are folded into products with the
    // Dirichlet-style ratio sin(N phi/2)/sin(phi/2), which keeps the
    // removable sin(k.d/2) = 0 points finite.
    const double offset = qubit + 0.5 - 0.5 * n_qubits;  // (n - 1/2 - N/2), n 1-based

    CompensatedSum psi, phi;
    enumerate_modes(lattice, [&](double kx, double ky, double kz, double k_sq, long long shell) {
        const ModeData& mode = shells.get(k_sq, shell);
        const double phi_d =
            (kx * lattice.chain_dir[0] + ky * lattice.chain_dir[1] + kz * lattice.chain_dir[2]) *
            d;
        const double phi_q =
            (kx * lattice.dot_dir[0] + ky * lattice.dot_dir[1] + kz * lattice.dot_dir[2]) * q0;

        const double half = 0.5 * phi_d;
        const double sh = std::sin(half);
        double ratio;
        if (std::abs(sh) < 1e-9)
            ratio = n_qubits * std::cos(n_qubits * half) / std::cos(half);
        else
            ratio = std::sin(n_qubits * half) / sh;

        const double odd = std::sin(phi_q) * std::cos(phi_q);
        const double arg = phi_d * offset;
        psi.add(-4.0 * mode.g_sq / (mode.omega * mode.omega) * odd *
                std::cos(mode.omega * t - arg) * ratio);
        phi.add(-4.0 * mode.g_sq / mode.omega * odd * std::sin(arg) * ratio);
    });
    return {psi.value(), phi.value()};
}

std::complex<double> oracle_mode_kernel(double omega, double tau) {
    return {(1.0 - std::cos(omega * tau)) / (omega * omega),
            -tau / omega + std::sin(omega * tau) / (omega * omega)};
}

std::complex<double> oracle_mode_rectangle(double omega, double t_j, double t_j_prev,
                                           double t_m, double t_m_prev) {
    return oracle_mode_kernel(omega, t_j - t_m_prev) + oracle_mode_kernel(omega, t_j_prev - t_m) -
           oracle_mode_kernel(omega, t_j - t_m) - oracle_mode_kernel(omega, t_j_prev - t_m_prev);
}

Influence oracle_influence(const KLattice& lattice, const BathModel& bath,
                           const RegisterGeometry& geometry, const PiecewisePath& path) {
    lattice.validate();
    path.validate();
    if (path.n_qubits() != geometry.n_qubits)
        throw std::invalid_argument("oracle_influence: path/geometry size mismatch");

    const int segments = path.segments();
    std::vector<double> starts(segments), ends(segments);
    for (int s = 0; s < segments; ++s) {
        starts[s] = path.segment_start(s);
        ends[s] = path.segment_end(s);
    }

    const double volume = lattice.box[0] * lattice.box[1] * lattice.box[2];
    ShellCache shells(bath, geometry.sound_speed, volume, true);
    const double d = geometry.spacing;
    const double q0 = geometry.dot_half_separation;
    const int n = geometry.n_qubits;
    using Complex = std::complex<double>;

    CompensatedSum lambda_sum, x_sum;
    std::vector<Complex> delta(segments), sigma(segments);

    enumerate_modes(lattice, [&](double kx, double ky, double kz, double k_sq, long long shell) {
        const ModeData& mode = shells.get(k_sq, shell);
        const double omega = mode.omega;
        const double phi_d =
            (kx * lattice.chain_dir[0] + ky * lattice.chain_dir[1] + kz * lattice.chain_dir[2]) *
            d;
        const double phi_q =
            (kx * lattice.dot_dir[0] + ky * lattice.dot_dir[1] + kz * lattice.dot_dir[2]) * q0;
        const double g = std::sqrt(mode.g_sq);
        const double sq = std::sin(phi_q);
        const double cq = std::cos(phi_q);

        Complex site_sum = 0;  // sum_n exp(-i phi_d (n-1))
        for (int s = 0; s < segments; ++s) {
            delta[s] = 0;
            sigma[s] = 0;
        }
        for (int site = 0; site < n; ++site) {
            const Complex phase = std::polar(1.0, -phi_d * site);
            site_sum += phase;
            for (int s = 0; s < segments; ++s) {
                delta[s] += phase * path.xi[s][site];
                sigma[s] += phase * path.chi[s][site];
            }
        }
        for (int s = 0; s < segments; ++s) {
            delta[s] *= Complex(0, -2.0 * g * sq);
            sigma[s] = 2.0 * g * (cq * site_sum - Complex(0, sq) * sigma[s]);
        }

        double lambda_mode = 0, x_mode = 0;
        for (int s = 0; s < segments; ++s) {
            const Complex qk = oracle_mode_kernel(omega, ends[s] - starts[s]);
            lambda_mode += qk.real() * std::norm(delta[s]);
            x_mode += (qk * std::conj(delta[s]) * sigma[s]).imag();
        }
        for (int j = 1; j < segments; ++j) {
            for (int k = 0; k < j; ++k) {
                const Complex m_jk =
                    oracle_mode_rectangle(omega, ends[j], starts[j], ends[k], starts[k]);
                lambda_mode += (std::conj(delta[j]) * delta[k] * m_jk).real();
                x_mode += (std::conj(delta[j]) * sigma[k] * m_jk).imag();
            }
        }
        lambda_sum.add(mode.coth * lambda_mode);
        x_sum.add(x_mode);
    });
    return {lambda_sum.value(), x_sum.value()};
}

}  // namespace qreg
