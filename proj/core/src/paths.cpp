#include "qreg/paths.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qreg {

PiecewisePath PiecewisePath::constant(const BasisPair& pair, double t) {
    PiecewisePath path;
    path.total_time = t;
    path.xi = {pair.xi()};
    path.chi = {pair.chi()};
    return path;
}

void PiecewisePath::validate() const {
    if (!(total_time >= 0)) throw std::invalid_argument("PiecewisePath: negative total time");
    if (xi.empty() || xi.size() != chi.size())
        throw std::invalid_argument("PiecewisePath: xi/chi segment counts must match");
    if (switch_times.size() + 1 != xi.size())
        throw std::invalid_argument("PiecewisePath: need one more segment than switch time");
    if (!std::is_sorted(switch_times.begin(), switch_times.end()))
        throw std::invalid_argument("PiecewisePath: switch times must be sorted");
    for (double s : switch_times)
        if (!(s > 0) || !(s < total_time))
            throw std::invalid_argument("PiecewisePath: switch times must lie inside (0, t)");
    const std::size_t n = xi.front().size();
    for (std::size_t s = 0; s < xi.size(); ++s) {
        if (xi[s].size() != n || chi[s].size() != n)
            throw std::invalid_argument("PiecewisePath: inconsistent qubit counts");
        for (std::size_t i = 0; i < n; ++i)
            if (std::abs(xi[s][i]) + std::abs(chi[s][i]) != 1.0)
                throw std::invalid_argument(
                    "PiecewisePath: need |xi_n| + |chi_n| = 1 per segment and site");
    }
}

ToeplitzKernels::ToeplitzKernels(BathModel bath, RegisterGeometry geometry, KernelCache* cache,
                                 QuadratureConfig cfg)
    : geometry_(geometry) {
    if (!bath.is_phonon())
        throw std::invalid_argument("ToeplitzKernels: bath must be piezo or deformation");
    // The cache owns nothing here; without one, profiles_ still memoizes
    // whole profiles per |tau| within this instance.
    source_ = [bath = std::move(bath), geometry = std::move(geometry), cache,
               cfg](double tau) { return decay_profile(bath, geometry, tau, cache, cfg); };
}

ToeplitzKernels::ToeplitzKernels(RegisterGeometry geometry, ProfileSource source)
    : geometry_(std::move(geometry)), source_(std::move(source)) {
    if (!source_) throw std::invalid_argument("ToeplitzKernels: null profile source");
}

const DecayProfile& ToeplitzKernels::profile(double tau) const {
    const double mag = std::abs(tau);
    auto it = profiles_.find(mag);
    if (it == profiles_.end()) it = profiles_.emplace(mag, source_(mag)).first;
    return it->second;
}

double ToeplitzKernels::form(int m, std::span<const double> x, std::span<const double> y,
                             double tau) const {
    if (tau == 0) return 0.0;
    const double value = toeplitz_quadratic(profile(tau), m, x, y);
    // Q1 is odd in tau, Q2 even.
    return (m == 1 && tau < 0) ? -value : value;
}

double ToeplitzKernels::form_offdiagonal(int m, std::span<const double> x,
                                         std::span<const double> y, double tau) const {
    if (tau == 0) return 0.0;
    const double value = toeplitz_quadratic_offdiagonal(profile(tau), m, x, y);
    return (m == 1 && tau < 0) ? -value : value;
}

double ToeplitzKernels::difference_form(int m, std::span<const double> x,
                                        std::span<const double> y, double t_j, double t_j_prev,
                                        double t_k, double t_k_prev) const {
    return form(m, x, y, t_j - t_k_prev) + form(m, x, y, t_j_prev - t_k) -
           form(m, x, y, t_j - t_k) - form(m, x, y, t_j_prev - t_k_prev);
}

namespace {

Influence evaluate_influence(const std::vector<double>& starts, const std::vector<double>& ends,
                             const std::vector<std::vector<double>>& xi,
                             const std::vector<std::vector<double>>& chi,
                             const ToeplitzKernels& kernels) {
    Influence out;
    const int segments = static_cast<int>(xi.size());
    for (int j = 0; j < segments; ++j) {
        const double dt = ends[j] - starts[j];
        out.lambda_b += kernels.form(2, xi[j], xi[j], dt);
        out.x_b += kernels.form(1, xi[j], chi[j], dt);
    }
    for (int j = 1; j < segments; ++j) {
        for (int k = 0; k < j; ++k) {
            out.lambda_b += kernels.difference_form(2, xi[j], xi[k], ends[j], starts[j],
                                                    ends[k], starts[k]);
            out.x_b += kernels.difference_form(1, xi[j], chi[k], ends[j], starts[j], ends[k],
                                               starts[k]);
        }
    }
    return out;
}

std::pair<std::vector<double>, std::vector<double>> segment_bounds(const PiecewisePath& path) {
    std::vector<double> starts(path.segments()), ends(path.segments());
    for (int s = 0; s < path.segments(); ++s) {
        starts[s] = path.segment_start(s);
        ends[s] = path.segment_end(s);
    }
    return {starts, ends};
}

}  // namespace

Influence influence_functional(const PiecewisePath& path, const ToeplitzKernels& kernels) {
    path.validate();
    if (path.n_qubits() != kernels.geometry().n_qubits)
        throw std::invalid_argument("influence_functional: path/geometry size mismatch");
    const auto [starts, ends] = segment_bounds(path);
    return evaluate_influence(starts, ends, path.xi, path.chi, kernels);
}

Influence influence_functional(const PiecewisePath& path, const BathModel& bath,
                               const RegisterGeometry& geometry, KernelCache* cache,
                               const QuadratureConfig& cfg) {
    ToeplitzKernels kernels(bath, geometry, cache, cfg);
    return influence_functional(path, kernels);
}

PathSplit split_path(const PiecewisePath& path, const std::set<int>& frozen_qubits,
                     const ToeplitzKernels& kernels) {
    path.validate();
    const int n = path.n_qubits();
    if (n != kernels.geometry().n_qubits)
        throw std::invalid_argument("split_path: path/geometry size mismatch");
    for (int q : frozen_qubits)
        if (q < 0 || q >= n) throw std::invalid_argument("split_path: qubit index out of range");

    const int segments = path.segments();
    for (int q : frozen_qubits)
        for (int s = 1; s < segments; ++s)
            if (path.xi[s][q] != path.xi[0][q] || path.chi[s][q] != path.chi[0][q])
                throw std::invalid_argument(
                    "split_path: frozen qubit switches along the path");

    PathSplit split;
    split.xi_trivial.assign(n, 0.0);
    split.chi_trivial.assign(n, 0.0);
    for (int q : frozen_qubits) {
        split.xi_trivial[q] = path.xi[0][q];
        split.chi_trivial[q] = path.chi[0][q];
    }
    split.xi_dynamical.assign(segments, std::vector<double>(n, 0.0));
    split.chi_dynamical.assign(segments, std::vector<double>(n, 0.0));
    for (int s = 0; s < segments; ++s)
        for (int q = 0; q < n; ++q)
            if (!frozen_qubits.contains(q)) {
                split.xi_dynamical[s][q] = path.xi[s][q];
                split.chi_dynamical[s][q] = path.chi[s][q];
            }

    const double t = path.total_time;
    split.lambda_trivial = kernels.form(2, split.xi_trivial, split.xi_trivial, t);
    split.x_trivial = kernels.form(1, split.xi_trivial, split.chi_trivial, t);

    const auto [starts, ends] = segment_bounds(path);
    const Influence dynamical =
        evaluate_influence(starts, ends, split.xi_dynamical, split.chi_dynamical, kernels);
    split.lambda_dynamical = dynamical.lambda_b;
    split.x_dynamical = dynamical.x_b;

    // Cross terms between the frozen and switching parts; only the
    // off-diagonal kernel enters because <xi_tr|xi_dy> = 0 site-wise.
    for (int s = 0; s < segments; ++s) {
        const double t_end = ends[s], t_start = starts[s];
        split.x_cross +=
            kernels.form_offdiagonal(1, split.xi_dynamical[s], split.chi_trivial, t_end) -
            kernels.form_offdiagonal(1, split.xi_dynamical[s], split.chi_trivial, t_start);
        split.x_cross +=
            kernels.form_offdiagonal(1, split.xi_trivial, split.chi_dynamical[s], t - t_start) -
            kernels.form_offdiagonal(1, split.xi_trivial, split.chi_dynamical[s], t - t_end);
        split.lambda_cross +=
            kernels.form_offdiagonal(2, split.xi_dynamical[s], split.xi_trivial, t_end) -
            kernels.form_offdiagonal(2, split.xi_dynamical[s], split.xi_trivial, t_start);
        split.lambda_cross +=
            kernels.form_offdiagonal(2, split.xi_trivial, split.xi_dynamical[s], t - t_start) -
            kernels.form_offdiagonal(2, split.xi_trivial, split.xi_dynamical[s], t - t_end);
    }
    return split;
}

GateDurations gate_durations(double delta, double epsilon) {
    if (!(delta > 0) || !(epsilon > 0))
        throw std::domain_error("gate_durations: delta and epsilon must be positive");
    GateDurations d;
    d.t_not = std::numbers::pi / (2.0 * delta);
    d.t_phase_1 = 3.0 * std::numbers::pi / (4.0 * epsilon);
    d.t_phase_2 = 7.0 * std::numbers::pi / (8.0 * epsilon);
    d.t_hadamard = std::numbers::pi / (2.0 * std::numbers::sqrt2 * delta);
    return d;
}

}  // namespace qreg
