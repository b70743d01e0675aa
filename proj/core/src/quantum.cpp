#include "washboard/quantum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace washboard::quantum {

WellProblem WellProblem::from_washboard(const WashboardPotential& p, std::int64_t well_index,
                                        double mass, double hbar, int grid_points) {
    if (p.amplitude() == 0.0 || p.tilt_ratio() >= 1.0) {
        throw std::invalid_argument("from_washboard: potential has no wells");
    }
    const double r = p.tilt() / p.critical_tilt();
    const double theta_min = std::asin(r);
    const double theta_max = kPi - theta_min;
    const double two_pi = 2.0 * kPi;
    const double k = p.wavenumber();
    const double n = static_cast<double>(well_index);
    const double x_min = (theta_min - p.phase_offset() + two_pi * n) / k;
    const double x_right = (theta_max - p.phase_offset() + two_pi * n) / k;
    const double x_left = (theta_max - p.phase_offset() + two_pi * (n - 1.0)) / k;

    WellProblem wp;
    wp.potential = [p](double x) { return p.evaluate(x); };
    wp.mass = mass;
    wp.hbar = hbar;
    wp.grid_points = grid_points;
    wp.box_lo = x_left;
    wp.box_hi = x_right;
    if (!(wp.potential(wp.box_lo) > wp.potential(x_min)) ||
        !(wp.potential(wp.box_hi) > wp.potential(x_min))) {
        throw std::invalid_argument("from_washboard: walls do not confine the minimum");
    }
    return wp;
}

WellProblem WellProblem::harmonic(double omega, double mass, double hbar, double half_width,
                                  int grid_points) {
    if (!(omega > 0.0) || !(mass > 0.0) || !(hbar > 0.0) || !(half_width > 0.0)) {
        throw std::invalid_argument("harmonic: all parameters must be > 0");
    }
    WellProblem wp;
    wp.potential = [mass, omega](double x) { return 0.5 * mass * omega * omega * x * x; };
    wp.mass = mass;
    wp.hbar = hbar;
    wp.grid_points = grid_points;
    wp.box_lo = -half_width;
    wp.box_hi = half_width;
    return wp;
}

WellProblem WellProblem::square_well(double width, double mass, double hbar, int grid_points) {
    if (!(width > 0.0) || !(mass > 0.0) || !(hbar > 0.0)) {
        throw std::invalid_argument("square_well: all parameters must be > 0");
    }
    WellProblem wp;
    wp.potential = [](double) { return 0.0; };
    wp.mass = mass;
    wp.hbar = hbar;
    wp.grid_points = grid_points;
    wp.box_lo = 0.0;
    wp.box_hi = width;
    return wp;
}

std::vector<double> EigenSpectrum::spacings() const {
    std::vector<double> out;
    if (levels.size() < 2) return out;
    out.reserve(levels.size() - 1);
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) out.push_back(levels[i + 1] - levels[i]);
    return out;
}

namespace {

// Number of eigenvalues of the symmetric tridiagonal matrix (diag d,
// offdiag e) strictly below lambda, by the Sturm sequence of leading
// principal minors in LDL^T form.
int sturm_count(const std::vector<double>& d, const std::vector<double>& e, double lambda,
                double pivmin) {
    int count = 0;
    double t = d[0] - lambda;
    if (t < 0.0) ++count;
    for (std::size_t i = 1; i < d.size(); ++i) {
        if (std::abs(t) < pivmin) t = (t < 0.0 ? -pivmin : pivmin);
        t = d[i] - lambda - e[i - 1] * e[i - 1] / t;
        if (t < 0.0) ++count;
    }
    return count;
}

// Lowest m eigenvalues by bisection on the Sturm count.
std::vector<double> tridiag_lowest(const std::vector<double>& d, const std::vector<double>& e,
                                   int m) {
    const std::size_t n = d.size();
    double lo = d[0];
    double hi = d[0];
    for (std::size_t i = 0; i < n; ++i) {
        const double radius =
            (i > 0 ? std::abs(e[i - 1]) : 0.0) + (i + 1 < n ? std::abs(e[i]) : 0.0);
        lo = std::min(lo, d[i] - radius);
        hi = std::max(hi, d[i] + radius);
    }
    double emax2 = 0.0;
    for (double v : e) emax2 = std::max(emax2, v * v);
    const double pivmin = std::numeric_limits<double>::min() * std::max(1.0, emax2);
    const double span_eps = std::numeric_limits<double>::epsilon();

    std::vector<double> out(static_cast<std::size_t>(m));
    for (int j = 0; j < m; ++j) {
        double a = lo;
        double b = hi;
        for (int iter = 0; iter < 200; ++iter) {
            const double mid = 0.5 * (a + b);
            if (mid <= a || mid >= b) break;
            if (sturm_count(d, e, mid, pivmin) > j) {
                b = mid;
            } else {
                a = mid;
            }
            if (b - a <= span_eps * std::max(std::abs(a), std::abs(b)) * 2.0) break;
        }
        out[static_cast<std::size_t>(j)] = 0.5 * (a + b);
    }
    return out;
}

std::vector<double> solve_grid(const WellProblem& wp, int n_interior, int n_levels) {
    const double h = (wp.box_hi - wp.box_lo) / static_cast<double>(n_interior + 1);
    const double kinetic = wp.hbar * wp.hbar / (2.0 * wp.mass * h * h);
    std::vector<double> d(static_cast<std::size_t>(n_interior));
    std::vector<double> e(static_cast<std::size_t>(n_interior - 1), -kinetic);
    for (int i = 0; i < n_interior; ++i) {
        const double x = wp.box_lo + h * static_cast<double>(i + 1);
        d[static_cast<std::size_t>(i)] = 2.0 * kinetic + wp.potential(x);
    }
    return tridiag_lowest(d, e, n_levels);
}

}  // namespace

EigenSpectrum eigenlevels(const WellProblem& wp, int n_levels) {
    if (n_levels < 2) throw std::invalid_argument("eigenlevels: n_levels must be >= 2");
    if (!wp.potential) throw std::invalid_argument("eigenlevels: potential not set");
    if (!(wp.mass > 0.0) || !(wp.hbar > 0.0)) {
        throw std::invalid_argument("eigenlevels: mass and hbar must be > 0");
    }
    if (!(wp.box_hi > wp.box_lo)) throw std::invalid_argument("eigenlevels: empty box");

    constexpr int kMaxInterior = 1 << 14;
    constexpr double kRelTol = 1e-4;
    int n = std::max(64, wp.grid_points);
    if (n_levels >= n) throw std::invalid_argument("eigenlevels: more levels than grid points");

    std::vector<double> coarse = solve_grid(wp, n, n_levels);
    double scale = 0.0;
    for (double v : coarse) scale = std::max(scale, std::abs(v));

    EigenSpectrum spec;
    int refinements = 0;
    for (;;) {
        if (2 * n > kMaxInterior) {
            throw std::runtime_error("eigenlevels: grid refinement did not converge");
        }
        n *= 2;
        ++refinements;
        std::vector<double> fine = solve_grid(wp, n, n_levels);
        double max_rel = 0.0;
        for (int j = 0; j < n_levels; ++j) {
            const auto ju = static_cast<std::size_t>(j);
            const double denom = std::max(std::abs(fine[ju]), 1e-8 * std::max(scale, 1e-300));
            max_rel = std::max(max_rel, std::abs(fine[ju] - coarse[ju]) / denom);
        }
        scale = 0.0;
        for (double v : fine) scale = std::max(scale, std::abs(v));
        if (max_rel < kRelTol) {
            spec.levels = std::move(fine);
            spec.convergence = {n, max_rel, refinements};
            break;
        }
        coarse = std::move(fine);
    }

    spec.box_edge_energy = std::min(wp.potential(wp.box_lo), wp.potential(wp.box_hi));
    spec.count_bound = static_cast<int>(
        std::count_if(spec.levels.begin(), spec.levels.end(),
                      [&](double v) { return v < spec.box_edge_energy; }));
    spec.more_than_bound = spec.count_bound < n_levels;
    return spec;
}

std::vector<double> eigenlevels_fixed_grid(const WellProblem& wp, int n_levels) {
    if (n_levels < 1) throw std::invalid_argument("eigenlevels_fixed_grid: n_levels must be >= 1");
    if (!wp.potential) throw std::invalid_argument("eigenlevels_fixed_grid: potential not set");
    if (!(wp.mass > 0.0) || !(wp.hbar > 0.0)) {
        throw std::invalid_argument("eigenlevels_fixed_grid: mass and hbar must be > 0");
    }
    if (!(wp.box_hi > wp.box_lo)) throw std::invalid_argument("eigenlevels_fixed_grid: empty box");
    if (n_levels >= wp.grid_points) {
        throw std::invalid_argument("eigenlevels_fixed_grid: more levels than grid points");
    }
    return solve_grid(wp, wp.grid_points, n_levels);
}

std::vector<LevelSpacing> level_spacings(const EigenSpectrum& spec, double planck) {
    if (spec.levels.size() < 2) throw std::invalid_argument("level_spacings: need >= 2 levels");
    std::vector<LevelSpacing> out;
    out.reserve(spec.levels.size() - 1);
    for (std::size_t i = 0; i + 1 < spec.levels.size(); ++i) {
        const double de = spec.levels[i + 1] - spec.levels[i];
        out.push_back({static_cast<int>(i), de, de / planck});
    }
    return out;
}

double transition_frequency(double e_lo, double e_hi, double planck) {
    if (!(e_hi > e_lo)) throw std::invalid_argument("transition_frequency: gap must be positive");
    return (e_hi - e_lo) / planck;
}

double thermal_selectivity(double temperature, double nu01, const PhysConstants& pc) {
    if (!(nu01 > 0.0)) throw std::invalid_argument("thermal_selectivity: nu01 must be > 0");
    if (temperature < 0.0) throw std::invalid_argument("thermal_selectivity: T must be >= 0");
    return pc.k_B * temperature / (pc.h * nu01);
}

QubitState make_qubit_state(std::complex<double> alpha, std::complex<double> beta, double tol) {
    const double norm = std::norm(alpha) + std::norm(beta);
    if (std::abs(norm - 1.0) > tol) {
        throw NormalizationError(
            "qubit amplitudes not normalized: |alpha|^2 + |beta|^2 = " + std::to_string(norm),
            norm);
    }
    return {alpha, beta};
}

std::vector<std::string> enumerate_basis(int n_qubits) {
    if (n_qubits < 0) throw std::invalid_argument("enumerate_basis: n_qubits must be >= 0");
    if (n_qubits > 24) throw std::invalid_argument("enumerate_basis: n_qubits > 24 exceeds guard");
    const std::size_t count = std::size_t{1} << n_qubits;
    std::vector<std::string> out;
    out.reserve(count);
    std::string label;
    for (std::size_t v = 0; v < count; ++v) {
        label.clear();
        label += '|';
        for (int b = n_qubits - 1; b >= 0; --b) {
            label += ((v >> b) & 1u) ? '1' : '0';
            if (b > 0) label += ',';
        }
        label += '>';
        out.push_back(label);
    }
    return out;
}

}  // namespace washboard::quantum
