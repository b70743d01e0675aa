#include "washboard/potential.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "washboard/constants.hpp"

namespace washboard {

WashboardPotential::WashboardPotential(double tilt, double amplitude, double wavenumber,
                                       double phase_offset)
    : tilt_(tilt), amplitude_(amplitude), wavenumber_(wavenumber), phase_offset_(phase_offset) {
    if (!std::isfinite(tilt) || !std::isfinite(amplitude) || !std::isfinite(wavenumber) ||
        !std::isfinite(phase_offset)) {
        throw std::invalid_argument("washboard parameters must be finite");
    }
    if (amplitude < 0.0) throw std::invalid_argument("corrugation amplitude B must be >= 0");
    if (wavenumber <= 0.0) throw std::invalid_argument("wavenumber k must be > 0");
}

double WashboardPotential::period() const { return 2.0 * kPi / wavenumber_; }

double WashboardPotential::critical_tilt() const { return amplitude_ * wavenumber_; }

double WashboardPotential::tilt_ratio() const {
    const double crit = critical_tilt();
    if (crit == 0.0) return std::numeric_limits<double>::infinity();
    return std::abs(tilt_) / crit;
}

double WashboardPotential::evaluate(double x) const {
    return -tilt_ * x - amplitude_ * std::cos(wavenumber_ * x + phase_offset_);
}

double WashboardPotential::force(double x) const {
    return tilt_ - amplitude_ * wavenumber_ * std::sin(wavenumber_ * x + phase_offset_);
}

namespace {

// Stationary-point phases within one period for |A| < B k:
// sin(theta) = r with theta = k x + phi0. The principal branch
// theta = asin(r) has cos(theta) > 0, hence U'' > 0 (minimum); the
// counterpart pi - asin(r) is the maximum.
struct Branches {
    double theta_min;
    double theta_max;
};

Branches stationary_phases(double r) {
    const double t = std::asin(r);
    return {t, kPi - t};
}

void collect_branch(const WashboardPotential& p, double theta, ExtremumKind kind, double lo,
                    double hi, std::vector<Extremum>& out) {
    const double k = p.wavenumber();
    const double two_pi = 2.0 * kPi;
    const double base = (theta - p.phase_offset()) / k;
    // Smallest n with base + 2 pi n / k >= lo.
    const auto n_lo = static_cast<std::int64_t>(std::ceil((lo - base) * k / two_pi - 1e-12));
    for (std::int64_t n = n_lo;; ++n) {
        const double x = base + two_pi * static_cast<double>(n) / k;
        if (x > hi + 1e-12 * (std::abs(hi) + 1.0)) break;
        if (x < lo - 1e-12 * (std::abs(lo) + 1.0)) continue;
        out.push_back({x, p.evaluate(x), kind, n});
    }
}

}  // namespace

std::vector<Extremum> find_extrema(const WashboardPotential& p, double lo, double hi,
                                   double inflection_rel_tol) {
    if (lo > hi) throw std::invalid_argument("find_extrema: lo > hi");
    std::vector<Extremum> out;
    if (p.amplitude() == 0.0) return out;  // pure ramp or constant: no stationary points

    const double r = p.tilt() / p.critical_tilt();
    if (std::abs(1.0 - std::abs(r)) <= inflection_rel_tol) {
        // Merged minima/maxima: single inflection per period at sin(theta) = +-1.
        const double theta = (r >= 0.0 ? 0.5 : -0.5) * kPi;
        collect_branch(p, theta, ExtremumKind::inflection, lo, hi, out);
    } else if (std::abs(r) < 1.0) {
        const Branches b = stationary_phases(r);
        collect_branch(p, b.theta_min, ExtremumKind::minimum, lo, hi, out);
        collect_branch(p, b.theta_max, ExtremumKind::maximum, lo, hi, out);
        std::sort(out.begin(), out.end(),
                  [](const Extremum& a, const Extremum& c) { return a.position < c.position; });
    }
    return out;
}

double barrier_height(const WashboardPotential& p, std::int64_t well_index) {
    if (p.amplitude() == 0.0) throw std::domain_error("barrier_height: potential has no wells");
    const double r = p.tilt() / p.critical_tilt();
    if (std::abs(r) >= 1.0) throw std::domain_error("barrier_height: potential has no wells");

    const Branches b = stationary_phases(r);
    const double k = p.wavenumber();
    const double two_pi = 2.0 * kPi;
    const double n = static_cast<double>(well_index);
    const double x_min = (b.theta_min - p.phase_offset() + two_pi * n) / k;
    // Downhill-side maximum: for A >= 0 the landscape falls toward +x and the
    // escape barrier is the maximum right of the minimum (same branch n); for
    // A < 0 it is the one to the left (branch n - 1).
    const double theta_esc = p.tilt() >= 0.0 ? b.theta_max : b.theta_max - two_pi;
    const double x_esc = (theta_esc - p.phase_offset() + two_pi * n) / k;
    return p.evaluate(x_esc) - p.evaluate(x_min);
}

WashboardPotential pendulum_potential(const PendulumParams& p) {
    if (p.bob_mass <= 0.0 || p.length <= 0.0 || p.gravity <= 0.0) {
        throw std::invalid_argument("pendulum requires m > 0, L > 0, g > 0");
    }
    return WashboardPotential(p.drive_torque, p.gravity_torque(), 1.0, 0.0);
}

}  // namespace washboard
