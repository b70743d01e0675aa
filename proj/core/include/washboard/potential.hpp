#pragma once

#include <cstdint>
#include <vector>

namespace washboard {

/// Kind of a stationary point of the potential.
enum class ExtremumKind { minimum, maximum, inflection };

/// One stationary point. `index` is the integer branch number n of the
/// closed-form solution, so minima and maxima belonging to the same well
/// share an index.
struct Extremum {
    double position = 0.0;
    double value = 0.0;
    ExtremumKind kind = ExtremumKind::minimum;
    std::int64_t index = 0;
};

/// Tilted washboard potential
///
///     U(x) = -A x - B cos(k x + phi0)
///
/// with tilt A (energy/length), corrugation amplitude B >= 0 (energy),
/// wavenumber k > 0 (1/length) and phase offset phi0 (rad). Positive A
/// tilts the landscape downhill toward increasing x.
///
/// Wells exist iff |A| < B k; at |A| = B k minima and maxima merge into
/// inflection points, and beyond it the potential is strictly monotone.
class WashboardPotential {
public:
    WashboardPotential() = default;

    /// Throws std::invalid_argument unless B >= 0, k > 0 and all
    /// parameters are finite.
    WashboardPotential(double tilt, double amplitude, double wavenumber,
                       double phase_offset = 0.0);

    double tilt() const { return tilt_; }
    double amplitude() const { return amplitude_; }
    double wavenumber() const { return wavenumber_; }
    double phase_offset() const { return phase_offset_; }

    double period() const;                 ///< 2 pi / k
    double critical_tilt() const;          ///< B k, the |A| at which wells vanish
    double tilt_ratio() const;             ///< |A| / (B k); +inf when B = 0

    double evaluate(double x) const;       ///< U(x)
    double force(double x) const;          ///< -dU/dx = A - B k sin(k x + phi0)

private:
    double tilt_ = 0.0;
    double amplitude_ = 1.0;
    double wavenumber_ = 1.0;
    double phase_offset_ = 0.0;
};

/// All stationary points of `p` with positions in [lo, hi], ascending.
///
/// For |A| < B k these alternate between minima at
/// x = (asin(A/(B k)) - phi0 + 2 pi n)/k and maxima on the downhill-facing
/// branch. When |A|/(B k) is within `inflection_rel_tol` of 1 the merged
/// points are reported as inflections. |A| > B k, or B = 0 (pure ramp or
/// constant), yields an empty result rather than an error.
std::vector<Extremum> find_extrema(const WashboardPotential& p, double lo, double hi,
                                   double inflection_rel_tol = 1e-9);

/// Energy barrier confining well n: U at the adjacent maximum on the
/// downhill side minus U at minimum n. Strictly positive for |A| < B k and
/// monotonically decreasing in |A|/(B k). Throws std::domain_error when the
/// potential has no wells (|A| >= B k or B = 0).
double barrier_height(const WashboardPotential& p, std::int64_t well_index = 0);

/// Rigid pendulum with a constant drive torque about the pivot.
struct PendulumParams {
    double bob_mass = 1.0;      ///< m [kg]
    double length = 1.0;        ///< L [m]
    double gravity = 9.81;      ///< g [m/s^2]
    double damping = 0.0;       ///< eta [N m s/rad]
    double drive_torque = 0.0;  ///< tau [N m]

    double inertia() const { return bob_mass * length * length; }       ///< m L^2
    double gravity_torque() const { return bob_mass * gravity * length; }  ///< m g L
};

/// Potential-energy landscape of the driven pendulum in the angle variable:
/// U(theta) = -tau theta - m g L cos(theta), i.e. a washboard with
/// A = tau, B = m g L, k = 1, phi0 = 0.
WashboardPotential pendulum_potential(const PendulumParams& p);

}  // namespace washboard
