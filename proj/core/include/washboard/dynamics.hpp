#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "washboard/constants.hpp"
#include "washboard/potential.hpp"

namespace washboard {

/// One-dimensional potential as seen by the integrators: the energy and the
/// conservative force -dU/dx, both as callables so non-washboard landscapes
/// (e.g. an envelope-modulated optical lattice) can be integrated too.
struct PotentialFn {
    std::function<double(double)> value;
    std::function<double(double)> force;

    PotentialFn() = default;
    PotentialFn(std::function<double(double)> v, std::function<double(double)> f)
        : value(std::move(v)), force(std::move(f)) {}
    /// Implicit adapter: analytic value/force of a washboard.
    PotentialFn(const WashboardPotential& p)
        : value([p](double x) { return p.evaluate(x); }),
          force([p](double x) { return p.force(x); }) {}
};

/// Sinusoidal external drive F_ac sin(w_ac t) added to the force.
struct AcDrive {
    double amplitude = 0.0;          ///< F_ac [N or reduced]
    double angular_frequency = 0.0;  ///< w_ac [rad/s or reduced]
};

/// The mechanical system the integrators act on. With `inertia` set the
/// equation of motion is
///
///     M x'' + eta x' = -dU/dx + F_ac sin(w_ac t)
///
/// and without it the overdamped (massless) limit
///
///     eta x' = -dU/dx + F_ac sin(w_ac t) + thermal noise.
struct DynamicalSystem {
    std::optional<double> inertia;  ///< M > 0 [kg]; empty selects overdamped form
    double damping = 0.0;           ///< eta >= 0 [kg/s]
    PotentialFn potential;
    std::optional<AcDrive> drive;
    std::string description;        ///< free-form label echoed into trajectory metadata
};

/// Fixed-step integration controls. `seed` feeds the noise stream and must
/// be set for stochastic runs; `temperature` is in kelvin.
struct SimConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    double x0 = 0.0;
    double v0 = 0.0;
    std::size_t sample_stride = 1;
    std::optional<std::uint64_t> seed;
    double temperature = 0.0;
};

struct TrajectoryMeta {
    SimConfig config;
    std::string system;
};

/// Sampled trajectory. `velocities` is absent for overdamped runs.
/// Sample i corresponds to integration step i * sample_stride, so with
/// n = floor(t_end/dt) total steps there are floor(n/sample_stride) + 1
/// samples including the initial state.
struct Trajectory {
    std::vector<double> times;
    std::vector<double> positions;
    std::optional<std::vector<double>> velocities;
    TrajectoryMeta meta;
};

/// Classical fourth-order Runge-Kutta on the second-order equation of
/// motion. Requires inertia M > 0, eta >= 0, dt > 0, t_end > dt. Throws
/// std::runtime_error naming the step at which the state turned non-finite.
Trajectory simulate_deterministic(const DynamicalSystem& sys, const SimConfig& cfg);

/// Euler-Maruyama integration of the overdamped Langevin equation with
/// Gaussian thermal noise of strength sqrt(2 eta k_B T) per unit time.
/// Requires the overdamped form (no inertia), eta > 0, T >= 0 and a seed.
/// At T = 0 no random numbers are drawn and the result is bit-for-bit the
/// deterministic overdamped path.
Trajectory simulate_langevin(const DynamicalSystem& sys, const SimConfig& cfg,
                             const PhysConstants& pc = PhysConstants::codata2018());

/// Drift velocity estimated from the retained tail of the trajectory:
/// (x_last - x_first_retained) / (t_last - t_first_retained), where the
/// first `discard_fraction` of samples is dropped as transient. Throws
/// std::invalid_argument when fewer than two samples remain.
double mean_velocity(const Trajectory& tr, double discard_fraction = 0.5);

enum class MotionState { trapped, running };

/// Trapped/running classification: trapped iff the position range over the
/// retained tail stays below `well_width` (one spatial period).
MotionState classify_state(const Trajectory& tr, double well_width,
                           double discard_fraction = 0.5);

/// Deterministic standard-normal stream: std::mt19937_64 drives uniform
/// doubles u = (x >> 11) * 2^-53 which feed the Marsaglia polar transform.
/// Both building blocks are fixed by this definition, so a given seed
/// yields the same variates on every platform.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : engine_(seed) {}

    double next();

private:
    double uniform();

    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Per-trajectory stream seed for ensembles, derived from the ensemble seed
/// and the trajectory index by a splitmix64 mix so streams are decorrelated
/// and independent of evaluation order.
std::uint64_t derive_stream_seed(std::uint64_t ensemble_seed, std::uint64_t trajectory_index);

}  // namespace washboard
