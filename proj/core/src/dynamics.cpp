#include "washboard/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace washboard {

namespace {

void check_common(const DynamicalSystem& sys, const SimConfig& cfg) {
    if (!sys.potential.value || !sys.potential.force) {
        throw std::invalid_argument("simulate: potential callbacks not set");
    }
    if (!(cfg.dt > 0.0)) throw std::invalid_argument("simulate: dt must be > 0");
    if (!(cfg.t_end > cfg.dt)) throw std::invalid_argument("simulate: t_end must exceed dt");
    if (cfg.sample_stride == 0) throw std::invalid_argument("simulate: sample_stride must be >= 1");
    if (sys.damping < 0.0) throw std::invalid_argument("simulate: damping must be >= 0");
}

std::size_t total_steps(const SimConfig& cfg) {
    return static_cast<std::size_t>(std::floor(cfg.t_end / cfg.dt));
}

[[noreturn]] void fail_nonfinite(std::size_t step) {
    throw std::runtime_error("simulate: non-finite state at step " + std::to_string(step));
}

double drive_force(const DynamicalSystem& sys, double t) {
    if (!sys.drive) return 0.0;
    return sys.drive->amplitude * std::sin(sys.drive->angular_frequency * t);
}

}  // namespace

Trajectory simulate_deterministic(const DynamicalSystem& sys, const SimConfig& cfg) {
    check_common(sys, cfg);
    if (!sys.inertia || !(*sys.inertia > 0.0)) {
        throw std::invalid_argument("simulate_deterministic: requires inertia M > 0");
    }
    const double m = *sys.inertia;
    const double eta = sys.damping;
    const auto& force = sys.potential.force;
    const auto accel = [&](double x, double v, double t) {
        return (force(x) + drive_force(sys, t) - eta * v) / m;
    };

    const std::size_t n = total_steps(cfg);
    const double dt = cfg.dt;

    Trajectory tr;
    tr.meta = {cfg, sys.description};
    tr.velocities.emplace();
    tr.times.reserve(n / cfg.sample_stride + 1);
    tr.positions.reserve(n / cfg.sample_stride + 1);
    tr.velocities->reserve(n / cfg.sample_stride + 1);

    double x = cfg.x0;
    double v = cfg.v0;
    tr.times.push_back(0.0);
    tr.positions.push_back(x);
    tr.velocities->push_back(v);

    for (std::size_t i = 1; i <= n; ++i) {
        const double t = static_cast<double>(i - 1) * dt;

        const double k1x = v;
        const double k1v = accel(x, v, t);
        const double k2x = v + 0.5 * dt * k1v;
        const double k2v = accel(x + 0.5 * dt * k1x, v + 0.5 * dt * k1v, t + 0.5 * dt);
        const double k3x = v + 0.5 * dt * k2v;
        const double k3v = accel(x + 0.5 * dt * k2x, v + 0.5 * dt * k2v, t + 0.5 * dt);
        const double k4x = v + dt * k3v;
        const double k4v = accel(x + dt * k3x, v + dt * k3v, t + dt);

        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if (!std::isfinite(x) || !std::isfinite(v)) fail_nonfinite(i);

        if (i % cfg.sample_stride == 0) {
            tr.times.push_back(static_cast<double>(i) * dt);
            tr.positions.push_back(x);
            tr.velocities->push_back(v);
        }
    }
    return tr;
}

Trajectory simulate_langevin(const DynamicalSystem& sys, const SimConfig& cfg,
                             const PhysConstants& pc) {
    check_common(sys, cfg);
    if (sys.inertia) {
        throw std::invalid_argument("simulate_langevin: overdamped form only (no inertia)");
    }
    if (!(sys.damping > 0.0)) throw std::invalid_argument("simulate_langevin: requires eta > 0");
    if (cfg.temperature < 0.0) throw std::invalid_argument("simulate_langevin: T must be >= 0");
    if (!cfg.seed) throw std::invalid_argument("simulate_langevin: seed not set");

    const double eta = sys.damping;
    const double dt = cfg.dt;
    const std::size_t n = total_steps(cfg);
    const bool thermal = cfg.temperature > 0.0;
    const double noise_amp = thermal ? std::sqrt(2.0 * pc.k_B * cfg.temperature * dt / eta) : 0.0;
    GaussianStream noise(*cfg.seed);
    const auto& force = sys.potential.force;

    Trajectory tr;
    tr.meta = {cfg, sys.description};
    tr.times.reserve(n / cfg.sample_stride + 1);
    tr.positions.reserve(n / cfg.sample_stride + 1);

    double x = cfg.x0;
    tr.times.push_back(0.0);
    tr.positions.push_back(x);

    for (std::size_t i = 1; i <= n; ++i) {
        const double t = static_cast<double>(i - 1) * dt;
        x += (force(x) + drive_force(sys, t)) / eta * dt;
        if (thermal) x += noise_amp * noise.next();
        if (!std::isfinite(x)) fail_nonfinite(i);

        if (i % cfg.sample_stride == 0) {
            tr.times.push_back(static_cast<double>(i) * dt);
            tr.positions.push_back(x);
        }
    }
    return tr;
}

namespace {

std::size_t tail_start(const Trajectory& tr, double discard_fraction) {
    if (discard_fraction < 0.0 || discard_fraction >= 1.0) {
        throw std::invalid_argument("discard_fraction must be in [0, 1)");
    }
    const std::size_t n = tr.positions.size();
    if (n < 2) throw std::invalid_argument("trajectory too short");
    return static_cast<std::size_t>(std::floor(discard_fraction * static_cast<double>(n - 1)));
}

}  // namespace

double mean_velocity(const Trajectory& tr, double discard_fraction) {
    const std::size_t i0 = tail_start(tr, discard_fraction);
    const std::size_t last = tr.positions.size() - 1;
    if (last - i0 < 1) throw std::invalid_argument("mean_velocity: fewer than two retained samples");
    return (tr.positions[last] - tr.positions[i0]) / (tr.times[last] - tr.times[i0]);
}

MotionState classify_state(const Trajectory& tr, double well_width, double discard_fraction) {
    if (!(well_width > 0.0)) throw std::invalid_argument("classify_state: well_width must be > 0");
    const std::size_t i0 = tail_start(tr, discard_fraction);
    double lo = tr.positions[i0];
    double hi = lo;
    for (std::size_t i = i0 + 1; i < tr.positions.size(); ++i) {
        lo = std::min(lo, tr.positions[i]);
        hi = std::max(hi, tr.positions[i]);
    }
    return (hi - lo) < well_width ? MotionState::trapped : MotionState::running;
}

double GaussianStream::uniform() {
    // 53-bit mantissa uniform in (0, 1); zero is rejected so log() below
    // stays finite.
    for (;;) {
        const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
        if (u != 0.0) return u;
    }
}

double GaussianStream::next() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
}

std::uint64_t derive_stream_seed(std::uint64_t ensemble_seed, std::uint64_t trajectory_index) {
    std::uint64_t z = ensemble_seed + 0x9E3779B97F4A7C15ull * (trajectory_index + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace washboard
