#include "washboard/josephson.hpp"

#include <cmath>
#include <stdexcept>

namespace washboard::josephson {

namespace {

void check_params(const JunctionParams& jp) {
    if (!(jp.critical_current > 0.0)) throw std::invalid_argument("junction: Ic must be > 0");
    if (!(jp.resistance > 0.0)) throw std::invalid_argument("junction: R must be > 0");
    if (!(jp.capacitance > 0.0)) throw std::invalid_argument("junction: C must be > 0");
}

}  // namespace

double voltage_from_phase_rate(double dphi_dt, const PhysConstants& pc) {
    return pc.volt_per_phase_rate() * dphi_dt;
}

double josephson_frequency(double voltage, const PhysConstants& pc) {
    return pc.josephson_const * voltage;
}

JunctionEnergies junction_energies(const JunctionParams& jp, const PhysConstants& pc) {
    check_params(jp);
    const double flux_scale = pc.volt_per_phase_rate();  // hbar/2e
    JunctionEnergies en;
    en.josephson_energy = flux_scale * jp.critical_current;
    en.charging_energy = 2.0 * pc.e * pc.e / jp.capacitance;
    en.ratio = en.josephson_energy / en.charging_energy;
    en.phase_mass = jp.capacitance * flux_scale * flux_scale;

    const double i = jp.bias_current / jp.critical_current;
    if (std::abs(i) < 1.0) {
        // U''(phi_min) = E_J cos(asin(i)) = E_J sqrt(1 - i^2)
        const double curvature = en.josephson_energy * std::sqrt(1.0 - i * i);
        en.plasma_frequency = std::sqrt(curvature / en.phase_mass) / (2.0 * kPi);
    }
    return en;
}

WashboardPotential washboard_of(const JunctionParams& jp, const PhysConstants& pc) {
    check_params(jp);
    const double flux_scale = pc.volt_per_phase_rate();
    return WashboardPotential(flux_scale * jp.bias_current, flux_scale * jp.critical_current, 1.0,
                              0.0);
}

namespace {

RcsjSystem make_reduced(double bias_ratio, double beta_c, std::optional<ReducedAc> ac) {
    if (!(beta_c > 0.0)) throw std::invalid_argument("rcsj: beta_c must be > 0");
    RcsjSystem rs;
    rs.beta_c = beta_c;
    rs.bias_ratio = bias_ratio;
    rs.system.inertia = beta_c;
    rs.system.damping = 1.0;
    rs.system.potential = WashboardPotential(bias_ratio, 1.0, 1.0, 0.0);
    if (ac && ac->amplitude != 0.0) {
        rs.system.drive = AcDrive{ac->amplitude, ac->angular_frequency};
    }
    rs.system.description = "rcsj reduced";
    return rs;
}

}  // namespace

RcsjSystem build_rcsj_system(const JunctionParams& jp, const PhysConstants& pc) {
    check_params(jp);
    const double flux_scale = pc.volt_per_phase_rate();
    const double t0 = flux_scale / (jp.critical_current * jp.resistance);
    const double beta_c =
        jp.critical_current * jp.resistance * jp.resistance * jp.capacitance / flux_scale;

    std::optional<ReducedAc> ac;
    if (jp.ac && jp.ac->amplitude != 0.0) {
        ac = ReducedAc{jp.ac->amplitude / jp.critical_current,
                       2.0 * kPi * jp.ac->frequency * t0};
    }
    RcsjSystem rs = make_reduced(jp.bias_current / jp.critical_current, beta_c, ac);
    rs.time_unit = t0;
    rs.voltage_unit = jp.critical_current * jp.resistance;
    return rs;
}

RcsjSystem build_rcsj_system_reduced(double bias_ratio, double beta_c,
                                     std::optional<ReducedAc> ac) {
    return make_reduced(bias_ratio, beta_c, ac);
}

namespace {

std::vector<IvPoint> sweep(double beta_c, const std::vector<double>& bias_ratios,
                           const SimConfig& cfg, std::optional<ReducedAc> ac) {
    SimConfig run = cfg;
    run.x0 = 0.0;
    run.v0 = 0.0;
    run.seed.reset();
    run.temperature = 0.0;

    std::vector<IvPoint> out;
    out.reserve(bias_ratios.size());
    for (double i : bias_ratios) {
        const RcsjSystem rs = make_reduced(i, beta_c, ac);
        const Trajectory tr = simulate_deterministic(rs.system, run);
        out.push_back({i, mean_velocity(tr)});
    }
    return out;
}

}  // namespace

std::vector<IvPoint> iv_curve(const JunctionParams& jp, const std::vector<double>& bias_ratios,
                              const SimConfig& cfg, const PhysConstants& pc) {
    const RcsjSystem rs = build_rcsj_system(jp, pc);
    std::optional<ReducedAc> ac;
    if (rs.system.drive) ac = ReducedAc{rs.system.drive->amplitude, rs.system.drive->angular_frequency};
    return sweep(rs.beta_c, bias_ratios, cfg, ac);
}

std::vector<IvPoint> iv_curve_reduced(double beta_c, const std::vector<double>& bias_ratios,
                                      const SimConfig& cfg, std::optional<ReducedAc> ac) {
    return sweep(beta_c, bias_ratios, cfg, ac);
}

std::vector<Plateau> detect_plateaus(const std::vector<IvPoint>& curve, double drive_omega,
                                     double rel_tol, std::size_t min_run) {
    if (!(drive_omega > 0.0)) throw std::invalid_argument("detect_plateaus: Omega must be > 0");
    if (min_run < 1) throw std::invalid_argument("detect_plateaus: min_run must be >= 1");

    std::vector<Plateau> out;
    const double tol = rel_tol * drive_omega;
    std::size_t i = 0;
    while (i < curve.size()) {
        const int n = static_cast<int>(std::lround(curve[i].voltage / drive_omega));
        if (n >= 1 && std::abs(curve[i].voltage - n * drive_omega) < tol) {
            std::size_t j = i;
            double vsum = 0.0;
            while (j < curve.size() &&
                   std::lround(curve[j].voltage / drive_omega) == n &&
                   std::abs(curve[j].voltage - n * drive_omega) < tol) {
                vsum += curve[j].voltage;
                ++j;
            }
            if (j - i >= min_run) {
                out.push_back({n, curve[i].bias, curve[j - 1].bias,
                               vsum / static_cast<double>(j - i)});
            }
            i = j;
        } else {
            ++i;
        }
    }
    return out;
}

std::vector<IvPoint> shapiro_sweep(double beta_c, const ReducedAc& ac,
                                   const std::vector<double>& bias_ratios, const SimConfig& cfg) {
    if (!(ac.amplitude > 0.0)) {
        throw std::invalid_argument("shapiro_sweep: ac amplitude must be > 0; use iv_curve");
    }
    if (!(ac.angular_frequency > 0.0)) {
        throw std::invalid_argument("shapiro_sweep: ac frequency must be > 0");
    }
    return sweep(beta_c, bias_ratios, cfg, ac);
}

}  // namespace washboard::josephson
