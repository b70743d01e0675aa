#pragma once

#include <optional>
#include <vector>

#include "washboard/constants.hpp"
#include "washboard/dynamics.hpp"
#include "washboard/potential.hpp"

namespace washboard::josephson {

/// Sinusoidal bias component I_ac sin(2 pi f t) on top of the dc bias.
struct AcBias {
    double amplitude = 0.0;  ///< I_ac [A]
    double frequency = 0.0;  ///< f [Hz]
};

/// Resistively and capacitively shunted junction.
struct JunctionParams {
    double critical_current = 1e-3;  ///< Ic > 0 [A]
    double resistance = 1.0;         ///< R > 0 [ohm]
    double capacitance = 1e-15;      ///< C > 0 [F]
    double bias_current = 0.0;       ///< I [A]
    std::optional<AcBias> ac;
};

/// Characteristic junction energies and the phase-particle scales derived
/// from them.
struct JunctionEnergies {
    double josephson_energy = 0.0;   ///< E_J = (hbar/2e) Ic [J]
    double charging_energy = 0.0;    ///< E_C = 2 e^2 / C [J]
    double ratio = 0.0;              ///< E_J / E_C
    double phase_mass = 0.0;         ///< M_phi = C (hbar/2e)^2 [J s^2]
    /// Small-oscillation frequency of the phase in its well,
    /// (1/2 pi) sqrt(U''(phi_min)/M_phi) [Hz]; absent when |I| >= Ic.
    std::optional<double> plasma_frequency;
};

/// dc voltage from the phase rate: V = (hbar/2e) dphi/dt.
double voltage_from_phase_rate(double dphi_dt,
                               const PhysConstants& pc = PhysConstants::codata2018());

/// Josephson frequency of a junction held at dc voltage V: f = (2e/h) V.
double josephson_frequency(double voltage,
                           const PhysConstants& pc = PhysConstants::codata2018());

JunctionEnergies junction_energies(const JunctionParams& jp,
                                   const PhysConstants& pc = PhysConstants::codata2018());

/// Washboard landscape of the junction phase,
/// U(phi) = (hbar/2e)(-I phi - Ic cos phi), i.e. A = (hbar/2e) I,
/// B = (hbar/2e) Ic, k = 1. Energies in joules, phi in radians.
WashboardPotential washboard_of(const JunctionParams& jp,
                                const PhysConstants& pc = PhysConstants::codata2018());

/// Reduced RCSJ equation of motion
///
///     beta_c phi'' + phi' + sin(phi) = i + i_ac sin(Omega tau)
///
/// in units of the relaxation time t0 = hbar/(2 e Ic R) and the voltage
/// Ic R, with beta_c = 2 e Ic R^2 C / hbar. The mean reduced phase rate of
/// a trajectory is directly the reduced dc voltage v = V/(Ic R).
struct RcsjSystem {
    DynamicalSystem system;    ///< reduced-unit mechanical analogue
    double beta_c = 0.0;       ///< Stewart-McCumber damping parameter
    double bias_ratio = 0.0;   ///< i = I/Ic
    double time_unit = 0.0;    ///< seconds per reduced time unit; 0 if unknown
    double voltage_unit = 0.0; ///< volts per reduced voltage unit; 0 if unknown
};

/// Reduced drive for unit-free construction.
struct ReducedAc {
    double amplitude = 0.0;          ///< i_ac = I_ac/Ic
    double angular_frequency = 0.0;  ///< Omega = 2 pi f t0
};

RcsjSystem build_rcsj_system(const JunctionParams& jp,
                             const PhysConstants& pc = PhysConstants::codata2018());

/// Same reduced system specified directly by (i, beta_c); the SI conversion
/// factors are left at zero since no physical scales are given.
RcsjSystem build_rcsj_system_reduced(double bias_ratio, double beta_c,
                                     std::optional<ReducedAc> ac = std::nullopt);

struct IvPoint {
    double bias = 0.0;     ///< i = I/Ic
    double voltage = 0.0;  ///< v = V/(Ic R)
};

/// Reduced dc IV curve: for each bias the junction is integrated from rest
/// and the tail-averaged phase rate is reported. cfg.x0/v0/seed/temperature
/// are ignored; cfg.dt and cfg.t_end control each integration.
std::vector<IvPoint> iv_curve(const JunctionParams& jp, const std::vector<double>& bias_ratios,
                              const SimConfig& cfg,
                              const PhysConstants& pc = PhysConstants::codata2018());

/// Unit-free variant of iv_curve with optional ac drive.
std::vector<IvPoint> iv_curve_reduced(double beta_c, const std::vector<double>& bias_ratios,
                                      const SimConfig& cfg,
                                      std::optional<ReducedAc> ac = std::nullopt);

/// Constant-voltage plateau in an IV curve under ac drive.
struct Plateau {
    int harmonic = 0;     ///< n with v locked to n Omega
    double bias_lo = 0.0;
    double bias_hi = 0.0;
    double mean_voltage = 0.0;
    double width() const { return bias_hi - bias_lo; }
};

/// Phase-locked steps: a plateau is at least `min_run` consecutive sweep
/// points with |v - n Omega| < rel_tol * Omega for one integer n >= 1.
std::vector<Plateau> detect_plateaus(const std::vector<IvPoint>& curve, double drive_omega,
                                     double rel_tol = 0.02, std::size_t min_run = 3);

/// IV sweep under ac drive. Requires an ac component with amplitude > 0;
/// use iv_curve for the undriven junction.
std::vector<IvPoint> shapiro_sweep(double beta_c, const ReducedAc& ac,
                                   const std::vector<double>& bias_ratios, const SimConfig& cfg);

}  // namespace washboard::josephson
