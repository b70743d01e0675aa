#pragma once

#include <cmath>

namespace washboard {

inline constexpr double kPi = 3.14159265358979323846;

/// Physical constants in SI units. Defaults follow CODATA 2018, in which
/// h, e, k_B and c are exact by definition of the 2019 SI.
///
/// The frequency-to-voltage ratio 2e/h is carried as its own field so a
/// historical or rounded value can be substituted without touching the
/// other constants. Phase <-> voltage conversions are derived from that
/// field alone, which keeps f(V(w)) = w/(2 pi) an exact identity under
/// any override.
struct PhysConstants {
    double h = 6.62607015e-34;        ///< Planck constant [J s]
    double hbar = 6.62607015e-34 / (2.0 * kPi);  ///< reduced Planck [J s]
    double e = 1.602176634e-19;       ///< elementary charge [C]
    double k_B = 1.380649e-23;        ///< Boltzmann constant [J/K]
    double c = 299792458.0;           ///< speed of light [m/s]
    double eps0 = 8.8541878128e-12;   ///< vacuum permittivity [F/m]
    double josephson_const = 2.0 * 1.602176634e-19 / 6.62607015e-34;  ///< 2e/h [Hz/V]

    static PhysConstants codata2018() { return PhysConstants{}; }

    /// Same constants with the 2e/h ratio pinned to a supplied value.
    static PhysConstants with_josephson_constant(double ratio_hz_per_volt) {
        PhysConstants pc;
        pc.josephson_const = ratio_hz_per_volt;
        return pc;
    }

    /// Volts per unit phase rate, i.e. the hbar/2e factor expressed through
    /// the (possibly overridden) 2e/h ratio: 1/(2 pi (2e/h)).
    double volt_per_phase_rate() const { return 1.0 / (2.0 * kPi * josephson_const); }
};

}  // namespace washboard
