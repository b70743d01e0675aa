#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "washboard/constants.hpp"
#include "washboard/dynamics.hpp"
#include "washboard/potential.hpp"

namespace washboard::optics {

/// Measured magic wavelengths, for documentation and sanity checks only.
inline constexpr double kSrMagicWavelength = 473.371e-9;  ///< Sr 5S0/5P1 [m]
inline constexpr double kYbMagicWavelength = 1035.68e-9;  ///< Yb 6S0/6P1 [m]

/// Fundamental-mode transverse profile I(r) = I0 exp(-2 r^2 / w^2).
struct GaussianBeam {
    double peak_intensity = 1.0;  ///< I0 >= 0 [W/m^2]
    double waist = 1.0;           ///< w > 0 [m]
};

double gaussian_intensity(const GaussianBeam& gb, double r);

/// Zeroth-order Bessel function of the first kind. Power series up to
/// |x| = 12, Hankel asymptotic expansion beyond; absolute error below
/// 1e-10 on |x| <= 50.
double bessel_j0(double x);

/// Additive Gaussian pedestal superposed on the Bessel profile, tilting
/// the ring structure.
struct GaussianResidual {
    double fraction = 0.0;  ///< g_res >= 0, relative to I0
    double waist = 1.0;     ///< w_res > 0 [m]
};

/// Quasi-diffraction-free beam behind a ring slit or axicon.
struct BesselBeamSetup {
    double wavelength = 632.8e-9;   ///< lambda > 0 [m]
    double cone_half_angle = 1e-3;  ///< theta in (0, pi/2) [rad]
    double peak_intensity = 1.0;    ///< I0 [W/m^2]
    double z_max = 1.0;             ///< axial extent > 0 [m]
    std::optional<GaussianResidual> residual;

    double radial_wavenumber() const;  ///< k_r = (2 pi / lambda) sin(theta)
};

/// Axial extent of the Bessel zone for a ring slit of radius R and width d
/// in the focal plane of a lens with focal length f: z_max = 2 R f / d.
double ring_slit_zmax(double ring_radius, double focal_length, double slit_width);

/// I(r, z) = I0 (z/z_max) exp(-2 z^2 / z_max^2) J0^2(k_r r), plus the
/// additive residual g_res I0 exp(-2 r^2 / w_res^2) when enabled. Valid for
/// z >= 0. The on-axis profile peaks at z = z_max / 2.
double bessel_beam_intensity(const BesselBeamSetup& bs, double r, double z);

/// Dipole trap depth U0 = -Re(alpha)/(2 c eps0) * I_l. Positive real
/// polarizability gives a negative (attractive) depth.
double dipole_potential_depth(double alpha_real, double intensity,
                              const PhysConstants& pc = PhysConstants::codata2018());

/// Standing-wave lattice U(x) = U0 sin^2(k x), optionally modulated by a
/// Gaussian envelope exp(-2 x^2 / w_env^2) which bends the outer wells down
/// toward zero depth.
struct LatticeParams {
    double depth = 1.0;       ///< U0 [J]; negative for an attractive lattice
    double wavenumber = 1.0;  ///< k = 2 pi / lambda_light > 0 [1/m]
    std::optional<double> envelope_waist;  ///< w_env > 0 [m]
};

double lattice_potential(const LatticeParams& lp, double x);

/// Conservative force -dU/dx of the lattice, envelope included.
double lattice_force(const LatticeParams& lp, double x);

/// Adapter for the integrators.
PotentialFn lattice_potential_fn(const LatticeParams& lp);

/// Spatial period of the intensity pattern of two counter-propagating
/// beams: lambda / 2.
double lattice_period(double wavelength);

///// Exact washboard form of an untilted lattice: U0 sin^2(kx) equals
/// offset - B cos(k' x + phi0) with B = |U0|/2, k' = 2k and offset U0/2;
/// phi0 is 0 for U0 >= 0 and pi for U0 < 0 so that B stays non-negative.
struct LatticeWashboardForm {
    WashboardPotential potential;
    double offset = 0.0;  ///< constant U0/2 dropped by the washboard form
};

/// Throws std::invalid_argument when an envelope is set (no exact
/// washboard form exists; integrate the lattice numerically instead).
LatticeWashboardForm lattice_to_washboard(const LatticeParams& lp);

/// Wavelength-dependent polarizability, either as a sum of dispersive
/// poles  sum_j c_j / (lambda_j^-2 - lambda^-2) + offset  or as tabulated
/// (lambda, alpha) samples joined by linear segments.
class PolarizabilityCurve {
public:
    struct Pole {
        double coefficient = 0.0;           ///< c_j [C m^2/V m^-2... curve units]
        double resonance_wavelength = 0.0;  ///< lambda_j > 0 [m]
    };

    static PolarizabilityCurve from_poles(std::vector<Pole> poles, double offset = 0.0);
    static PolarizabilityCurve from_samples(std::vector<std::pair<double, double>> samples);

    double operator()(double wavelength) const;

private:
    PolarizabilityCurve() = default;
    std::vector<Pole> poles_;
    double offset_ = 0.0;
    std::vector<std::pair<double, double>> samples_;  // sorted by wavelength
};

/// Wavelength in [lo, hi] where the two polarizability curves cross, by
/// bisection to 1e-9 relative tolerance. A 64-point pre-scan must find
/// exactly one sign change of alpha1 - alpha2: zero changes throw
/// "no crossing in bracket", several throw "ambiguous bracket", and a
/// non-finite difference anywhere on the scan is rejected.
double magic_wavelength(const PolarizabilityCurve& alpha1, const PolarizabilityCurve& alpha2,
                        double lo, double hi);

}  // namespace washboard::optics
