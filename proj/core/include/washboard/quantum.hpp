#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "washboard/constants.hpp"
#include "washboard/potential.hpp"

namespace washboard::quantum {

/// Single-well bound-state problem on a finite interval with hard walls:
///
///     [-(hbar^2 / 2 M) d^2/dx^2 + U(x)] psi = E psi,   psi(lo) = psi(hi) = 0.
///
/// Units are the caller's: pass SI values, or set hbar/mass to reduced
/// values for dimensionless spectra. `grid_points` is the initial interior
/// grid size for the solver's refinement loop.
struct WellProblem {
    std::function<double(double)> potential;
    double mass = 1.0;
    double hbar = 1.0;
    int grid_points = 256;
    double box_lo = -1.0;
    double box_hi = 1.0;

    /// Well number `well_index` of a washboard potential, boxed by its two
    /// flanking maxima. Requires |A| < B k. The box then contains exactly
    /// one minimum and U at both walls exceeds U at the bottom.
    static WellProblem from_washboard(const WashboardPotential& p, std::int64_t well_index,
                                      double mass, double hbar, int grid_points = 256);

    /// Harmonic test mode: U = (1/2) M w^2 x^2 on [-half_width, half_width].
    static WellProblem harmonic(double omega, double mass, double hbar, double half_width,
                                int grid_points = 256);

    /// Infinite-square-well test mode: U = 0 on [0, width].
    static WellProblem square_well(double width, double mass, double hbar,
                                   int grid_points = 256);
};

struct ConvergenceReport {
    int grid_points = 0;        ///< interior points of the accepted solve
    double max_rel_change = 0;  ///< between the last two refinements
    int refinements = 0;
};

/// Lowest eigenvalues of a WellProblem. Levels above the lower of the two
/// wall potential values are still reported but are not counted as bound.
struct EigenSpectrum {
    std::vector<double> levels;     ///< ascending
    int count_bound = 0;            ///< levels below box_edge_energy
    bool more_than_bound = false;   ///< requested levels exceed the bound count
    double box_edge_energy = 0.0;   ///< min(U(box_lo), U(box_hi))
    ConvergenceReport convergence;

    std::vector<double> spacings() const;  ///< E_{n+1} - E_n
};

/// Finite-difference solve of the lowest `n_levels` eigenvalues. The grid is
/// doubled until the worst relative level change falls below 1e-4, capped at
/// 2^14 interior points (std::runtime_error past the cap). The discretized
/// operator is symmetric tridiagonal and is diagonalized by Sturm-sequence
/// bisection.
EigenSpectrum eigenlevels(const WellProblem& wp, int n_levels);

/// Single solve at exactly wp.grid_points interior points, skipping the
/// refinement loop: the lowest n_levels eigenvalues of the discretized
/// operator as-is. Intended for discretization studies and for comparing
/// the tridiagonal solver against other eigensolvers on the same matrix.
std::vector<double> eigenlevels_fixed_grid(const WellProblem& wp, int n_levels);

struct LevelSpacing {
    int n = 0;             ///< spacing between levels n and n+1
    double delta_e = 0.0;  ///< E_{n+1} - E_n
    double frequency = 0.0;  ///< delta_e / h
};

/// Adjacent spacings of a spectrum with the equivalent transition
/// frequencies delta_e / h. Pass `planck` explicitly for spectra in reduced
/// energy units. Throws std::invalid_argument on fewer than two levels.
std::vector<LevelSpacing> level_spacings(const EigenSpectrum& spec,
                                         double planck = PhysConstants::codata2018().h);

/// Transition frequency (E_hi - E_lo)/h; the gap must be positive.
double transition_frequency(double e_lo, double e_hi,
                            double planck = PhysConstants::codata2018().h);

/// Ratio of thermal energy to a transition quantum, k_B T / (h nu01). Small
/// values mean the 0->1 transition can be addressed without thermal
/// excitation competing.
double thermal_selectivity(double temperature, double nu01,
                           const PhysConstants& pc = PhysConstants::codata2018());

/// Thrown when qubit amplitudes fail |alpha|^2 + |beta|^2 = 1; carries the
/// computed norm.
class NormalizationError : public std::invalid_argument {
public:
    NormalizationError(const std::string& msg, double norm_value)
        : std::invalid_argument(msg), norm(norm_value) {}
    double norm;
};

/// Normalized two-level superposition alpha|0> + beta|1>.
struct QubitState {
    std::complex<double> alpha;
    std::complex<double> beta;
};

/// Validates |alpha|^2 + |beta|^2 = 1 to `tol` and returns the state;
/// throws NormalizationError otherwise.
QubitState make_qubit_state(std::complex<double> alpha, std::complex<double> beta,
                            double tol = 1e-9);

/// All 2^n computational basis labels "|b1,...,bn>" in lexicographic order:
/// first |0,...,0>, last |1,...,1>. n = 0 yields the single empty label
/// "|>". Throws std::invalid_argument for n < 0 or n > 24 (the label list
/// would not fit in memory).
std::vector<std::string> enumerate_basis(int n_qubits);

}  // namespace washboard::quantum
