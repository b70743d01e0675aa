#include "washboard/optics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace washboard::optics {

double gaussian_intensity(const GaussianBeam& gb, double r) {
    if (gb.peak_intensity < 0.0) throw std::invalid_argument("gaussian: I0 must be >= 0");
    if (!(gb.waist > 0.0)) throw std::invalid_argument("gaussian: waist must be > 0");
    const double q = r / gb.waist;
    return gb.peak_intensity * std::exp(-2.0 * q * q);
}

namespace {

double j0_series(double x) {
    // J0(x) = sum_m (-1)^m (x^2/4)^m / (m!)^2
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    double magnitude = 1.0;
    for (int m = 1; m < 80; ++m) {
        term *= -q / (static_cast<double>(m) * static_cast<double>(m));
        sum += term;
        magnitude += std::abs(term);
        if (std::abs(term) < 1e-19 * magnitude) break;
    }
    return sum;
}

double j0_asymptotic(double x) {
    // Hankel expansion: J0(x) = sqrt(2/(pi x)) (P cos(chi) + Q sin(chi)),
    // chi = x - pi/4, with a_k = a_{k-1} (2k-1)^2 / (8k); the P series
    // carries a_0, a_2, ... with alternating signs, the Q series a_1, a_3,
    // ... likewise. Terms are accumulated until they stop shrinking, which
    // for x >= 12 leaves a truncation floor below 1e-11.
    double a = 1.0;
    double p = 1.0;
    double q = 0.0;
    double prev = 1.0;
    for (int k = 1; k <= 20; ++k) {
        const double odd = 2.0 * static_cast<double>(k) - 1.0;
        a *= odd * odd / (8.0 * static_cast<double>(k) * x);
        if (a >= prev) break;
        prev = a;
        const double sign = ((k / 2) % 2 == 0) ? 1.0 : -1.0;
        if (k % 2 == 1) {
            q += sign * a;
        } else {
            p += sign * a;
        }
    }
    const double chi = x - 0.25 * kPi;
    return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) + q * std::sin(chi));
}

}  // namespace

double bessel_j0(double x) {
    x = std::abs(x);
    return x <= 12.0 ? j0_series(x) : j0_asymptotic(x);
}

double BesselBeamSetup::radial_wavenumber() const {
    return 2.0 * kPi / wavelength * std::sin(cone_half_angle);
}

double ring_slit_zmax(double ring_radius, double focal_length, double slit_width) {
    if (!(ring_radius > 0.0) || !(focal_length > 0.0) || !(slit_width > 0.0)) {
        throw std::invalid_argument("ring_slit_zmax: R, f, d must all be > 0");
    }
    return 2.0 * ring_radius * focal_length / slit_width;
}

double bessel_beam_intensity(const BesselBeamSetup& bs, double r, double z) {
    if (!(bs.wavelength > 0.0)) throw std::invalid_argument("bessel beam: lambda must be > 0");
    if (!(bs.cone_half_angle > 0.0) || !(bs.cone_half_angle < 0.5 * kPi)) {
        throw std::invalid_argument("bessel beam: theta must be in (0, pi/2)");
    }
    if (!(bs.z_max > 0.0)) throw std::invalid_argument("bessel beam: z_max must be > 0");

    const double zr = z / bs.z_max;
    const double j = bessel_j0(bs.radial_wavenumber() * r);
    double intensity = bs.peak_intensity * zr * std::exp(-2.0 * zr * zr) * j * j;
    if (bs.residual) {
        if (!(bs.residual->waist > 0.0) || bs.residual->fraction < 0.0) {
            throw std::invalid_argument("bessel beam: residual requires w_res > 0, g_res >= 0");
        }
        const double rq = r / bs.residual->waist;
        intensity += bs.residual->fraction * bs.peak_intensity * std::exp(-2.0 * rq * rq);
    }
    return intensity;
}

double dipole_potential_depth(double alpha_real, double intensity, const PhysConstants& pc) {
    if (intensity < 0.0) throw std::invalid_argument("dipole depth: intensity must be >= 0");
    return -alpha_real / (2.0 * pc.c * pc.eps0) * intensity;
}

namespace {

void check_lattice(const LatticeParams& lp) {
    if (!(lp.wavenumber > 0.0)) throw std::invalid_argument("lattice: k must be > 0");
    if (lp.envelope_waist && !(*lp.envelope_waist > 0.0)) {
        throw std::invalid_argument("lattice: envelope waist must be > 0");
    }
}

}  // namespace

double lattice_potential(const LatticeParams& lp, double x) {
    check_lattice(lp);
    const double s = std::sin(lp.wavenumber * x);
    double u = lp.depth * s * s;
    if (lp.envelope_waist) {
        const double q = x / *lp.envelope_waist;
        u *= std::exp(-2.0 * q * q);
    }
    return u;
}

double lattice_force(const LatticeParams& lp, double x) {
    check_lattice(lp);
    const double k = lp.wavenumber;
    const double s = std::sin(k * x);
    // d/dx [U0 sin^2(kx)] = U0 k sin(2kx)
    double grad = lp.depth * k * std::sin(2.0 * k * x);
    if (lp.envelope_waist) {
        const double w = *lp.envelope_waist;
        const double env = std::exp(-2.0 * (x / w) * (x / w));
        grad = env * (grad - lp.depth * s * s * 4.0 * x / (w * w));
    }
    return -grad;
}

PotentialFn lattice_potential_fn(const LatticeParams& lp) {
    check_lattice(lp);
    return PotentialFn([lp](double x) { return lattice_potential(lp, x); },
                       [lp](double x) { return lattice_force(lp, x); });
}

double lattice_period(double wavelength) {
    if (!(wavelength > 0.0)) throw std::invalid_argument("lattice_period: lambda must be > 0");
    return 0.5 * wavelength;
}

LatticeWashboardForm lattice_to_washboard(const LatticeParams& lp) {
    check_lattice(lp);
    if (lp.envelope_waist) {
        throw std::invalid_argument("lattice_to_washboard: no exact washboard form with envelope");
    }
    // U0 sin^2(kx) = U0/2 - (U0/2) cos(2kx); the washboard amplitude must be
    // non-negative, so a negative U0 is absorbed into phi0 = pi.
    const double phi0 = lp.depth < 0.0 ? kPi : 0.0;
    return {WashboardPotential(0.0, 0.5 * std::abs(lp.depth), 2.0 * lp.wavenumber, phi0),
            0.5 * lp.depth};
}

PolarizabilityCurve PolarizabilityCurve::from_poles(std::vector<Pole> poles, double offset) {
    for (const Pole& p : poles) {
        if (!(p.resonance_wavelength > 0.0)) {
            throw std::invalid_argument("polarizability: resonance wavelengths must be > 0");
        }
    }
    PolarizabilityCurve c;
    c.poles_ = std::move(poles);
    c.offset_ = offset;
    return c;
}

PolarizabilityCurve PolarizabilityCurve::from_samples(
    std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2) throw std::invalid_argument("polarizability: need >= 2 samples");
    std::sort(samples.begin(), samples.end());
    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
        if (samples[i].first == samples[i + 1].first) {
            throw std::invalid_argument("polarizability: duplicate sample wavelengths");
        }
    }
    PolarizabilityCurve c;
    c.samples_ = std::move(samples);
    return c;
}

double PolarizabilityCurve::operator()(double wavelength) const {
    if (!(wavelength > 0.0)) throw std::invalid_argument("polarizability: lambda must be > 0");
    if (!samples_.empty()) {
        if (wavelength < samples_.front().first || wavelength > samples_.back().first) {
            throw std::invalid_argument("polarizability: lambda outside tabulated range");
        }
        const auto it = std::lower_bound(
            samples_.begin(), samples_.end(), wavelength,
            [](const std::pair<double, double>& s, double w) { return s.first < w; });
        if (it->first == wavelength) return it->second;
        const auto hi = it;
        const auto lo = it - 1;
        const double t = (wavelength - lo->first) / (hi->first - lo->first);
        return lo->second + t * (hi->second - lo->second);
    }
    const double inv2 = 1.0 / (wavelength * wavelength);
    double alpha = offset_;
    for (const Pole& p : poles_) {
        const double res_inv2 = 1.0 / (p.resonance_wavelength * p.resonance_wavelength);
        alpha += p.coefficient / (res_inv2 - inv2);
    }
    return alpha;
}

double magic_wavelength(const PolarizabilityCurve& alpha1, const PolarizabilityCurve& alpha2,
                        double lo, double hi) {
    if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("magic_wavelength: bad bracket");

    const auto diff = [&](double w) { return alpha1(w) - alpha2(w); };

    constexpr int kScan = 64;
    double prev_w = lo;
    double prev_d = diff(lo);
    if (!std::isfinite(prev_d)) throw std::invalid_argument("magic_wavelength: non-finite curve");
    int crossings = 0;
    double a = lo;
    double b = hi;
    for (int i = 1; i < kScan; ++i) {
        const double w =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(kScan - 1);
        const double dv = diff(w);
        if (!std::isfinite(dv)) throw std::invalid_argument("magic_wavelength: non-finite curve");
        if ((prev_d < 0.0 && dv >= 0.0) || (prev_d > 0.0 && dv <= 0.0) ||
            (prev_d == 0.0 && dv != 0.0)) {
            ++crossings;
            a = prev_w;
            b = w;
        }
        prev_w = w;
        prev_d = dv;
    }
    if (crossings == 0) throw std::invalid_argument("magic_wavelength: no crossing in bracket");
    if (crossings > 1) throw std::invalid_argument("magic_wavelength: ambiguous bracket");

    double fa = diff(a);
    if (fa == 0.0) return a;
    for (int iter = 0; iter < 200 && (b - a) > 1e-9 * b; ++iter) {
        const double mid = 0.5 * (a + b);
        const double fm = diff(mid);
        if (fm == 0.0) return mid;
        if ((fa < 0.0) == (fm < 0.0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    return 0.5 * (a + b);
}

}  // namespace washboard::optics
