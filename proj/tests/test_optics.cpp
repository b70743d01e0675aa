// Beams, lattices and polarizability crossings.
//
// Oracles:
//   J0 reference          power series in 100-digit arithmetic (bessel_oracle.hpp)
//   first zero of J0      x = 2.404825557695773 (tabulated)
//   ring-slit axial range z_max = 2 R f / d
//   lattice identity      U0 sin^2(kx) = U0/2 - (U0/2) cos(2kx + phi0)
//   magic crossing        two one-pole curves cross at lambda = 1/sqrt(2 b - a),
//                         a = lambda_1^-2, b = lambda_2^-2, strengths 1 and 1/2

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bessel_oracle.hpp"
#include "washboard/constants.hpp"
#include "washboard/dynamics.hpp"
#include "washboard/optics.hpp"

using washboard::kPi;
using namespace washboard::optics;

TEST_CASE("gaussian transverse profile") {
    const GaussianBeam gb{2.5, 1e-3};
    CHECK(gaussian_intensity(gb, 0.0) == doctest::Approx(2.5).epsilon(1e-15));
    CHECK(gaussian_intensity(gb, 1e-3) == doctest::Approx(2.5 * std::exp(-2.0)).epsilon(1e-12));
    CHECK(gaussian_intensity(gb, -1e-3) == gaussian_intensity(gb, 1e-3));
    CHECK_THROWS_AS(gaussian_intensity(GaussianBeam{1.0, 0.0}, 0.0), std::invalid_argument);
}

TEST_CASE("bessel j0 against the extended-precision series") {
    SUBCASE("coarse sweep of the full working range") {
        for (int j = 0; j <= 1000; ++j) {
            const double x = 0.05 * j;
            CHECK(std::fabs(bessel_j0(x) - test_support::bessel_j0_reference(x)) < 1e-10);
        }
    }
    SUBCASE("dense sweep across the series-asymptotic handoff") {
        for (int j = 0; j <= 400; ++j) {
            const double x = 11.8 + 0.001 * j;
            CHECK(std::fabs(bessel_j0(x) - test_support::bessel_j0_reference(x)) < 1e-10);
        }
    }
    SUBCASE("spot values") {
        CHECK(bessel_j0(0.0) == 1.0);
        CHECK(bessel_j0(-7.3) == bessel_j0(7.3));  // even function
        // J0(1) and J0(10), classical table values
        CHECK(bessel_j0(1.0) == doctest::Approx(0.7651976865579666).epsilon(1e-13));
        CHECK(bessel_j0(10.0) == doctest::Approx(-0.2459357644513483).epsilon(1e-12));
    }
    SUBCASE("first zero by bisection") {
        double lo = 2.0, hi = 3.0;
        REQUIRE(bessel_j0(lo) > 0.0);
        REQUIRE(bessel_j0(hi) < 0.0);
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (bessel_j0(mid) > 0.0 ? lo : hi) = mid;
        }
        CHECK(std::fabs(0.5 * (lo + hi) - 2.404825557695773) < 1e-9);
    }
}

TEST_CASE("ring slit geometry fixes the axial range") {
    // z_max = 2 R f / d; in millimetres the reference numbers are exact
    CHECK(ring_slit_zmax(8.75, 100.0, 2.5) == 700.0);
    CHECK(ring_slit_zmax(8.75e-3, 100e-3, 2.5e-3) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK_THROWS_AS(ring_slit_zmax(0.0, 100.0, 2.5), std::invalid_argument);
    CHECK_THROWS_AS(ring_slit_zmax(8.75, -1.0, 2.5), std::invalid_argument);
    CHECK_THROWS_AS(ring_slit_zmax(8.75, 100.0, 0.0), std::invalid_argument);
}

TEST_CASE("bessel beam intensity profile") {
    BesselBeamSetup bs;
    bs.wavelength = 632.8e-9;
    bs.cone_half_angle = 2e-3;
    bs.peak_intensity = 3.0;
    bs.z_max = 0.7;

    SUBCASE("radial wavenumber") {
        CHECK(bs.radial_wavenumber() ==
              doctest::Approx(2.0 * kPi / 632.8e-9 * std::sin(2e-3)).epsilon(1e-12));
    }
    SUBCASE("transverse shape is J0 squared") {
        const double z = 0.2;
        const double on_axis = bessel_beam_intensity(bs, 0.0, z);
        for (double r : {1e-6, 5e-6, 2e-5}) {
            const double j = bessel_j0(bs.radial_wavenumber() * r);
            CHECK(bessel_beam_intensity(bs, r, z) ==
                  doctest::Approx(on_axis * j * j).epsilon(1e-12));
        }
    }
    SUBCASE("axial envelope z exp(-2 z^2 / z_max^2) peaks at z_max/2") {
        const double i_half = bessel_beam_intensity(bs, 0.0, 0.35);
        CHECK(i_half > bessel_beam_intensity(bs, 0.0, 0.34));
        CHECK(i_half > bessel_beam_intensity(bs, 0.0, 0.36));
        // closed form at the peak: I0 (1/2) exp(-1/2)
        CHECK(i_half == doctest::Approx(3.0 * 0.5 * std::exp(-0.5)).epsilon(1e-12));
        CHECK(bessel_beam_intensity(bs, 0.0, 0.0) == 0.0);
    }
    SUBCASE("additive gaussian residual") {
        BesselBeamSetup with = bs;
        with.residual = GaussianResidual{0.1, 1e-4};
        for (double r : {0.0, 5e-5, 2e-4}) {
            const double extra = bessel_beam_intensity(with, r, 0.2) -
                                 bessel_beam_intensity(bs, r, 0.2);
            CHECK(extra ==
                  doctest::Approx(0.1 * 3.0 * std::exp(-2.0 * r * r / 1e-8)).epsilon(1e-10));
        }
    }
    SUBCASE("validation") {
        BesselBeamSetup bad = bs;
        bad.wavelength = 0.0;
        CHECK_THROWS_AS(bessel_beam_intensity(bad, 0.0, 0.1), std::invalid_argument);
        bad = bs;
        bad.cone_half_angle = kPi / 2.0;
        CHECK_THROWS_AS(bessel_beam_intensity(bad, 0.0, 0.1), std::invalid_argument);
        bad = bs;
        bad.z_max = 0.0;
        CHECK_THROWS_AS(bessel_beam_intensity(bad, 0.0, 0.1), std::invalid_argument);
        bad = bs;
        bad.residual = GaussianResidual{-0.1, 1e-4};
        CHECK_THROWS_AS(bessel_beam_intensity(bad, 0.0, 0.1), std::invalid_argument);
    }
}

TEST_CASE("dipole potential depth is attractive for positive polarizability") {
    const washboard::PhysConstants pc = washboard::PhysConstants::codata2018();
    const double u = dipole_potential_depth(1e-39, 1e7, pc);
    CHECK(u == doctest::Approx(-1e-39 * 1e7 / (2.0 * pc.c * pc.eps0)).epsilon(1e-12));
    CHECK(u < 0.0);
    CHECK(dipole_potential_depth(-1e-39, 1e7, pc) > 0.0);
}

TEST_CASE("optical lattice potential and force") {
    LatticeParams lp;
    lp.depth = -2.4e-28;
    lp.wavenumber = 2.0 * kPi / 1.064e-6;

    SUBCASE("periodic with lambda/2") {
        const double period = lattice_period(1.064e-6);
        CHECK(period == doctest::Approx(0.532e-6).epsilon(1e-15));
        for (double x : {0.0, 1e-7, 3.7e-7}) {
            CHECK(lattice_potential(lp, x + period) ==
                  doctest::Approx(lattice_potential(lp, x)).epsilon(1e-9));
        }
        CHECK(lattice_period(632.8e-9) == 316.4e-9);
    }
    SUBCASE("force is minus the gradient, without envelope") {
        const double h = 1e-11;
        for (double x : {5e-8, 2.6e-7}) {
            const double grad = (lattice_potential(lp, x + h) - lattice_potential(lp, x - h)) /
                                (2.0 * h);
            CHECK(lattice_force(lp, x) == doctest::Approx(-grad).epsilon(1e-5));
        }
    }
    SUBCASE("force is minus the gradient, with envelope") {
        lp.envelope_waist = 5e-6;
        const double h = 1e-11;
        for (double x : {5e-8, 2.6e-7, 4.1e-6}) {
            const double grad = (lattice_potential(lp, x + h) - lattice_potential(lp, x - h)) /
                                (2.0 * h);
            CHECK(lattice_force(lp, x) == doctest::Approx(-grad).epsilon(1e-5));
        }
    }
    SUBCASE("integrator adapter carries both callbacks") {
        const washboard::PotentialFn fn = lattice_potential_fn(lp);
        CHECK(fn.value(1e-7) == doctest::Approx(lattice_potential(lp, 1e-7)).epsilon(1e-15));
        CHECK(fn.force(1e-7) == doctest::Approx(lattice_force(lp, 1e-7)).epsilon(1e-15));
    }
}

TEST_CASE("lattice rewrites exactly as an untilted washboard") {
    SUBCASE("repulsive lattice keeps phase zero") {
        LatticeParams lp;
        lp.depth = 1.0;
        lp.wavenumber = 1.0;
        const LatticeWashboardForm form = lattice_to_washboard(lp);
        CHECK(form.potential.tilt() == 0.0);
        CHECK(form.potential.amplitude() == doctest::Approx(0.5).epsilon(1e-15));
        CHECK(form.potential.wavenumber() == doctest::Approx(2.0).epsilon(1e-15));
        CHECK(form.potential.phase_offset() == 0.0);
        CHECK(form.offset == doctest::Approx(0.5).epsilon(1e-15));
        for (double x = -7.0; x <= 7.0; x += 0.0137) {
            const double direct = lattice_potential(lp, x);
            const double rewritten = form.offset + form.potential.evaluate(x);
            CHECK(std::fabs(direct - rewritten) < 1e-12);
        }
    }
    SUBCASE("attractive lattice flips the phase to keep B non-negative") {
        LatticeParams lp;
        lp.depth = -3.2e-28;
        lp.wavenumber = 2.0 * kPi / 1.064e-6;
        const LatticeWashboardForm form = lattice_to_washboard(lp);
        CHECK(form.potential.amplitude() == doctest::Approx(1.6e-28).epsilon(1e-15));
        CHECK(form.potential.phase_offset() == doctest::Approx(kPi).epsilon(1e-15));
        CHECK(form.offset == doctest::Approx(-1.6e-28).epsilon(1e-15));
        for (double x = 0.0; x <= 2.2e-6; x += 1.3e-9) {
            const double direct = lattice_potential(lp, x);
            const double rewritten = form.offset + form.potential.evaluate(x);
            CHECK(std::fabs(direct - rewritten) < 1e-12 * 3.2e-28);
        }
    }
    SUBCASE("envelopes cannot be rewritten") {
        LatticeParams lp;
        lp.depth = 1.0;
        lp.wavenumber = 1.0;
        lp.envelope_waist = 10.0;
        CHECK_THROWS_AS(lattice_to_washboard(lp), std::invalid_argument);
    }
}

TEST_CASE("polarizability curves") {
    SUBCASE("single pole shape") {
        const auto a = PolarizabilityCurve::from_poles({{1.0, 600e-9}}, 0.25);
        const double lam = 500e-9;
        const double expect = 1.0 / (1.0 / (600e-9 * 600e-9) - 1.0 / (lam * lam)) + 0.25;
        CHECK(a(lam) == doctest::Approx(expect).epsilon(1e-12));
    }
    SUBCASE("sampled curve interpolates linearly") {
        // shuffled insertion order; sampling a straight line reproduces it
        const auto a = PolarizabilityCurve::from_samples(
            {{500e-9, 5.0}, {400e-9, 4.0}, {450e-9, 4.5}});
        CHECK(a(400e-9) == doctest::Approx(4.0).epsilon(1e-12));
        CHECK(a(425e-9) == doctest::Approx(4.25).epsilon(1e-12));
        CHECK(a(500e-9) == doctest::Approx(5.0).epsilon(1e-12));
        CHECK_THROWS_AS(a(399e-9), std::invalid_argument);
        CHECK_THROWS_AS(a(501e-9), std::invalid_argument);
    }
}

TEST_CASE("magic wavelength recovery and failure modes") {
    const auto a1 = PolarizabilityCurve::from_poles({{1.0, 600e-9}});
    const auto a2 = PolarizabilityCurve::from_poles({{0.5, 450e-9}});

    SUBCASE("synthetic crossing matches the closed form") {
        const double a = 1.0 / (600e-9 * 600e-9);
        const double b = 1.0 / (450e-9 * 450e-9);
        const double exact = 1.0 / std::sqrt(2.0 * b - a);
        const double found = magic_wavelength(a1, a2, 300e-9, 430e-9);
        CHECK(found == doctest::Approx(exact).epsilon(1e-9));
    }
    SUBCASE("no crossing in the bracket") {
        bool thrown = false;
        try {
            magic_wavelength(a1, a2, 300e-9, 360e-9);
        } catch (const std::invalid_argument& e) {
            thrown = true;
            CHECK(std::string(e.what()).find("no crossing") != std::string::npos);
        }
        CHECK(thrown);
    }
    SUBCASE("degenerate bracket of identical curves") {
        CHECK_THROWS_AS(magic_wavelength(a1, a1, 300e-9, 430e-9), std::invalid_argument);
    }
    SUBCASE("ambiguous bracket with several crossings") {
        // difference of these curves changes sign more than once between
        // the poles at 450 and 600 nm
        bool thrown = false;
        try {
            magic_wavelength(a1, a2, 430e-9, 620e-9);
        } catch (const std::invalid_argument& e) {
            thrown = true;
            const std::string msg = e.what();
            CHECK((msg.find("ambiguous") != std::string::npos ||
                   msg.find("not finite") != std::string::npos));
        }
        CHECK(thrown);
    }
    SUBCASE("reference magic wavelengths are in the optical range") {
        CHECK(kSrMagicWavelength == doctest::Approx(473.371e-9).epsilon(1e-12));
        CHECK(kYbMagicWavelength == doctest::Approx(1035.68e-9).epsilon(1e-12));
    }
}
