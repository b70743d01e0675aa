// Command-line front end: every scenario as a subcommand, CSV/JSON outputs
// with a run manifest, and bitwise replay of any manifest.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "output.hpp"
#include "washboard/constants.hpp"
#include "washboard/dynamics.hpp"
#include "washboard/josephson.hpp"
#include "washboard/optics.hpp"
#include "washboard/potential.hpp"
#include "washboard/quantum.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using cli_output::Table;

namespace {

int run_cli(const std::vector<std::string>& args);

std::pair<double, double> parse_range(const std::string& text) {
    const auto pos = text.find(':', 1);  // skip a leading minus sign
    const auto fail = [&text]() {
        return std::invalid_argument("range: expected numeric lo:hi, got '" + text + "'");
    };
    if (pos == std::string::npos) throw fail();
    try {
        const double lo = std::stod(text.substr(0, pos));
        const double hi = std::stod(text.substr(pos + 1));
        if (!(hi > lo)) throw fail();
        return {lo, hi};
    } catch (const std::invalid_argument&) {
        throw fail();
    } catch (const std::out_of_range&) {
        throw fail();
    }
}

std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 2) throw std::invalid_argument("need at least 2 sweep points");
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        out[static_cast<std::size_t>(j)] =
            lo + (hi - lo) * static_cast<double>(j) / static_cast<double>(n - 1);
    }
    return out;
}

const char* kind_name(washboard::ExtremumKind k) {
    switch (k) {
        case washboard::ExtremumKind::minimum: return "minimum";
        case washboard::ExtremumKind::maximum: return "maximum";
        default: return "inflection";
    }
}

/// Flags shared by every subcommand.
struct CommonOpts {
    std::string out = ".";
    std::string config;
    std::string format = "csv";
    std::optional<std::uint64_t> seed;

    bool json_format() const { return format == "json"; }
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--out", c.out, "output directory")->capture_default_str();
    cmd->add_option("--config", c.config, "JSON config file; flags override its values");
    cmd->add_option("--format", c.format, "table output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd->add_option("--seed", c.seed, "noise seed (stochastic scenarios)");
}

void put_common(json& params, const CommonOpts& c) {
    params["out"] = c.out;
    params["format"] = c.format;
}

/// Emits the manifest after a command body ran and returns success.
class ManifestScope {
public:
    ManifestScope(const CommonOpts& c, std::string subcommand)
        : common_(c), subcommand_(std::move(subcommand)),
          start_(std::chrono::steady_clock::now()) {}

    void finish(const json& parameters, const json& results,
                const std::vector<std::string>& outputs) const {
        const auto stop = std::chrono::steady_clock::now();
        const double secs = std::chrono::duration<double>(stop - start_).count();
        const json seed = common_.seed ? json(*common_.seed) : json(nullptr);
        cli_output::write_manifest(common_.out, subcommand_, parameters, seed, secs, results,
                                   outputs);
    }

private:
    const CommonOpts& common_;
    std::string subcommand_;
    std::chrono::steady_clock::time_point start_;
};

// --------------------------------------------------------------------------
// potential

struct PotentialOpts {
    CommonOpts common;
    double A = 0.0, B = 1.0, k = 1.0, phi0 = 0.0;
    std::optional<double> ratio;
    bool josephson = false;
    double i = 0.5;
    bool pendulum = false;
    double tau = 0.0, mgl = 1.0;
    std::string range = "0:25";
    int n = 1000;
};

void cmd_potential(const PotentialOpts& o) {
    ManifestScope scope(o.common, "potential");

    washboard::WashboardPotential p =
        o.josephson ? washboard::WashboardPotential(o.i, 1.0, 1.0, 0.0)
        : o.pendulum ? washboard::WashboardPotential(o.tau, o.mgl, 1.0, 0.0)
                     : washboard::WashboardPotential(
                           o.ratio ? *o.ratio * o.B * o.k : o.A, o.B, o.k, o.phi0);

    const auto [lo, hi] = parse_range(o.range);
    Table table;
    table.columns = {"x", "U", "F"};
    table.units = o.josephson ? std::vector<std::string>{"rad", "E_J", "E_J/rad"}
                              : std::vector<std::string>{"arb", "arb", "arb"};
    for (double x : linspace(lo, hi, o.n)) {
        table.rows.push_back({x, p.evaluate(x), p.force(x)});
    }

    json ext = json::array();
    json barriers = json::array();
    for (const auto& e : find_extrema(p, lo, hi)) {
        ext.push_back({{"position", e.position},
                       {"value", e.value},
                       {"kind", kind_name(e.kind)},
                       {"index", e.index}});
        if (e.kind == washboard::ExtremumKind::minimum) {
            barriers.push_back({{"well_index", e.index},
                                {"height", washboard::barrier_height(p, e.index)}});
        }
    }
    json extrema_doc = {{"critical_tilt", p.critical_tilt()},
                        {"tilt_ratio", p.tilt_ratio()},
                        {"extrema", ext},
                        {"barriers", barriers}};

    std::vector<std::string> outputs;
    outputs.push_back(cli_output::write_table(o.common.out, "potential", table,
                                              o.common.json_format()));
    outputs.push_back(cli_output::write_json(o.common.out, "extrema.json", extrema_doc));

    json params;
    put_common(params, o.common);
    params["A"] = o.A;
    params["B"] = o.B;
    params["k"] = o.k;
    params["phi0"] = o.phi0;
    if (o.ratio) params["ratio"] = *o.ratio;
    params["josephson"] = o.josephson;
    params["i"] = o.i;
    params["pendulum"] = o.pendulum;
    params["tau"] = o.tau;
    params["mgl"] = o.mgl;
    params["range"] = o.range;
    params["n"] = o.n;
    scope.finish(params, json::object(), outputs);
}

// --------------------------------------------------------------------------
// simulate

struct SimulateOpts {
    CommonOpts common;
    std::string scenario;
    double dt = 1e-3, t_end = 100.0;
    std::size_t stride = 1;
    double x0 = 0.0, v0 = 0.0;
    // pendulum
    double mass = 1.0, length = 1.0, gravity = 9.81, tau = 0.0;
    // particle / brownian landscape
    double M = 1.0, eta = 0.5, A = 0.0, B = 1.0, k = 1.0, phi0 = 0.0;
    double f_ac = 0.0, omega_ac = 0.0;
    // rcsj
    double i = 0.0, beta_c = 0.01, i_ac = 0.0, omega = 0.0;
    std::optional<double> Ic, R, C;
    // brownian
    std::optional<double> temperature;
};

void cmd_simulate(const SimulateOpts& o) {
    ManifestScope scope(o.common, "simulate");

    washboard::DynamicalSystem sys;
    washboard::SimConfig cfg;
    cfg.dt = o.dt;
    cfg.t_end = o.t_end;
    cfg.sample_stride = o.stride;
    cfg.x0 = o.x0;
    cfg.v0 = o.v0;

    json results;
    json units_note;
    bool stochastic = false;
    double well_width = 0.0;

    if (o.scenario == "pendulum") {
        washboard::PendulumParams pp{o.mass, o.length, o.gravity, o.eta, o.tau};
        sys.inertia = pp.inertia();
        sys.damping = pp.damping;
        sys.potential = washboard::pendulum_potential(pp);
        sys.description = "pendulum";
        well_width = 2.0 * washboard::kPi;
    } else if (o.scenario == "particle") {
        sys.inertia = o.M;
        sys.damping = o.eta;
        sys.potential = washboard::WashboardPotential(o.A, o.B, o.k, o.phi0);
        if (o.f_ac != 0.0) sys.drive = washboard::AcDrive{o.f_ac, o.omega_ac};
        sys.description = "particle";
        if (o.B > 0.0) well_width = 2.0 * washboard::kPi / o.k;
    } else if (o.scenario == "rcsj") {
        double beta_c = o.beta_c;
        if (o.Ic && o.R && o.C) {
            washboard::josephson::JunctionParams jp{*o.Ic, *o.R, *o.C, o.i * *o.Ic, std::nullopt};
            const auto rs = washboard::josephson::build_rcsj_system(jp);
            beta_c = rs.beta_c;
            units_note = {{"beta_c", rs.beta_c},
                          {"time_unit_s", rs.time_unit},
                          {"voltage_unit_V", rs.voltage_unit}};
        } else {
            units_note = {{"note", "reduced units: time in hbar/(2 e Ic R), voltage in Ic R"}};
        }
        std::optional<washboard::josephson::ReducedAc> ac;
        if (o.i_ac != 0.0) ac = washboard::josephson::ReducedAc{o.i_ac, o.omega};
        const auto rs = washboard::josephson::build_rcsj_system_reduced(o.i, beta_c, ac);
        sys = rs.system;
        well_width = 2.0 * washboard::kPi;
    } else if (o.scenario == "brownian") {
        if (!o.common.seed) throw std::invalid_argument("brownian requires --seed");
        if (!o.temperature) throw std::invalid_argument("brownian requires --temperature");
        sys.inertia.reset();
        sys.damping = o.eta;
        sys.potential = washboard::WashboardPotential(o.A, o.B, o.k, o.phi0);
        sys.description = "brownian";
        cfg.temperature = *o.temperature;
        cfg.seed = o.common.seed;
        stochastic = true;
        if (o.B > 0.0) well_width = 2.0 * washboard::kPi / o.k;
    } else {
        throw std::invalid_argument("unknown scenario '" + o.scenario + "'");
    }

    const washboard::Trajectory tr = stochastic ? washboard::simulate_langevin(sys, cfg)
                                                : washboard::simulate_deterministic(sys, cfg);

    Table table;
    if (tr.velocities) {
        table.columns = {"t", "x", "v"};
        table.units = {"arb", "arb", "arb"};
        for (std::size_t j = 0; j < tr.times.size(); ++j) {
            table.rows.push_back({tr.times[j], tr.positions[j], (*tr.velocities)[j]});
        }
    } else {
        table.columns = {"t", "x"};
        table.units = {"arb", "arb"};
        for (std::size_t j = 0; j < tr.times.size(); ++j) {
            table.rows.push_back({tr.times[j], tr.positions[j]});
        }
    }
    table.meta["scenario"] = o.scenario;

    results["mean_velocity"] = washboard::mean_velocity(tr);
    if (well_width > 0.0) {
        results["state"] = washboard::classify_state(tr, well_width) ==
                                   washboard::MotionState::trapped
                               ? "trapped"
                               : "running";
    }
    if (!units_note.empty()) results["units"] = units_note;

    std::vector<std::string> outputs;
    outputs.push_back(cli_output::write_table(o.common.out, "trajectory", table,
                                              o.common.json_format()));

    json params;
    put_common(params, o.common);
    params["scenario"] = o.scenario;
    params["dt"] = o.dt;
    params["t-end"] = o.t_end;
    params["stride"] = o.stride;
    params["x0"] = o.x0;
    params["v0"] = o.v0;
    params["mass"] = o.mass;
    params["length"] = o.length;
    params["gravity"] = o.gravity;
    params["tau"] = o.tau;
    params["M"] = o.M;
    params["eta"] = o.eta;
    params["A"] = o.A;
    params["B"] = o.B;
    params["k"] = o.k;
    params["phi0"] = o.phi0;
    params["f-ac"] = o.f_ac;
    params["omega-ac"] = o.omega_ac;
    params["i"] = o.i;
    params["beta-c"] = o.beta_c;
    params["i-ac"] = o.i_ac;
    params["omega"] = o.omega;
    if (o.Ic) params["Ic"] = *o.Ic;
    if (o.R) params["R"] = *o.R;
    if (o.C) params["C"] = *o.C;
    if (o.temperature) params["temperature"] = *o.temperature;
    scope.finish(params, results, outputs);
}

// --------------------------------------------------------------------------
// ivcurve / shapiro

struct SweepOpts {
    CommonOpts common;
    double beta_c = 0.01;
    double i_start = 0.0, i_stop = 2.0, i_step = 0.05;
    double dt = 0.002, t_end = 2000.0;
    double i_ac = 0.0, omega = 0.0;  // shapiro only
};

std::vector<double> bias_list(const SweepOpts& o) {
    if (!(o.i_step > 0.0)) throw std::invalid_argument("i-step must be > 0");
    std::vector<double> biases;
    for (double i = o.i_start; i <= o.i_stop + 0.5 * o.i_step; i += o.i_step) {
        biases.push_back(i);
    }
    if (biases.empty()) throw std::invalid_argument("empty bias sweep");
    return biases;
}

void put_sweep_params(json& params, const SweepOpts& o) {
    put_common(params, o.common);
    params["beta-c"] = o.beta_c;
    params["i-start"] = o.i_start;
    params["i-stop"] = o.i_stop;
    params["i-step"] = o.i_step;
    params["dt"] = o.dt;
    params["t-end"] = o.t_end;
}

Table iv_table(const std::vector<washboard::josephson::IvPoint>& curve) {
    Table table;
    table.columns = {"i", "v"};
    table.units = {"I/Ic", "V/(Ic R)"};
    for (const auto& pt : curve) table.rows.push_back({pt.bias, pt.voltage});
    return table;
}

void cmd_ivcurve(const SweepOpts& o) {
    ManifestScope scope(o.common, "ivcurve");
    washboard::SimConfig cfg;
    cfg.dt = o.dt;
    cfg.t_end = o.t_end;
    const auto curve = washboard::josephson::iv_curve_reduced(o.beta_c, bias_list(o), cfg);

    std::vector<std::string> outputs;
    outputs.push_back(cli_output::write_table(o.common.out, "ivcurve", iv_table(curve),
                                              o.common.json_format()));
    json params;
    put_sweep_params(params, o);
    scope.finish(params, json::object(), outputs);
}

void cmd_shapiro(const SweepOpts& o) {
    ManifestScope scope(o.common, "shapiro");
    washboard::SimConfig cfg;
    cfg.dt = o.dt;
    cfg.t_end = o.t_end;
    const washboard::josephson::ReducedAc ac{o.i_ac, o.omega};
    const auto curve = washboard::josephson::shapiro_sweep(o.beta_c, ac, bias_list(o), cfg);
    const auto plateaus = washboard::josephson::detect_plateaus(curve, o.omega);

    json plist = json::array();
    for (const auto& p : plateaus) {
        plist.push_back({{"harmonic", p.harmonic},
                         {"i_lo", p.bias_lo},
                         {"i_hi", p.bias_hi},
                         {"width", p.width()},
                         {"v_mean", p.mean_voltage}});
    }

    std::vector<std::string> outputs;
    outputs.push_back(cli_output::write_table(o.common.out, "shapiro", iv_table(curve),
                                              o.common.json_format()));
    outputs.push_back(cli_output::write_json(o.common.out, "plateaus.json",
                                             json{{"omega", o.omega}, {"plateaus", plist}}));
    json params;
    put_sweep_params(params, o);
    params["i-ac"] = o.i_ac;
    params["omega"] = o.omega;
    scope.finish(params, json::object(), outputs);
}

// --------------------------------------------------------------------------
// eigen

struct EigenOpts {
    CommonOpts common;
    std::string well = "josephson";
    double i = 0.5;
    double ej_over_ec = 1000.0;
    double omega = 1.0;
    double half_width = 8.0;
    double width = 1.0;
    int levels = 6;
    int grid = 256;
};

void cmd_eigen(const EigenOpts& o) {
    ManifestScope scope(o.common, "eigen");

    washboard::quantum::WellProblem wp;
    double planck = 2.0 * washboard::kPi;
    std::string energy_unit = "natural";
    if (o.well == "josephson") {
        if (!(o.ej_over_ec > 0.0)) throw std::invalid_argument("ej-over-ec must be > 0");
        const double hbar_eff = std::sqrt(2.0 / o.ej_over_ec);
        const washboard::WashboardPotential p(o.i, 1.0, 1.0, 0.0);
        wp = washboard::quantum::WellProblem::from_washboard(p, 0, 1.0, hbar_eff, o.grid);
        planck = 2.0 * washboard::kPi * hbar_eff;
        energy_unit = "E_J";
    } else if (o.well == "harmonic") {
        wp = washboard::quantum::WellProblem::harmonic(o.omega, 1.0, 1.0, o.half_width, o.grid);
    } else if (o.well == "square-well") {
        wp = washboard::quantum::WellProblem::square_well(o.width, 1.0, 1.0, o.grid);
    } else {
        throw std::invalid_argument("unknown well '" + o.well + "'");
    }

    const auto spec = washboard::quantum::eigenlevels(wp, o.levels);
    const auto spacings = washboard::quantum::level_spacings(spec, planck);

    // Anharmonicity check over spacings whose upper level is still bound.
    std::size_t bound_spacings = 0;
    for (const auto& s : spacings) {
        if (s.n + 1 < spec.count_bound) ++bound_spacings;
    }
    bool decreasing = bound_spacings >= 2;
    for (std::size_t n = 0; n + 1 < bound_spacings; ++n) {
        if (!(spacings[n].delta_e > spacings[n + 1].delta_e)) decreasing = false;
    }

    json spacing_list = json::array();
    for (const auto& s : spacings) {
        spacing_list.push_back(
            {{"n", s.n}, {"delta_e", s.delta_e}, {"frequency", s.frequency}});
    }
    json doc = {{"levels", spec.levels},
                {"spacings", spacing_list},
                {"count_bound", spec.count_bound},
                {"more_than_bound", spec.more_than_bound},
                {"box_edge_energy", spec.box_edge_energy},
                {"decreasing_spacings", decreasing},
                {"units", {{"energy", energy_unit}, {"frequency", "energy/h"}}},
                {"convergence",
                 {{"grid_points", spec.convergence.grid_points},
                  {"max_rel_change", spec.convergence.max_rel_change},
                  {"refinements", spec.convergence.refinements}}}};

    std::vector<std::string> outputs;
    outputs.push_back(cli_output::write_json(o.common.out, "spectrum.json", doc));

    json params;
    put_common(params, o.common);
    params["well"] = o.well;
    params["i"] = o.i;
    params["ej-over-ec"] = o.ej_over_ec;
    params["omega"] = o.omega;
    params["half-width"] = o.half_width;
    params["width"] = o.width;
    params["levels"] = o.levels;
    params["grid"] = o.grid;
    scope.finish(params, json::object(), outputs);
}

// --------------------------------------------------------------------------
// optics

struct OpticsOpts {
    CommonOpts common;
    std::string scenario;
    double i0 = 1.0;
    double waist = 1e-3;
    double lambda = 632.8e-9;
    double theta = 1e-3;
    std::optional<double> z_max;
    std::optional<double> ring_R, focal, slit;
    double g_res = 0.0;
    double w_res = 1e-3;
    double z = 0.0;
    double r_max = 1e-3;
    double z_from = 0.0;
    std::optional<double> z_to;
    double u0 = -1e-27;
    std::optional<double> w_env;
    double x_from = -2e-6, x_to = 2e-6;
    int n = 500;
    // magic-wavelength synthetic curves
    double c1 = 1.0, lambda1 = 600e-9, offset1 = 0.0;
    double c2 = 0.5, lambda2 = 450e-9, offset2 = 0.0;
    double bracket_lo = 300e-9, bracket_hi = 430e-9;
};

double resolve_zmax(const OpticsOpts& o) {
    if (o.ring_R && o.focal && o.slit) {
        return washboard::optics::ring_slit_zmax(*o.ring_R, *o.focal, *o.slit);
    }
    if (o.z_max) return *o.z_max;
    throw std::invalid_argument("give --z-max or the ring-slit trio --ring-R --focal --slit");
}

void cmd_optics(const OpticsOpts& o) {
    ManifestScope scope(o.common, "optics");

    Table table;
    json results;
    std::vector<std::string> outputs;
    std::string stem = "profile";

    if (o.scenario == "gaussian") {
        const washboard::optics::GaussianBeam gb{o.i0, o.waist};
        table.columns = {"r", "I"};
        table.units = {"m", "W/m^2"};
        for (double r : linspace(0.0, o.r_max, o.n)) {
            table.rows.push_back({r, washboard::optics::gaussian_intensity(gb, r)});
        }
    } else if (o.scenario == "bessel-transverse" || o.scenario == "bessel-axial") {
        washboard::optics::BesselBeamSetup bs;
        bs.wavelength = o.lambda;
        bs.cone_half_angle = o.theta;
        bs.peak_intensity = o.i0;
        bs.z_max = resolve_zmax(o);
        if (o.g_res > 0.0) bs.residual = washboard::optics::GaussianResidual{o.g_res, o.w_res};
        table.meta["z_max"] = bs.z_max;
        if (o.scenario == "bessel-transverse") {
            table.columns = {"r", "I"};
            table.units = {"m", "W/m^2"};
            for (double r : linspace(-o.r_max, o.r_max, o.n)) {
                table.rows.push_back({r, washboard::optics::bessel_beam_intensity(bs, r, o.z)});
            }
        } else {
            table.columns = {"z", "I"};
            table.units = {"m", "W/m^2"};
            const double z_to = o.z_to ? *o.z_to : bs.z_max;
            for (double zz : linspace(o.z_from, z_to, o.n)) {
                table.rows.push_back({zz, washboard::optics::bessel_beam_intensity(bs, 0.0, zz)});
            }
        }
    } else if (o.scenario == "lattice") {
        washboard::optics::LatticeParams lp;
        lp.depth = o.u0;
        lp.wavenumber = 2.0 * washboard::kPi / o.lambda;
        lp.envelope_waist = o.w_env;
        table.columns = {"x", "U"};
        table.units = {"m", "J"};
        table.meta["period_m"] = washboard::optics::lattice_period(o.lambda);
        for (double x : linspace(o.x_from, o.x_to, o.n)) {
            table.rows.push_back({x, washboard::optics::lattice_potential(lp, x)});
        }
    } else if (o.scenario == "magic") {
        using washboard::optics::PolarizabilityCurve;
        const auto a1 = PolarizabilityCurve::from_poles({{o.c1, o.lambda1}}, o.offset1);
        const auto a2 = PolarizabilityCurve::from_poles({{o.c2, o.lambda2}}, o.offset2);
        const double lm =
            washboard::optics::magic_wavelength(a1, a2, o.bracket_lo, o.bracket_hi);
        results = {{"lambda_magic_m", lm},
                   {"residual", std::abs(a1(lm) - a2(lm))},
                   {"bracket_m", {o.bracket_lo, o.bracket_hi}}};
        outputs.push_back(cli_output::write_json(o.common.out, "magic.json", results));
    } else {
        throw std::invalid_argument("unknown optics scenario '" + o.scenario + "'");
    }

    if (o.scenario != "magic") {
        outputs.push_back(cli_output::write_table(o.common.out, stem, table,
                                                  o.common.json_format()));
    }

    json params;
    put_common(params, o.common);
    params["scenario"] = o.scenario;
    params["i0"] = o.i0;
    params["waist"] = o.waist;
    params["lambda"] = o.lambda;
    params["theta"] = o.theta;
    if (o.z_max) params["z-max"] = *o.z_max;
    if (o.ring_R) params["ring-R"] = *o.ring_R;
    if (o.focal) params["focal"] = *o.focal;
    if (o.slit) params["slit"] = *o.slit;
    params["g-res"] = o.g_res;
    params["w-res"] = o.w_res;
    params["z"] = o.z;
    params["r-max"] = o.r_max;
    params["z-from"] = o.z_from;
    if (o.z_to) params["z-to"] = *o.z_to;
    params["u0"] = o.u0;
    if (o.w_env) params["w-env"] = *o.w_env;
    params["x-from"] = o.x_from;
    params["x-to"] = o.x_to;
    params["n"] = o.n;
    params["c1"] = o.c1;
    params["lambda1"] = o.lambda1;
    params["offset1"] = o.offset1;
    params["c2"] = o.c2;
    params["lambda2"] = o.lambda2;
    params["offset2"] = o.offset2;
    params["bracket-lo"] = o.bracket_lo;
    params["bracket-hi"] = o.bracket_hi;
    scope.finish(params, results, outputs);
}

// --------------------------------------------------------------------------
// replay

std::vector<std::string> manifest_to_args(const json& manifest, const std::string& out_dir) {
    std::vector<std::string> args;
    args.push_back(manifest.at("subcommand").get<std::string>());
    for (const auto& [key, value] : manifest.at("parameters").items()) {
        if (value.is_boolean()) {
            if (value.get<bool>()) args.push_back("--" + key);
        } else if (value.is_string()) {
            args.push_back("--" + key + "=" + value.get<std::string>());
        } else {
            args.push_back("--" + key + "=" + value.dump());
        }
    }
    if (!manifest.at("seed").is_null()) {
        args.push_back("--seed=" + manifest.at("seed").dump());
    }
    args.push_back("--out=" + out_dir);
    return args;
}

int cmd_replay(const std::string& manifest_path, const std::string& out_dir) {
    std::ifstream in(manifest_path);
    if (!in) {
        std::cerr << "replay: cannot read manifest " << manifest_path << '\n';
        return 1;
    }
    json manifest;
    try {
        in >> manifest;
        return run_cli(manifest_to_args(manifest, out_dir));
    } catch (const json::exception& e) {
        std::cerr << "replay: bad manifest: " << e.what() << '\n';
        return 1;
    }
}

// --------------------------------------------------------------------------
// wiring

/// Loads --config JSON (if present among raw args) and returns its values
/// as --key=value tokens to be inserted ahead of the explicit flags, which
/// then take precedence through the take-last option policy.
std::vector<std::string> config_tokens(const std::vector<std::string>& args) {
    std::string path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
        }
    }
    if (path.empty()) return {};
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file " + path);
    json cfg;
    try {
        in >> cfg;
    } catch (const json::exception& e) {
        throw std::invalid_argument("bad config JSON: " + std::string(e.what()));
    }
    if (!cfg.is_object()) throw std::invalid_argument("config must be a JSON object");
    std::vector<std::string> tokens;
    for (const auto& [key, value] : cfg.items()) {
        if (value.is_boolean()) {
            if (value.get<bool>()) tokens.push_back("--" + key);
        } else if (value.is_string()) {
            tokens.push_back("--" + key + "=" + value.get<std::string>());
        } else {
            tokens.push_back("--" + key + "=" + value.dump());
        }
    }
    return tokens;
}

int run_cli(const std::vector<std::string>& args) {
    if (!args.empty() && args[0] == "replay") {
        CLI::App replay("re-run a recorded manifest");
        std::string manifest_path;
        std::string out_dir = ".";
        replay.add_option("manifest", manifest_path, "manifest.json of a previous run")
            ->required();
        replay.add_option("--out", out_dir, "output directory")->capture_default_str();
        std::vector<std::string> rest(args.begin() + 1, args.end());
        try {
            std::vector<const char*> argv{"replay"};
            for (const auto& a : rest) argv.push_back(a.c_str());
            replay.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::ParseError& e) {
            return replay.exit(e) == 0 ? 0 : 1;
        }
        return cmd_replay(manifest_path, out_dir);
    }

    CLI::App app("tilted-washboard scenarios: potentials, dynamics, junctions, spectra, optics");
    app.name("washboard");
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);

    PotentialOpts pot;
    auto* cmd_pot = app.add_subcommand("potential", "washboard landscape sweep and extrema");
    add_common(cmd_pot, pot.common);
    cmd_pot->add_option("--A", pot.A, "tilt")->capture_default_str();
    cmd_pot->add_option("--B", pot.B, "corrugation amplitude")->capture_default_str();
    cmd_pot->add_option("--k", pot.k, "wavenumber")->capture_default_str();
    cmd_pot->add_option("--phi0", pot.phi0, "phase offset")->capture_default_str();
    cmd_pot->add_option("--ratio", pot.ratio, "set A = ratio * B * k");
    cmd_pot->add_flag("--josephson", pot.josephson, "reduced junction landscape (units E_J)");
    cmd_pot->add_option("--i", pot.i, "bias ratio I/Ic for --josephson")->capture_default_str();
    cmd_pot->add_flag("--pendulum", pot.pendulum, "driven pendulum landscape");
    cmd_pot->add_option("--tau", pot.tau, "drive torque for --pendulum")->capture_default_str();
    cmd_pot->add_option("--mgl", pot.mgl, "gravity torque scale for --pendulum")
        ->capture_default_str();
    cmd_pot->add_option("--range", pot.range, "sweep range lo:hi")->capture_default_str();
    cmd_pot->add_option("--n", pot.n, "sweep points")->capture_default_str();

    SimulateOpts sim;
    auto* cmd_sim = app.add_subcommand("simulate", "integrate one trajectory");
    add_common(cmd_sim, sim.common);
    cmd_sim->add_option("--scenario", sim.scenario, "pendulum|particle|rcsj|brownian")
        ->required();
    cmd_sim->add_option("--dt", sim.dt, "time step")->capture_default_str();
    cmd_sim->add_option("--t-end", sim.t_end, "integration end time")->capture_default_str();
    cmd_sim->add_option("--stride", sim.stride, "sample every n-th step")->capture_default_str();
    cmd_sim->add_option("--x0", sim.x0, "initial position")->capture_default_str();
    cmd_sim->add_option("--v0", sim.v0, "initial velocity")->capture_default_str();
    cmd_sim->add_option("--mass", sim.mass, "pendulum bob mass")->capture_default_str();
    cmd_sim->add_option("--length", sim.length, "pendulum length")->capture_default_str();
    cmd_sim->add_option("--gravity", sim.gravity, "gravitational acceleration")
        ->capture_default_str();
    cmd_sim->add_option("--tau", sim.tau, "pendulum drive torque")->capture_default_str();
    cmd_sim->add_option("--M", sim.M, "particle mass")->capture_default_str();
    cmd_sim->add_option("--eta", sim.eta, "damping coefficient")->capture_default_str();
    cmd_sim->add_option("--A", sim.A, "tilt")->capture_default_str();
    cmd_sim->add_option("--B", sim.B, "corrugation amplitude")->capture_default_str();
    cmd_sim->add_option("--k", sim.k, "wavenumber")->capture_default_str();
    cmd_sim->add_option("--phi0", sim.phi0, "phase offset")->capture_default_str();
    cmd_sim->add_option("--f-ac", sim.f_ac, "ac drive amplitude")->capture_default_str();
    cmd_sim->add_option("--omega-ac", sim.omega_ac, "ac drive angular frequency")
        ->capture_default_str();
    cmd_sim->add_option("--i", sim.i, "rcsj bias ratio I/Ic")->capture_default_str();
    cmd_sim->add_option("--beta-c", sim.beta_c, "Stewart-McCumber parameter")
        ->capture_default_str();
    cmd_sim->add_option("--i-ac", sim.i_ac, "rcsj reduced ac amplitude")->capture_default_str();
    cmd_sim->add_option("--omega", sim.omega, "rcsj reduced ac angular frequency")
        ->capture_default_str();
    cmd_sim->add_option("--Ic", sim.Ic, "critical current [A] (with --R --C)");
    cmd_sim->add_option("--R", sim.R, "shunt resistance [ohm]");
    cmd_sim->add_option("--C", sim.C, "junction capacitance [F]");
    cmd_sim->add_option("--temperature", sim.temperature, "bath temperature [K] (brownian)");

    SweepOpts iv;
    auto* cmd_iv = app.add_subcommand("ivcurve", "reduced dc IV sweep");
    add_common(cmd_iv, iv.common);
    cmd_iv->add_option("--beta-c", iv.beta_c, "Stewart-McCumber parameter")
        ->capture_default_str();
    cmd_iv->add_option("--i-start", iv.i_start, "first bias ratio")->capture_default_str();
    cmd_iv->add_option("--i-stop", iv.i_stop, "last bias ratio")->capture_default_str();
    cmd_iv->add_option("--i-step", iv.i_step, "bias increment")->capture_default_str();
    cmd_iv->add_option("--dt", iv.dt, "reduced time step")->capture_default_str();
    cmd_iv->add_option("--t-end", iv.t_end, "reduced integration time per point")
        ->capture_default_str();

    SweepOpts sh;
    auto* cmd_sh = app.add_subcommand("shapiro", "IV sweep under ac drive, with plateaus");
    add_common(cmd_sh, sh.common);
    cmd_sh->add_option("--beta-c", sh.beta_c, "Stewart-McCumber parameter")
        ->capture_default_str();
    cmd_sh->add_option("--i-start", sh.i_start, "first bias ratio")->capture_default_str();
    cmd_sh->add_option("--i-stop", sh.i_stop, "last bias ratio")->capture_default_str();
    cmd_sh->add_option("--i-step", sh.i_step, "bias increment")->capture_default_str();
    cmd_sh->add_option("--dt", sh.dt, "reduced time step")->capture_default_str();
    cmd_sh->add_option("--t-end", sh.t_end, "reduced integration time per point")
        ->capture_default_str();
    cmd_sh->add_option("--i-ac", sh.i_ac, "reduced ac amplitude")->required();
    cmd_sh->add_option("--omega", sh.omega, "reduced ac angular frequency")->required();

    EigenOpts eig;
    auto* cmd_eig = app.add_subcommand("eigen", "bound levels of a single well");
    add_common(cmd_eig, eig.common);
    cmd_eig->add_option("--well", eig.well, "josephson|harmonic|square-well")
        ->capture_default_str();
    cmd_eig->add_option("--i", eig.i, "bias ratio I/Ic")->capture_default_str();
    cmd_eig->add_option("--ej-over-ec", eig.ej_over_ec, "E_J/E_C setting hbar_eff")
        ->capture_default_str();
    cmd_eig->add_option("--omega", eig.omega, "harmonic frequency (natural units)")
        ->capture_default_str();
    cmd_eig->add_option("--half-width", eig.half_width, "harmonic box half width")
        ->capture_default_str();
    cmd_eig->add_option("--width", eig.width, "square well width")->capture_default_str();
    cmd_eig->add_option("--levels", eig.levels, "number of levels")->capture_default_str();
    cmd_eig->add_option("--grid", eig.grid, "initial interior grid points")
        ->capture_default_str();

    OpticsOpts opt;
    auto* cmd_opt = app.add_subcommand("optics", "beam, lattice and magic-wavelength profiles");
    add_common(cmd_opt, opt.common);
    cmd_opt->add_option("--scenario", opt.scenario,
                        "gaussian|bessel-transverse|bessel-axial|lattice|magic")
        ->required();
    cmd_opt->add_option("--i0", opt.i0, "peak intensity [W/m^2]")->capture_default_str();
    cmd_opt->add_option("--waist", opt.waist, "gaussian waist [m]")->capture_default_str();
    cmd_opt->add_option("--lambda", opt.lambda, "wavelength [m]")->capture_default_str();
    cmd_opt->add_option("--theta", opt.theta, "cone half-angle [rad]")->capture_default_str();
    cmd_opt->add_option("--z-max", opt.z_max, "axial extent [m]");
    cmd_opt->add_option("--ring-R", opt.ring_R, "ring slit radius [m]");
    cmd_opt->add_option("--focal", opt.focal, "lens focal length [m]");
    cmd_opt->add_option("--slit", opt.slit, "ring slit width [m]");
    cmd_opt->add_option("--g-res", opt.g_res, "gaussian residual fraction")
        ->capture_default_str();
    cmd_opt->add_option("--w-res", opt.w_res, "gaussian residual waist [m]")
        ->capture_default_str();
    cmd_opt->add_option("--z", opt.z, "axial position for transverse profiles [m]")
        ->capture_default_str();
    cmd_opt->add_option("--r-max", opt.r_max, "radial sweep limit [m]")->capture_default_str();
    cmd_opt->add_option("--z-from", opt.z_from, "axial sweep start [m]")->capture_default_str();
    cmd_opt->add_option("--z-to", opt.z_to, "axial sweep end [m], default z_max");
    cmd_opt->add_option("--u0", opt.u0, "lattice depth [J]")->capture_default_str();
    cmd_opt->add_option("--w-env", opt.w_env, "lattice envelope waist [m]");
    cmd_opt->add_option("--x-from", opt.x_from, "lattice sweep start [m]")
        ->capture_default_str();
    cmd_opt->add_option("--x-to", opt.x_to, "lattice sweep end [m]")->capture_default_str();
    cmd_opt->add_option("--n", opt.n, "sweep points")->capture_default_str();
    cmd_opt->add_option("--c1", opt.c1, "pole strength, curve 1")->capture_default_str();
    cmd_opt->add_option("--lambda1", opt.lambda1, "pole wavelength, curve 1 [m]")
        ->capture_default_str();
    cmd_opt->add_option("--offset1", opt.offset1, "constant offset, curve 1")
        ->capture_default_str();
    cmd_opt->add_option("--c2", opt.c2, "pole strength, curve 2")->capture_default_str();
    cmd_opt->add_option("--lambda2", opt.lambda2, "pole wavelength, curve 2 [m]")
        ->capture_default_str();
    cmd_opt->add_option("--offset2", opt.offset2, "constant offset, curve 2")
        ->capture_default_str();
    cmd_opt->add_option("--bracket-lo", opt.bracket_lo, "crossing bracket start [m]")
        ->capture_default_str();
    cmd_opt->add_option("--bracket-hi", opt.bracket_hi, "crossing bracket end [m]")
        ->capture_default_str();

    // Fold config-file values in ahead of the explicit flags.
    std::vector<std::string> merged;
    merged.reserve(args.size() + 8);
    if (!args.empty()) merged.push_back(args[0]);
    try {
        for (auto& t : config_tokens(args)) merged.push_back(std::move(t));
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    for (std::size_t i = 1; i < args.size(); ++i) merged.push_back(args[i]);

    std::vector<const char*> argv{"washboard"};
    for (const auto& a : merged) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (cmd_pot->parsed()) cmd_potential(pot);
        if (cmd_sim->parsed()) cmd_simulate(sim);
        if (cmd_iv->parsed()) cmd_ivcurve(iv);
        if (cmd_sh->parsed()) cmd_shapiro(sh);
        if (cmd_eig->parsed()) cmd_eigen(eig);
        if (cmd_opt->parsed()) cmd_optics(opt);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run_cli(args);
}
