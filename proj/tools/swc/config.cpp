#include "config.hpp"

#include "swc/construct/presets.hpp"
#include "swc/error.hpp"

#include <CLI11.hpp>

#include <algorithm>

namespace swc::cli {

void add_options(CLI::App& app, RunConfig& cfg) {
    app.config_formatter(std::make_shared<CLI::ConfigINI>());
    app.fallthrough();
    app.set_config("--config", "", "INI file: global keys at the top, per-command keys in [section]");
    app.add_option("--out", cfg.out, "Output directory")->capture_default_str();
    app.add_option("--seed", cfg.seed, "Preset seed")->capture_default_str();
    app.add_option("--resolution", cfg.resolution, "Grid points per axis")->capture_default_str();
    app.add_option("--threads", cfg.threads, "Worker threads")->capture_default_str();
    app.add_option("--dim", cfg.dim, "Dimension n")->capture_default_str();
    app.add_option("--length", cfg.length, "Torus period on every axis")->capture_default_str();
    app.add_option("--preset", cfg.preset, "flat, random or flat_ball")->capture_default_str();
    app.add_option("--amplitude", cfg.amplitude, "Perturbation amplitude")->capture_default_str();
    app.add_option("--modes", cfg.modes, "Fourier modes per component")->capture_default_str();
    app.add_option("--kmax", cfg.kmax, "Largest wave number")->capture_default_str();
    app.add_option("--balls", cfg.balls, "Flat balls of the flat_ball preset (1, 2 or 4)")->capture_default_str();
    app.add_option("--flat-radius", cfg.flat_radius, "Flat radius of the flat_ball preset (0: automatic)");
    app.add_option("--transition", cfg.transition, "Cutoff width of the flat_ball preset (0: L/8)");
    app.add_option("-t", cfg.t, "Weight of |W| in F = R + t|W|")->capture_default_str();

    auto* curv = app.add_subcommand("curvature", "R, |W| and F of a preset metric");
    (void)curv;

    auto* verify = app.add_subcommand("verify", "Identity suite at two resolutions with convergence orders");
    verify->add_option("--mutate-block", cfg.mutate_block, "Negate one block of E(f) (0-11)");
    verify->add_option("--f-amplitude", cfg.f_amplitude, "Amplitude of the deformation f")->capture_default_str();
    verify->add_option("--psi-amplitude", cfg.psi_amplitude, "Amplitude of psi - 1")->capture_default_str();
    verify->add_option("-k", cfg.k, "k in E(k psi)")->capture_default_str();

    auto* construct = app.add_subcommand("construct", "Metric with F = -1 in the conformal class of a deformation");
    construct->add_option("--radii", cfg.radii, "Search radii (default L/16, L/12, L/8, L/6)");
    construct->add_option("--ks", cfg.ks, "Search values of k")->capture_default_str();
    construct->add_option("--max-balls", cfg.max_balls, "Largest ball count tried")->capture_default_str();
    construct->add_option("--delta", cfg.delta, "Bump floor delta")->capture_default_str();
    construct->add_option("--family", cfg.family, "Bump family: steep or gentle")->capture_default_str();
    construct->add_option("--tolerance", cfg.tolerance, "Bound on max |F + 1|")->capture_default_str();

    auto* recheck = app.add_subcommand("recheck", "Recompute every reported number from the written fields");
    recheck->add_option("dir", cfg.dir, "Output directory of an earlier run")->required();

    app.require_subcommand(1);
}

void validate(const RunConfig& cfg) {
    if (cfg.dim < 3 || cfg.dim > kMaxDim) throw ConfigError("dim must lie in [3, 6]");
    if (cfg.resolution < 8 || cfg.resolution % 2 != 0) throw ConfigError("resolution must be even and >= 8");
    if (!(cfg.length > 0.0)) throw ConfigError("length must be positive");
    if (cfg.preset != "flat" && cfg.preset != "random" && cfg.preset != "flat_ball")
        throw ConfigError("unknown preset '" + cfg.preset + "' (expected flat, random or flat_ball)");
    if (!(cfg.amplitude >= 0.0)) throw ConfigError("amplitude must be non-negative");
    if (cfg.modes < 1 || cfg.kmax < 1) throw ConfigError("modes and kmax must be at least 1");
    if (cfg.balls != 1 && cfg.balls != 2 && cfg.balls != 4) throw ConfigError("balls must be 1, 2 or 4");
    if (cfg.threads < 1) throw ConfigError("threads must be at least 1");
    if (cfg.mutate_block < -1 || cfg.mutate_block >= kEBlockCount)
        throw ConfigError("mutate-block must lie in [0, " + std::to_string(kEBlockCount - 1) + "]");
    if (!(cfg.k > 0.0)) throw ConfigError("k must be positive");
    if (cfg.ks.empty() || std::ranges::any_of(cfg.ks, [](double k) { return !(k > 0.0); }))
        throw ConfigError("ks must be a non-empty list of positive values");
    if (std::ranges::any_of(cfg.radii, [](double r) { return !(r > 0.0); }))
        throw ConfigError("radii must be positive");
    if (cfg.max_balls < 1) throw ConfigError("max-balls must be at least 1");
    if (!(cfg.tolerance > 0.0)) throw ConfigError("tolerance must be positive");
    parse_bump_family(cfg.family);
}

Chart build_chart(const RunConfig& cfg, int resolution) {
    return make_cubic_chart(cfg.dim, resolution, cfg.length);
}

SearchOptions search_options(const RunConfig& cfg, const Chart& chart) {
    SearchOptions o;
    o.radii = cfg.radii;
    if (o.radii.empty()) {
        const double L = chart.length(0);
        o.radii = {L / 16, L / 12, L / 8, L / 6};
    }
    o.ks = cfg.ks;
    o.max_balls = cfg.max_balls;
    o.delta = cfg.delta;
    o.family = parse_bump_family(cfg.family);
    return o;
}

MetricField build_metric(const RunConfig& cfg, int resolution) {
    const Chart chart = build_chart(cfg, resolution);
    const RandomPresetOptions r{cfg.amplitude, cfg.modes, cfg.kmax, cfg.seed};
    try {
        if (cfg.preset == "flat") return presets::flat(chart);
        if (cfg.preset == "random") return presets::random(chart, r);
        FlatBallOptions balls;
        balls.centers = presets::symmetric_centers(chart, cfg.balls);
        const auto radii = search_options(cfg, chart).radii;
        balls.radius = cfg.flat_radius > 0.0
                           ? cfg.flat_radius
                           : 1.1 * *std::ranges::max_element(radii) + 3.0 * chart.spacing(0);
        balls.transition = cfg.transition > 0.0 ? cfg.transition : chart.length(0) / 8;
        return presets::flat_ball(chart, r, balls);
    } catch (const InputError& e) {
        throw ConfigError(std::string("preset: ") + e.what());
    }
}

json to_json(const RunConfig& c) {
    return json{{"command", c.command},
                {"dim", c.dim},
                {"resolution", c.resolution},
                {"length", c.length},
                {"preset", c.preset},
                {"amplitude", c.amplitude},
                {"modes", c.modes},
                {"kmax", c.kmax},
                {"seed", c.seed},
                {"balls", c.balls},
                {"flat_radius", c.flat_radius},
                {"transition", c.transition},
                {"t", c.t},
                {"mutate_block", c.mutate_block},
                {"f_amplitude", c.f_amplitude},
                {"psi_amplitude", c.psi_amplitude},
                {"k", c.k},
                {"radii", c.radii},
                {"ks", c.ks},
                {"max_balls", c.max_balls},
                {"delta", c.delta},
                {"family", c.family},
                {"tolerance", c.tolerance}};
}

RunConfig from_json(const json& j) {
    RunConfig c;
    c.command = j.at("command").get<std::string>();
    c.dim = j.at("dim");
    c.resolution = j.at("resolution");
    c.length = j.at("length");
    c.preset = j.at("preset").get<std::string>();
    c.amplitude = j.at("amplitude");
    c.modes = j.at("modes");
    c.kmax = j.at("kmax");
    c.seed = j.at("seed");
    c.balls = j.at("balls");
    c.flat_radius = j.at("flat_radius");
    c.transition = j.at("transition");
    c.t = j.at("t");
    c.mutate_block = j.at("mutate_block");
    c.f_amplitude = j.at("f_amplitude");
    c.psi_amplitude = j.at("psi_amplitude");
    c.k = j.at("k");
    c.radii = j.at("radii").get<std::vector<double>>();
    c.ks = j.at("ks").get<std::vector<double>>();
    c.max_balls = j.at("max_balls");
    c.delta = j.at("delta");
    c.family = j.at("family").get<std::string>();
    c.tolerance = j.at("tolerance");
    return c;
}

}  // namespace swc::cli
