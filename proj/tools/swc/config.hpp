#pragma once

#include "swc/construct/construct.hpp"
#include "swc/grid/metric.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace CLI {
class App;
}

namespace swc::cli {

using json = nlohmann::ordered_json;

/// Everything a run needs. Global keys come from the command line or the
/// top of the config file; per-command keys from its [section].
struct RunConfig {
    std::string command;

    // chart and preset
    int dim = 4;
    int resolution = 16;
    double length = 2.0 * M_PI;
    std::string preset = "random";
    double amplitude = 0.05;
    int modes = 2;
    int kmax = 1;
    std::uint64_t seed = 1;
    int balls = 1;
    double flat_radius = 0.0;  // 0: 1.1 * largest search radius + 3h
    double transition = 0.0;   // 0: L / 8
    double t = 1.0;
    std::filesystem::path out = "swc_out";
    unsigned threads = 1;

    // verify
    int mutate_block = -1;
    double f_amplitude = 0.3;
    double psi_amplitude = 0.2;
    double k = 0.5;

    // construct
    std::vector<double> radii;
    std::vector<double> ks{1, 2, 4, 8, 16};
    int max_balls = 4;
    double delta = 0.1;
    std::string family = "steep";
    double tolerance = 5e-3;

    // recheck
    std::filesystem::path dir;
};

/// Registers global options, the four subcommands and INI config support.
void add_options(CLI::App& app, RunConfig& cfg);

/// Throws ConfigError for out-of-range values.
void validate(const RunConfig& cfg);

Chart build_chart(const RunConfig& cfg, int resolution);
/// Throws ConfigError for unknown presets and non-SPD results.
MetricField build_metric(const RunConfig& cfg, int resolution);
SearchOptions search_options(const RunConfig& cfg, const Chart& chart);

json to_json(const RunConfig& cfg);
RunConfig from_json(const json& j);

}  // namespace swc::cli
