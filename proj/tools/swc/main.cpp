#include "commands.hpp"
#include "config.hpp"
#include "report.hpp"

#include "swc/error.hpp"
#include "swc/parallel.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace swc;

int main(int argc, char** argv) {
    CLI::App app{"Workbench for constant negative scalar-Weyl curvature on flat tori"};
    cli::RunConfig cfg;
    cli::add_options(app, cfg);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : cli::kConfigError;
    }
    for (const auto* sub : app.get_subcommands()) cfg.command = sub->get_name();

    try {
        cli::validate(cfg);
        set_thread_count(cfg.threads);
        if (cfg.command == "recheck") return cli::run_recheck(cfg);
        std::filesystem::create_directories(cfg.out);
        if (cfg.command == "curvature") return cli::run_curvature(cfg);
        if (cfg.command == "verify") return cli::run_verify(cfg);
        return cli::run_construct(cfg);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return cli::kConfigError;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return cli::kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
