#include <CLI11.hpp>
#include <iostream>

#include "rkb/errors.hpp"
#include "rkb/io.hpp"

int main(int argc, char** argv) {
    CLI::App app{"refractive Kepler billiard"};
    std::string config;
    rkb::RunOptions opt;
    app.add_option("--config", config, "config file");
    app.add_option("--out", opt.out_dir, "output directory");
    app.add_option("--workers", opt.workers, "worker threads for sweeps")->check(CLI::PositiveNumber);
    app.add_flag("--verbose", opt.verbose, "progress notes");
    CLI11_PARSE(app, argc, argv);

    if (config.empty()) {
        std::cerr << rkb::usage_text();
        return 2;
    }
    try {
        const rkb::RunConfig cfg = rkb::load_config(config);
        return rkb::run(cfg, opt, std::cout);
    } catch (const rkb::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
