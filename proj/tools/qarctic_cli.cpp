#include "qarctic/shell.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace qarctic;

int main(int argc, char** argv) {
    CLI::App app{"Exact, sampled and asymptotic computations for q-weighted non-intersecting lattice paths"};
    app.require_subcommand(1);
    std::string config_path, out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<long> samples;
    bool svg = false;
    const std::vector<std::string> names = {"exact", "sample", "arctic", "limits", "verify"};
    for (const auto& name : names) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--config", config_path, "JSON model configuration")->required();
        sub->add_option("--out", out_dir, "output directory");
        sub->add_option("--seed", seed, "random seed (sample)");
        sub->add_option("--samples", samples, "sweeps for sample, curve samples otherwise");
        sub->add_flag("--svg", svg, "also write an SVG rendering");
    }
    CLI11_PARSE(app, argc, argv);
    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        ModelConfig cfg = load_config(config_path);
        if (seed) cfg.task.seed = *seed;
        if (samples) {
            if (*samples < 2) throw ConfigError({"--samples: must be at least 2"});
            if (cmd == "sample") cfg.task.sweeps = *samples;
            else cfg.task.samples = static_cast<int>(*samples);
        }
        if (cfg.task.burn_in && *cfg.task.burn_in >= cfg.task.sweeps)
            throw ConfigError({"task.burn_in: must be smaller than the number of sweeps"});
        CommandOptions opt{out_dir, svg};
        Report rep;
        if (cmd == "exact") rep = cmd_exact(cfg, opt);
        else if (cmd == "sample") rep = cmd_sample(cfg, opt);
        else if (cmd == "arctic") rep = cmd_arctic(cfg, opt);
        else if (cmd == "limits") rep = cmd_limits(cfg, opt);
        else rep = cmd_verify(cfg, opt);
        for (const auto& [k, v] : rep.summary) std::cout << k << "," << v << "\n";
        for (const auto& f : rep.files) std::cerr << "wrote " << f << "\n";
        return 0;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const UnsupportedConfiguration& e) {
        std::cerr << "unsupported configuration: " << e.what() << "\n";
        return 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
}
