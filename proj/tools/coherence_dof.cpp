#include "cohdof/cli.hpp"

#include <CLI11.hpp>

int main(int argc, char** argv) {
    CLI::App app{"Degrees-of-freedom regions for block-fading broadcast and multiple-access channels"};
    app.require_subcommand(1);

    cohdof::RunOptions opts;
    auto add_common = [&](CLI::App* sub, bool input_required) {
        auto* in = sub->add_option("--input,-i", opts.input, "JSON config document");
        if (input_required) in->required();
        sub->add_option("--out,-o", opts.out, "output directory")->capture_default_str();
        sub->add_flag("--svg,!--no-svg", opts.svg, "write SVG plots for two-entity configs");
    };

    auto* bc = app.add_subcommand("region-bc", "achievable and outer regions of a broadcast channel");
    add_common(bc, true);
    auto* mac = app.add_subcommand("region-mac", "achievable and outer regions of a multiple-access channel");
    add_common(mac, true);
    auto* ver = app.add_subcommand("verify", "check the slot-level oracle against the closed forms");
    add_common(ver, false);
    ver->add_flag("--grid", opts.grid, "run the built-in configuration grid instead of --input");
    std::uint64_t seed = 0;
    auto* simc = app.add_subcommand("simulate", "Monte-Carlo rates for the config's sim block");
    add_common(simc, true);
    auto* seed_opt = simc->add_option("--seed", seed, "override the sim block seed");
    auto* plot = app.add_subcommand("plot", "SVG region overlay and/or rate-vs-SNR curves");
    add_common(plot, true);
    auto* plot_seed = plot->add_option("--seed", seed, "override the sim block seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : cohdof::kInvalidConfig;
    }
    opts.command = app.get_subcommands().front()->get_name();
    if (*seed_opt || *plot_seed) opts.seed = seed;
    return cohdof::run(opts);
}
