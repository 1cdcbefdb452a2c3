#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nushift/commands.hpp"

namespace {

struct Overrides {
    std::string config_path;
    std::string out_dir;
    std::optional<double> alpha, delta, tol;
    std::optional<int> p;
    bool plots = false;
};

void add_common_flags(CLI::App* sub, Overrides& ov) {
    sub->add_option("--config", ov.config_path, "JSON config file");
    sub->add_option("--out", ov.out_dir, "output directory");
    sub->add_option("--alpha", ov.alpha, "amplitude override");
    sub->add_option("--delta", ov.delta, "margin override");
    sub->add_option("--p", ov.p, "jet order override");
    sub->add_option("--tol", ov.tol, "tolerance override");
    sub->add_flag("--plot", ov.plots, "emit SVG charts next to the CSVs");
}

int load_config(const Overrides& ov, nushift::RunConfig& cfg) {
    try {
        if (!ov.config_path.empty())
            cfg = nushift::RunConfig::load(ov.config_path);
        if (!ov.out_dir.empty()) cfg.output_dir = ov.out_dir;
        if (ov.alpha) cfg.alpha = *ov.alpha;
        if (ov.delta) cfg.delta = *ov.delta;
        if (ov.p) cfg.p = *ov.p;
        if (ov.tol) cfg.tol = *ov.tol;
        if (ov.plots) cfg.plots = true;
        cfg.validate();
    } catch (const nushift::Error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return nushift::kExitConfig;
    }
    return nushift::kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Construct and certify the inverse of the non-uniform "
                 "difference operator v ∘ Φ − v"};
    app.require_subcommand(1);

    struct Cmd {
        const char* name;
        const char* help;
        int (*fn)(const nushift::RunConfig&, std::ostream&);
    };
    const Cmd cmds[] = {
        {"constants", "compute the convergence/inverse constant ladder",
         nushift::cmd_constants},
        {"solve", "check solvability and construct v with certificates",
         nushift::cmd_solve},
        {"kernel", "kernel elements and endpoint oscillation profiles",
         nushift::cmd_kernel},
        {"orbit", "iterate the shift and dump the orbit", nushift::cmd_orbit},
        {"jets", "propagate derivative jets and certify the C^p bound",
         nushift::cmd_jets},
        {"gram", "Gram matrix of the shifted sine basis (phi = sin demo)",
         nushift::cmd_gram},
        {"roundtrip", "generate w = Δ_Φ v0, solve, and diff against v0",
         nushift::cmd_roundtrip},
    };

    Overrides ov;
    int (*selected)(const nushift::RunConfig&, std::ostream&) = nullptr;
    for (const auto& c : cmds) {
        auto* sub = app.add_subcommand(c.name, c.help);
        add_common_flags(sub, ov);
        sub->callback([&selected, fn = c.fn]() { selected = fn; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return nushift::kExitConfig;
    }

    nushift::RunConfig cfg;
    if (const int rc = load_config(ov, cfg); rc != nushift::kExitOk) return rc;
    return selected(cfg, std::cout);
}
