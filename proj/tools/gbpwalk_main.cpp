#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gbpwalk/errors.hpp"
#include "harness/verbs.hpp"

using namespace gbp::harness;

int main(int argc, char** argv) {
    CLI::App app{"gbpwalk: finite windows, exact laws and limit processes of dependent Bernoulli walks"};
    app.set_version_flag("--version", tool_version());
    app.require_subcommand(1);

    std::string config_path;
    std::vector<std::string> overrides;
    std::uint64_t seed = 0;
    unsigned threads = 1;
    std::string out_dir = ".";
    bool svg = false;

    const std::map<std::string, std::string> blurb{
        {"kernel-check", "check a kernel against the dependence assumption"},
        {"enumerate", "exact law of a window by enumeration"},
        {"sample", "Monte Carlo paths of the scaled or star walk"},
        {"converge", "finite-n quantities against their limits"},
        {"moments", "moments and mgf of the limit process"},
        {"mixed-moment", "joint moments of increments"},
        {"density", "densities of the limit process on a grid"},
        {"pde-check", "residuals of the governing equations"},
        {"subordinate", "Levy process run with the limit process as clock"},
        {"report", "summarize manifests from earlier runs"},
    };
    for (const auto& verb : verb_names()) {
        CLI::App* sub = app.add_subcommand(verb, blurb.at(verb));
        sub->add_option("-c,--config", config_path, "INI experiment file")->check(CLI::ExistingFile);
        sub->add_option("-s,--seed", seed, "seed, overriding [run] seed");
        sub->add_option("-D,--override", overrides, "section.key=value, applied after the file")->take_all();
        sub->add_option("-j,--threads", threads, "worker threads")->check(CLI::PositiveNumber);
        sub->add_option("-o,--out", out_dir, "output directory");
        sub->add_flag("--svg", svg, "also write SVG plots");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    const CLI::App* sub = app.get_subcommands().front();
    const std::string verb = sub->get_name();
    try {
        ExperimentConfig cfg = config_path.empty() ? ExperimentConfig() : ExperimentConfig::from_file(config_path);
        for (const auto& o : overrides) cfg.apply_override(o);
        RunOptions opt;
        opt.out_dir = out_dir;
        if (sub->count("--seed")) opt.seed = seed;
        opt.threads = threads;
        opt.svg = svg;
        const RunManifest m = run_verb(verb, cfg, opt);
        for (const auto& c : m.checks)
            std::cout << (c.pass ? "pass  " : "FAIL  ") << c.name << " = " << c.measured << ' '
                      << relation_symbol(c.relation) << ' ' << c.threshold << '\n';
        if (!m.error.empty()) std::cerr << verb << ": " << m.error << '\n';
        std::cout << verb << ": " << (m.all_pass() ? "all checks passed" : "checks failed") << " (" << out_dir
                  << "/manifest.txt)\n";
        return exit_status(m);
    } catch (const ConfigError& e) {
        std::cerr << verb << ": configuration error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << verb << ": " << e.what() << '\n';
        return 1;
    }
}
