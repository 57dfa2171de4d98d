#include <cstdint>
#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "dskg/config.hpp"
#include "dskg/experiment.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool check = false;
};

void add_common(CLI::App* sub, CommonArgs& args) {
    sub->add_option("--config", args.config_path, "experiment config file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", args.out_dir, "output directory (overrides config)");
    sub->add_option("--seed", args.seed, "seed for randomized initial data");
    sub->add_flag("--check", args.check, "run invariant suites only, no artifacts");
}

int run(dskg::ExperimentKind kind, const CommonArgs& args) {
    dskg::Config cfg = dskg::load_config(args.config_path);
    cfg.experiment = kind;
    const dskg::RunManifest man =
        dskg::run_experiment(cfg, args.out_dir, args.seed, args.check);
    for (const dskg::CheckResult& c : man.checks)
        std::printf("%-36s %s  %s\n", c.name.c_str(),
                    c.passed ? "pass" : "FAIL", c.detail.c_str());
    for (const auto& [k, v] : man.results)
        std::printf("%s = %s\n", k.c_str(), v.c_str());
    for (const std::string& n : man.notes) std::printf("note: %s\n", n.c_str());
    return man.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Klein-Gordon evolution in de Sitter spacetime: simulation and "
                 "verification experiments"};
    app.require_subcommand(1);

    struct Sub {
        const char* name;
        const char* help;
        dskg::ExperimentKind kind;
    };
    const Sub subs[] = {
        {"evolve", "time-step the field equation", dskg::ExperimentKind::evolve},
        {"blowup-ode", "scalar blow-up comparison dynamics",
         dskg::ExperimentKind::blowup_ode},
        {"blowup-pde", "field-level blow-up run", dskg::ExperimentKind::blowup_pde},
        {"lifespan", "contracting-regime lifespan certificate",
         dskg::ExperimentKind::lifespan},
        {"scatter", "asymptotic free data and deviation decay",
         dskg::ExperimentKind::scatter},
        {"modes", "fundamental-system tabulation and bounds",
         dskg::ExperimentKind::modes},
        {"energy-audit", "energy balance over a trajectory",
         dskg::ExperimentKind::energy_audit},
    };

    CommonArgs args[std::size(subs)];
    for (std::size_t i = 0; i < std::size(subs); ++i)
        add_common(app.add_subcommand(subs[i].name, subs[i].help), args[i]);

    CLI11_PARSE(app, argc, argv);

    try {
        for (std::size_t i = 0; i < std::size(subs); ++i)
            if (app.get_subcommand(subs[i].name)->parsed())
                return run(subs[i].kind, args[i]);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
