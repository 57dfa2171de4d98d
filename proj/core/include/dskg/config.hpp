#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "dskg/blowup.hpp"
#include "dskg/grid.hpp"
#include "dskg/params.hpp"
#include "dskg/state.hpp"

namespace dskg {

enum class ExperimentKind {
    evolve,
    blowup_ode,
    blowup_pde,
    lifespan,
    scatter,
    modes,
    energy_audit
};

enum class InitialKind { gaussian, mode, file, random, zero };

/// One initial-condition recipe (used separately for u and du/dt).
struct InitialData {
    InitialKind kind = InitialKind::zero;
    double amplitude = 1.0;
    double width = 1.0;    // gaussian
    double center = 0.0;   // gaussian, per-axis offset from the box midpoint
    int k = 1;             // mode: wave index per axis
    std::string path;      // file: snapshot to load (u slot)
};

struct Config {
    ExperimentKind experiment = ExperimentKind::evolve;
    std::string raw_text;  // echoed into the manifest

    PhysicalParams params;
    Grid grid;

    // [time]
    double T = 1.0;
    double dt = 0.0;        // 0: derived from the stability bound
    std::size_t snapshot_stride = 1;

    // [run]
    Equation equation = Equation::shifted_cubic;
    std::string method = "rk4";  // rk4 | picard
    std::size_t picard_steps = 64;
    double picard_tol = 1e-10;

    // [data]
    InitialData u0;
    InitialData u1;

    // [blowup]
    double w0 = 1.0;
    double w1 = 1.0;
    WOptions w_options;

    // [lifespan]
    double D_mu0 = 0.1;
    double mu0 = 0.0;
    double C = 1.0;
    double C0 = 1.0;

    // [scatter]
    double t_cut = 0.0;  // 0: use T
    double mu = 0.0;
    double tail_tol = 1e300;

    // [output]
    std::string out_dir = ".";
    bool write_snapshots = false;
    bool write_timeseries = true;
};

/// Parses the line-oriented `[section]` / `key = value` format. `#` starts a
/// comment. Unknown sections and keys are errors (no silent defaults for
/// misspellings); messages carry the 1-based line number. The returned config
/// is validated against the selected experiment's preconditions.
Config parse_config(const std::string& text);

/// parse_config applied to the contents of a file.
Config load_config(const std::string& path);

std::string to_string(ExperimentKind k);
std::string to_string(Equation e);

}  // namespace dskg
