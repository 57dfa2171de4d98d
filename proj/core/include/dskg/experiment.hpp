#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "dskg/config.hpp"
#include "dskg/grid.hpp"

namespace dskg {

struct CheckResult {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct RunManifest {
    ExperimentKind experiment = ExperimentKind::evolve;
    std::vector<CheckResult> checks;
    std::vector<std::string> outputs;  // artifact paths written
    std::vector<std::string> notes;    // regime warnings and similar
    // scalar results (blow-up time, lifespan T, ...), printed with 17 digits
    std::vector<std::pair<std::string, std::string>> results;
    double wall_seconds = 0.0;
    std::uint64_t seed = 0;

    bool all_passed() const;
    std::string to_json(const Config& cfg) const;
};

/// Realizes one [data] recipe on the grid. `seed` feeds the random kind only.
Field make_initial(const InitialData& data, const Grid& grid, std::uint64_t seed);

/// Runs the configured experiment, writes its artifacts under out_dir
/// (configured output directory when out_dir is empty), and returns the
/// manifest (also written as manifest.json). check_only skips the time-series
/// and snapshot artifacts but still runs every invariant check.
RunManifest run_experiment(const Config& cfg, const std::string& out_dir = "",
                           std::uint64_t seed = 0, bool check_only = false);

}  // namespace dskg
