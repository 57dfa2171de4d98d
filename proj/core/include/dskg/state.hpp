#pragma once

#include <optional>
#include <vector>

#include "dskg/grid.hpp"
#include "dskg/params.hpp"

namespace dskg {

/// One time slice of the evolution: (u, du/dt) at time t.
struct StateSnapshot {
    double t = 0.0;
    Field u;
    Field ut;
};

enum class Equation {
    shifted_cubic,         // mild/classical u-equation with h(u)
    gauge_variant_blowup,  // -e^{-n(p-1)Ht/2} |u|^p source
    unshifted,             // phi-equation with friction and cubic potential
    shifted_phi            // phi-equation after the r0 shift (source J)
};

/// Time-ordered snapshots on a uniform grid, snapshots[0].t == 0.
struct Trajectory {
    std::vector<StateSnapshot> snapshots;
    PhysicalParams params;
    Equation equation = Equation::shifted_cubic;
    // present when direct time stepping overflowed: last finite time
    std::optional<double> diverged_at;

    double dt() const;
    const StateSnapshot& at(std::size_t i) const { return snapshots.at(i); }
    std::size_t steps() const { return snapshots.empty() ? 0 : snapshots.size() - 1; }
};

}  // namespace dskg
