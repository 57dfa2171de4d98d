#pragma once

#include <vector>

#include "dskg/grid.hpp"
#include "dskg/params.hpp"
#include "dskg/state.hpp"

namespace dskg {

/// Free data of the asymptotic comparison flow
///   u_plus0 = u0 + c^2 int_0^inf rho_1(s) h(s) ds      (per mode)
///   u_plus1 = u1 - c^2 int_0^inf rho_0(s) h(s) ds
/// together with the tabulated tail majorant t -> (1/c) int_t^inf ||h(s)||_{L2} ds.
struct AsymptoticState {
    Field u_plus0;
    Field u_plus1;
    std::vector<double> tail_t;      // snapshot times up to the cutoff
    std::vector<double> tail_value;  // tail bound evaluated at tail_t
    double tail_rate = 0.0;          // fitted exponential decay rate of ||h||
    double neglected_tail = 0.0;     // (1/c) int_{t_cut}^inf estimate

    /// Piecewise-linear interpolation of the tabulated tail (clamped below by
    /// the neglected-tail estimate past the cutoff).
    double tail_bound(double t) const;
};

/// Truncates the asymptotic-data integrals at t_cut (a snapshot time of traj),
/// using the same Simpson weights as the interaction integral so that the two
/// agree exactly once the forcing vanishes. The tail past t_cut is estimated by
/// the fitted exponential decay of ||h(s)||_{L2}; if that estimate exceeds
/// tail_tol the truncation is rejected. `forcing`, when non-null, supplies
/// h at every snapshot time and overrides the equation's own nonlinearity
/// (synthetic prescribed-forcing runs).
AsymptoticState compute_asymptotic_state(const Trajectory& traj,
                                         const PhysicalParams& params,
                                         const DerivedConstants& derived,
                                         double t_cut,
                                         double tail_tol = 1e300,
                                         const std::vector<Field>* forcing = nullptr);

struct Deviation {
    double dev_u = 0.0;   // ||u(t) - u_plus(t)||_{H^{mu-1}}
    double dev_ut = 0.0;  // ||d_t u(t) - d_t u_plus(t)||_{H^{mu-1}}
};

/// Deviation of a trajectory snapshot from the free comparison solution
/// u_plus(t) = K0(t) u_plus0 + K1(t) u_plus1, measured in the inhomogeneous
/// H^{mu-1} norm (negative order allowed). t must be a snapshot time of traj.
Deviation scattering_deviation(const Trajectory& traj, const AsymptoticState& ast,
                               double t, double mu, const PhysicalParams& params,
                               const DerivedConstants& derived);

}  // namespace dskg
