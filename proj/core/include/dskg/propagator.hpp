#pragma once

#include <vector>

#include "dskg/grid.hpp"
#include "dskg/mode_ode.hpp"
#include "dskg/params.hpp"
#include "dskg/state.hpp"

namespace dskg {

/// Free flow (K_0(t) u0 + K_1(t) u1, D_t K_0(t) u0 + D_t K_1(t) u1) at
/// tgrid[it] of a prebuilt ModeTable.
StateSnapshot apply_free(const ModeTable& table, const Grid& grid, std::size_t it,
                         const SpectralField& u0_hat, const SpectralField& u1_hat);

/// Convenience wrapper: builds the two-point table {0, t} itself. Q >= 0.
StateSnapshot apply_free(double t, const Field& u0, const Field& u1,
                         const PhysicalParams& params, double Q);

/// -int_0^{tgrid[it]} K(t,s) h(s) ds, K(t,s) = c^2 { -K_0(t)K_1(s) + K_1(t)K_0(s) },
/// by per-mode Simpson quadrature over the uniform grid with rho12 from
/// kernel_coeffs. forcing_hat[j] samples h at tgrid[j]; entries beyond it are
/// ignored. The companion derivative integral (rho22) is returned through
/// `dut` when non-null.
Field duhamel_apply(const ModeTable& table, const Grid& grid, std::size_t it,
                    const std::vector<SpectralField>& forcing_hat, double c,
                    Field* dut = nullptr);

struct PicardResult {
    Trajectory trajectory;
    std::vector<double> contraction_ratios;  // d_k / d_{k-1} in the X^0-style metric
    std::vector<double> increments;          // sup_t L2 increment per iteration
    bool converged = false;
    int iterations = 0;
};

/// Picard iteration u^{k+1} = K_0 u0 + K_1 u1 - int K(t,s) h(u^k)(s) ds,
/// started from the free evolution, on `steps` uniform intervals of [0, T].
/// Stops when sup_t ||u^{k+1} - u^k||_{L2} <= tol. Non-contraction (ratio
/// history > 1 or max_iter exhausted) is reported, not thrown: it signals T
/// beyond the contraction window.
PicardResult picard_solve(const Field& u0, const Field& u1, double T,
                          std::size_t steps, const PhysicalParams& params,
                          const DerivedConstants& derived, double tol = 1e-10,
                          int max_iter = 50);

/// Largest stable RK4 step: 0.5 / (c sqrt(a_max)) with a_max the stiffest
/// mode symbol over [0, T] (evaluated at t = 0 for H >= 0, t = T for H < 0).
double stability_dt_bound(const Grid& grid, double T, const PhysicalParams& params,
                          double Q);

/// Method of lines: spectral spatial derivatives, classical RK4 in time on
/// (u, du/dt). Overflow is converted into a structured diverged_at record.
/// snapshot_stride thins the stored trajectory (diagnostics still see a
/// uniform grid of stride * dt).
Trajectory direct_solve(const Field& u0, const Field& u1, double T, double dt,
                        Equation equation, const PhysicalParams& params,
                        const DerivedConstants& derived,
                        std::size_t snapshot_stride = 1,
                        bool enforce_stability_bound = true);

}  // namespace dskg
