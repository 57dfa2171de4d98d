#include "dskg/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dskg/mode_ode.hpp"
#include "dskg/nonlinearity.hpp"
#include "dskg/propagator.hpp"
#include "dskg/quadrature.hpp"
#include "dskg/spectral.hpp"

namespace dskg {

namespace {

Field trajectory_forcing(const StateSnapshot& snap, Equation equation,
                         const PhysicalParams& params,
                         const DerivedConstants& derived) {
    switch (equation) {
        case Equation::shifted_cubic:
            return params.lambda != 0.0 ? eval_h(snap.u, snap.t, params, derived)
                                        : Field::zeros(snap.u.grid);
        case Equation::gauge_variant_blowup:
            return eval_gauge_variant(snap.u, snap.t, params, -1);
        default:
            throw std::invalid_argument(
                "compute_asymptotic_state: no forcing model for this equation");
    }
}

std::size_t snapshot_index(const Trajectory& traj, double t) {
    const double dt = traj.dt();
    const double pos = t / dt;
    const auto idx = static_cast<std::size_t>(std::llround(pos));
    if (idx >= traj.snapshots.size() || std::abs(pos - double(idx)) > 1e-9)
        throw std::invalid_argument("time is not a snapshot of the trajectory");
    return idx;
}

}  // namespace

double AsymptoticState::tail_bound(double t) const {
    if (tail_t.empty()) return 0.0;
    if (t >= tail_t.back()) return neglected_tail;
    if (t <= tail_t.front()) return tail_value.front();
    const auto it = std::upper_bound(tail_t.begin(), tail_t.end(), t);
    const std::size_t j = std::size_t(it - tail_t.begin());
    const double f = (t - tail_t[j - 1]) / (tail_t[j] - tail_t[j - 1]);
    return (1.0 - f) * tail_value[j - 1] + f * tail_value[j];
}

AsymptoticState compute_asymptotic_state(const Trajectory& traj,
                                         const PhysicalParams& params,
                                         const DerivedConstants& derived,
                                         double t_cut, double tail_tol,
                                         const std::vector<Field>* forcing) {
    if (traj.snapshots.empty())
        throw std::invalid_argument("compute_asymptotic_state: empty trajectory");
    const Grid& grid = traj.snapshots.front().u.grid;

    AsymptoticState ast;
    if (!forcing && traj.equation == Equation::shifted_cubic && params.lambda == 0.0) {
        ast.u_plus0 = traj.snapshots.front().u;
        ast.u_plus1 = traj.snapshots.front().ut;
        ast.tail_t = {0.0};
        ast.tail_value = {0.0};
        return ast;
    }

    const std::size_t ic = snapshot_index(traj, t_cut);
    if (ic == 0)
        throw std::invalid_argument("compute_asymptotic_state: t_cut must be > 0");
    const double dt = traj.dt();

    std::vector<SpectralField> h_hat;
    std::vector<double> h_norm;
    h_hat.reserve(ic + 1);
    h_norm.reserve(ic + 1);
    for (std::size_t j = 0; j <= ic; ++j) {
        const Field h =
            forcing ? forcing->at(j)
                    : trajectory_forcing(traj.at(j), traj.equation, params, derived);
        h_norm.push_back(l2_norm(h));
        h_hat.push_back(transform(h));
    }

    std::vector<double> tgrid(ic + 1);
    for (std::size_t j = 0; j <= ic; ++j) tgrid[j] = j * dt;
    const ModeTable table(grid, tgrid, params, derived.Q);
    const std::vector<double> w = quad_weights(ic, dt);

    const SpectralField u0_hat = transform(traj.snapshots.front().u);
    const SpectralField u1_hat = transform(traj.snapshots.front().ut);
    SpectralField p0 = SpectralField::zeros(grid);
    SpectralField p1 = SpectralField::zeros(grid);
    const double c2 = params.c * params.c;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const ModeSolution& ms = table.shell(i);
        std::complex<double> s0 = 0.0, s1 = 0.0;
        for (std::size_t j = 0; j <= ic; ++j) {
            s0 += w[j] * ms.rho1[j] * h_hat[j].coeffs[i];
            s1 += w[j] * ms.rho0[j] * h_hat[j].coeffs[i];
        }
        p0.coeffs[i] = u0_hat.coeffs[i] + c2 * s0;
        p1.coeffs[i] = u1_hat.coeffs[i] - c2 * s1;
    }
    ast.u_plus0 = inverse(p0);
    ast.u_plus1 = inverse(p1);

    // Tail majorant: fitted exponential decay of ||h|| over the second half.
    const double floor = 1e-300;
    std::size_t fit_begin = ic / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t count = 0;
    for (std::size_t j = fit_begin; j <= ic; ++j) {
        if (h_norm[j] <= floor) continue;
        const double x = tgrid[j], y = std::log(h_norm[j]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    double rate = 0.0;
    if (count >= 2) {
        const double denom = count * sxx - sx * sx;
        if (denom > 0.0) rate = -(count * sxy - sx * sy) / denom;
    }
    ast.tail_rate = rate;
    if (h_norm[ic] <= floor)
        ast.neglected_tail = 0.0;
    else if (rate > 0.0)
        ast.neglected_tail = h_norm[ic] / (rate * params.c);
    else
        ast.neglected_tail = std::numeric_limits<double>::infinity();
    if (ast.neglected_tail > tail_tol)
        throw std::runtime_error(
            "compute_asymptotic_state: estimated tail past t_cut exceeds tolerance");

    // suffix trapezoid of ||h|| / c, anchored at the extrapolated remainder
    ast.tail_t = tgrid;
    ast.tail_value.assign(ic + 1, ast.neglected_tail);
    for (std::size_t j = ic; j-- > 0;)
        ast.tail_value[j] =
            ast.tail_value[j + 1] + 0.5 * dt * (h_norm[j] + h_norm[j + 1]) / params.c;
    return ast;
}

Deviation scattering_deviation(const Trajectory& traj, const AsymptoticState& ast,
                               double t, double mu, const PhysicalParams& params,
                               const DerivedConstants& derived) {
    if (mu < 0.0)
        throw std::invalid_argument("scattering_deviation: requires mu >= 0");
    const std::size_t it = snapshot_index(traj, t);
    const StateSnapshot& snap = traj.at(it);
    const StateSnapshot free =
        apply_free(t, ast.u_plus0, ast.u_plus1, params, derived.Q);

    const Grid& grid = snap.u.grid;
    Field du = Field::zeros(grid), dut = Field::zeros(grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        du.samples[i] = snap.u.samples[i] - free.u.samples[i];
        dut.samples[i] = snap.ut.samples[i] - free.ut.samples[i];
    }
    Deviation dev;
    dev.dev_u = sobolev_norm(transform(du), mu - 1.0, NormKind::inhomogeneous);
    dev.dev_ut = sobolev_norm(transform(dut), mu - 1.0, NormKind::inhomogeneous);
    return dev;
}

}  // namespace dskg
