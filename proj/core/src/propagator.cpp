#include "dskg/propagator.hpp"

#include <cmath>
#include <stdexcept>

#include "dskg/nonlinearity.hpp"
#include "dskg/quadrature.hpp"
#include "dskg/spectral.hpp"

namespace dskg {

namespace {

std::vector<double> uniform_tgrid(double T, std::size_t steps) {
    if (!(T > 0.0) || steps == 0)
        throw std::invalid_argument("propagator: need T > 0 and steps >= 1");
    std::vector<double> tg(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i)
        tg[i] = T * static_cast<double>(i) / static_cast<double>(steps);
    tg[0] = 0.0;
    return tg;
}

}  // namespace

StateSnapshot apply_free(const ModeTable& table, const Grid& grid, std::size_t it,
                         const SpectralField& u0_hat, const SpectralField& u1_hat) {
    SpectralField u_hat = SpectralField::zeros(grid);
    SpectralField ut_hat = SpectralField::zeros(grid);
    for (std::size_t m = 0; m < table.modes(); ++m) {
        const ModeSolution& ms = table.shell(m);
        u_hat.coeffs[m] = ms.rho0[it] * u0_hat.coeffs[m] + ms.rho1[it] * u1_hat.coeffs[m];
        ut_hat.coeffs[m] = ms.drho0[it] * u0_hat.coeffs[m] + ms.drho1[it] * u1_hat.coeffs[m];
    }
    return StateSnapshot{table.tgrid()[it], inverse(u_hat), inverse(ut_hat)};
}

StateSnapshot apply_free(double t, const Field& u0, const Field& u1,
                         const PhysicalParams& params, double Q) {
    if (!(u0.grid == u1.grid)) throw std::invalid_argument("apply_free: grid mismatch");
    if (Q < 0.0) throw std::invalid_argument("apply_free: requires Q >= 0");
    if (t == 0.0) return StateSnapshot{0.0, u0, u1};
    ModeTable table(u0.grid, {0.0, t}, params, Q);
    return apply_free(table, u0.grid, 1, transform(u0), transform(u1));
}

Field duhamel_apply(const ModeTable& table, const Grid& grid, std::size_t it,
                    const std::vector<SpectralField>& forcing_hat, double c,
                    Field* dut) {
    if (it >= table.tgrid().size() || forcing_hat.size() <= it)
        throw std::invalid_argument("duhamel_apply: t beyond forcing support grid");
    SpectralField acc = SpectralField::zeros(grid);
    SpectralField accd = SpectralField::zeros(grid);
    if (it > 0) {
        const double dt = table.tgrid()[1] - table.tgrid()[0];
        const std::vector<double> w = quad_weights(it, dt);
        const double c2 = c * c;
        for (std::size_t m = 0; m < table.modes(); ++m) {
            const ModeSolution& ms = table.shell(m);
            std::complex<double> s{0.0, 0.0}, sd{0.0, 0.0};
            for (std::size_t j = 0; j <= it; ++j) {
                const auto [rho12, rho22] = kernel_coeffs(ms, it, j);
                s += w[j] * rho12 * forcing_hat[j].coeffs[m];
                sd += w[j] * rho22 * forcing_hat[j].coeffs[m];
            }
            acc.coeffs[m] = -c2 * s;
            accd.coeffs[m] = -c2 * sd;
        }
    }
    if (dut) *dut = inverse(accd);
    return inverse(acc);
}

PicardResult picard_solve(const Field& u0, const Field& u1, double T,
                          std::size_t steps, const PhysicalParams& params,
                          const DerivedConstants& derived, double tol, int max_iter) {
    if (!(u0.grid == u1.grid)) throw std::invalid_argument("picard_solve: grid mismatch");
    if (!(derived.Q > 0.0)) throw std::invalid_argument("picard_solve: requires Q > 0");
    const Grid& grid = u0.grid;
    const std::vector<double> tgrid = uniform_tgrid(T, steps);
    const std::size_t nt = tgrid.size();
    ModeTable table(grid, tgrid, params, derived.Q);
    const SpectralField u0_hat = transform(u0);
    const SpectralField u1_hat = transform(u1);

    std::vector<StateSnapshot> free_flow(nt);
    for (std::size_t i = 0; i < nt; ++i)
        free_flow[i] = apply_free(table, grid, i, u0_hat, u1_hat);

    auto iterate = [&](const std::vector<StateSnapshot>& cur) {
        std::vector<SpectralField> h_hat(nt, SpectralField::zeros(grid));
        for (std::size_t j = 0; j < nt; ++j) {
            const Field h = params.lambda != 0.0
                                ? eval_h(cur[j].u, tgrid[j], params, derived)
                                : Field::zeros(grid);
            h_hat[j] = transform(h);
        }
        std::vector<StateSnapshot> next(nt);
        for (std::size_t i = 0; i < nt; ++i) {
            Field dut;
            Field du = duhamel_apply(table, grid, i, h_hat, params.c, &dut);
            next[i].t = tgrid[i];
            next[i].u = free_flow[i].u;
            next[i].ut = free_flow[i].ut;
            for (std::size_t k = 0; k < du.samples.size(); ++k) {
                next[i].u.samples[k] += du.samples[k];
                next[i].ut.samples[k] += dut.samples[k];
            }
        }
        return next;
    };

    // Dominant computable part of the X^0 metric between iterates.
    auto x0_distance = [&](const std::vector<StateSnapshot>& a,
                           const std::vector<StateSnapshot>& b) {
        const double sqrtQ = std::sqrt(derived.Q);
        double d = 0.0;
        for (std::size_t i = 0; i < nt; ++i) {
            Field du = a[i].u, dut = a[i].ut;
            for (std::size_t k = 0; k < du.samples.size(); ++k) {
                du.samples[k] -= b[i].u.samples[k];
                dut.samples[k] -= b[i].ut.samples[k];
            }
            const SpectralField sdu = transform(du);
            const double eHt = std::exp(-params.H * tgrid[i]);
            d = std::max(d, l2_norm(dut) / params.c + eHt * grad_sobolev_norm(sdu, 0.0) +
                                sqrtQ * l2_norm(du));
        }
        return d;
    };

    auto sup_l2 = [&](const std::vector<StateSnapshot>& a,
                      const std::vector<StateSnapshot>& b) {
        double d = 0.0;
        for (std::size_t i = 0; i < nt; ++i) {
            Field du = a[i].u;
            for (std::size_t k = 0; k < du.samples.size(); ++k)
                du.samples[k] -= b[i].u.samples[k];
            d = std::max(d, l2_norm(du));
        }
        return d;
    };

    PicardResult result;
    std::vector<StateSnapshot> cur = free_flow;
    double prev_metric = -1.0;
    for (int k = 0; k < max_iter; ++k) {
        // overflow of a previous iterate is non-contraction, not an error
        bool finite = true;
        for (const StateSnapshot& s : cur)
            finite = finite && s.u.all_finite() && s.ut.all_finite();
        if (!finite) {
            result.contraction_ratios.push_back(
                std::numeric_limits<double>::infinity());
            break;
        }
        std::vector<StateSnapshot> next = iterate(cur);
        const double inc = sup_l2(next, cur);
        const double metric = x0_distance(next, cur);
        result.increments.push_back(inc);
        if (prev_metric > 0.0) result.contraction_ratios.push_back(metric / prev_metric);
        prev_metric = metric;
        cur = std::move(next);
        result.iterations = k + 1;
        if (inc <= tol) {
            result.converged = true;
            break;
        }
    }

    result.trajectory.snapshots = std::move(cur);
    result.trajectory.params = params;
    result.trajectory.equation = Equation::shifted_cubic;
    return result;
}

double stability_dt_bound(const Grid& grid, double T, const PhysicalParams& params,
                          double Q) {
    const double dxi = 2.0 * M_PI / grid.L;
    const double kmax = dxi * (grid.N / 2);
    const double ksq_max = static_cast<double>(grid.n) * kmax * kmax;
    const double t_stiff = params.H >= 0.0 ? 0.0 : T;
    const double a_max =
        std::exp(-2.0 * params.H * t_stiff) * ksq_max + std::max(Q, 0.0) + std::max(-Q, 0.0);
    return 0.5 / (params.c * std::sqrt(a_max));
}

namespace {

// Second time derivative of the evolved field for each equation form.
Field acceleration(const Field& u, const Field& ut, double t, Equation eq,
                   const PhysicalParams& params, const DerivedConstants& derived) {
    const double c2 = params.c * params.c;
    const double eH = std::exp(-2.0 * params.H * t);
    SpectralField su = transform(u);
    for (std::size_t i = 0; i < su.coeffs.size(); ++i)
        su.coeffs[i] *= -wavenumber_sq(u.grid, i);
    Field lap = inverse(su);

    Field out = Field::zeros(u.grid);
    switch (eq) {
        case Equation::shifted_cubic: {
            Field h = params.lambda != 0.0 ? eval_h(u, t, params, derived)
                                           : Field::zeros(u.grid);
            for (std::size_t i = 0; i < out.samples.size(); ++i)
                out.samples[i] =
                    c2 * (eH * lap.samples[i] - derived.Q * u.samples[i] - h.samples[i]);
            break;
        }
        case Equation::gauge_variant_blowup: {
            Field g = eval_gauge_variant(u, t, params, -1);
            for (std::size_t i = 0; i < out.samples.size(); ++i)
                out.samples[i] =
                    c2 * (eH * lap.samples[i] - derived.Q * u.samples[i] - g.samples[i]);
            break;
        }
        case Equation::unshifted: {
            const double mc = params.mass * params.c / params.hbar;
            const double nH = params.n * params.H;
            for (std::size_t i = 0; i < out.samples.size(); ++i)
                out.samples[i] = c2 * (eH * lap.samples[i] + mc * mc * u.samples[i]);
            if (params.lambda != 0.0) {
                Field cub = dealias(u);
                for (double& v : cub.samples) v = v * v * v;
                cub = dealias(cub);
                for (std::size_t i = 0; i < out.samples.size(); ++i)
                    out.samples[i] -= c2 * params.lambda * cub.samples[i];
            }
            for (std::size_t i = 0; i < out.samples.size(); ++i)
                out.samples[i] -= nH * ut.samples[i];
            break;
        }
        case Equation::shifted_phi: {
            Field j = eval_J(u, params, derived);
            const double nH = params.n * params.H;
            for (std::size_t i = 0; i < out.samples.size(); ++i)
                out.samples[i] =
                    c2 * (eH * lap.samples[i] - j.samples[i]) - nH * ut.samples[i];
            break;
        }
    }
    return out;
}

bool state_finite(const Field& u, const Field& ut) {
    double acc = 0.0;
    for (double v : u.samples) acc += v;
    for (double v : ut.samples) acc += v;
    return std::isfinite(acc);
}

}  // namespace

Trajectory direct_solve(const Field& u0, const Field& u1, double T, double dt,
                        Equation equation, const PhysicalParams& params,
                        const DerivedConstants& derived, std::size_t snapshot_stride,
                        bool enforce_stability_bound) {
    if (!(u0.grid == u1.grid)) throw std::invalid_argument("direct_solve: grid mismatch");
    if (!(dt > 0.0) || !(T > 0.0))
        throw std::invalid_argument("direct_solve: need dt > 0 and T > 0");
    if (enforce_stability_bound) {
        const double bound = stability_dt_bound(u0.grid, T, params, derived.Q);
        if (dt > bound)
            throw std::invalid_argument("direct_solve: dt exceeds stability bound " +
                                        std::to_string(bound));
    }
    const std::size_t steps = static_cast<std::size_t>(std::llround(T / dt));
    if (std::abs(steps * dt - T) > 1e-9 * std::max(1.0, T))
        throw std::invalid_argument("direct_solve: T must be an integer number of steps");
    if (snapshot_stride == 0 || steps % snapshot_stride != 0)
        throw std::invalid_argument("direct_solve: snapshot_stride must divide the step count");

    Trajectory traj;
    traj.params = params;
    traj.equation = equation;
    traj.snapshots.reserve(steps / snapshot_stride + 1);
    traj.snapshots.push_back(StateSnapshot{0.0, u0, u1});

    Field u = u0, ut = u1;
    auto axpy = [](Field& y, double a, const Field& x) {
        for (std::size_t i = 0; i < y.samples.size(); ++i) y.samples[i] += a * x.samples[i];
    };

    for (std::size_t s = 0; s < steps; ++s) {
        const double t = s * dt;
        // classical RK4 on (u, ut)
        const Field k1u = ut;
        const Field k1v = acceleration(u, ut, t, equation, params, derived);
        Field u2 = u, v2 = ut;
        axpy(u2, 0.5 * dt, k1u);
        axpy(v2, 0.5 * dt, k1v);
        const Field k2u = v2;
        const Field k2v = acceleration(u2, v2, t + 0.5 * dt, equation, params, derived);
        Field u3 = u, v3 = ut;
        axpy(u3, 0.5 * dt, k2u);
        axpy(v3, 0.5 * dt, k2v);
        const Field k3u = v3;
        const Field k3v = acceleration(u3, v3, t + 0.5 * dt, equation, params, derived);
        Field u4 = u, v4 = ut;
        axpy(u4, dt, k3u);
        axpy(v4, dt, k3v);
        const Field k4u = v4;
        const Field k4v = acceleration(u4, v4, t + dt, equation, params, derived);

        axpy(u, dt / 6.0, k1u);
        axpy(u, dt / 3.0, k2u);
        axpy(u, dt / 3.0, k3u);
        axpy(u, dt / 6.0, k4u);
        axpy(ut, dt / 6.0, k1v);
        axpy(ut, dt / 3.0, k2v);
        axpy(ut, dt / 3.0, k3v);
        axpy(ut, dt / 6.0, k4v);

        if (!state_finite(u, ut)) {
            traj.diverged_at = t;  // last finite time
            break;
        }
        if ((s + 1) % snapshot_stride == 0)
            traj.snapshots.push_back(StateSnapshot{(s + 1) * dt, u, ut});
    }
    return traj;
}

}  // namespace dskg
